// Copyright 2026 The gramian-place Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gplace/system_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gplace/error.hpp"

namespace gplace {

using nlohmann::json;

namespace {

[[noreturn]] void Reject(const std::string& why) {
  throw Error(ErrorCode::kInvalidInput, "system document: " + why);
}

double ReadReal(const json& value, const std::string& where) {
  if (!value.is_number()) Reject(where + " is not a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) Reject(where + " is not finite");
  return x;
}

}  // namespace

LinearSystem ParseSystemJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Reject(e.what());
  }
  if (!doc.is_object()) Reject("top level must be an object");
  if (!doc.contains("A") || !doc["A"].is_array()) Reject("missing array \"A\"");

  const json& rows = doc["A"];
  const std::size_t n = rows.size();
  if (n == 0) Reject("\"A\" is empty");
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0 ||
        static_cast<std::size_t>(doc["n"].get<long long>()) != n) {
      Reject("\"n\" does not match the number of rows of \"A\"");
    }
  }

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      Reject("row " + std::to_string(i) + " is ragged");
    }
    for (std::size_t j = 0; j < n; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ReadReal(row[j], "A[" + std::to_string(i) + "][" +
                               std::to_string(j) + "]");
    }
  }

  Horizon horizon = FiniteHorizon{0.0, 1.0};
  if (doc.contains("horizon")) {
    const json& h = doc["horizon"];
    if (h.is_string()) {
      if (h.get<std::string>() != "infinite") {
        Reject("horizon string must be \"infinite\"");
      }
      horizon = InfiniteHorizon{};
    } else if (h.is_object()) {
      if (!h.contains("t0") || !h.contains("t1")) {
        Reject("finite horizon needs \"t0\" and \"t1\"");
      }
      horizon = FiniteHorizon{ReadReal(h["t0"], "horizon.t0"),
                              ReadReal(h["t1"], "horizon.t1")};
    } else {
      Reject("horizon must be an object or \"infinite\"");
    }
  }
  return LinearSystem(std::move(a), horizon);
}

LinearSystem LoadSystemJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidInput,
                "cannot open system file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSystemJson(buffer.str());
}

std::string SystemToJson(const LinearSystem& system) {
  json doc;
  const Matrix& a = system.a();
  doc["n"] = system.dim();
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  doc["A"] = std::move(rows);
  if (const auto* finite = std::get_if<FiniteHorizon>(&system.horizon())) {
    doc["horizon"] = {{"t0", finite->t0}, {"t1", finite->t1}};
  } else {
    doc["horizon"] = "infinite";
  }
  return doc.dump(2);
}

}  // namespace gplace
