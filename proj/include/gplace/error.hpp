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

#ifndef GPLACE_ERROR_HPP_
#define GPLACE_ERROR_HPP_

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gplace {

enum class ErrorCode {
  kDimension,
  kNonFinite,
  kStability,
  kNormalization,
  kNotControllable,
  kSystemUncontrollable,
  kInfeasibleProblem,
  kInfeasibleForEpsilon,
  kNumericalConditioning,
  kPrecondition,
  kInvalidInput,
  kTooLarge,
};

std::string_view ToString(ErrorCode code);

// Short %g rendering of a real for error messages.
inline std::string FormatValue(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Single exception type for the library. The code drives CLI exit status and
// lets callers (e.g. the bisection loop) react to specific failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double value = 0.0)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }

  // Auxiliary quantity attached to the error, e.g. lambda_min for
  // kNotControllable or phi(V) for kInfeasibleForEpsilon.
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace gplace

#endif  // GPLACE_ERROR_HPP_
