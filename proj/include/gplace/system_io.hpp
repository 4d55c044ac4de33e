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

#ifndef GPLACE_SYSTEM_IO_HPP_
#define GPLACE_SYSTEM_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "gplace/system.hpp"

namespace gplace {

// System document:
//   {"n": 5, "A": [[...], ...], "horizon": {"t0": 0, "t1": 1}}
//   {"n": 5, "A": [[...], ...], "horizon": "infinite"}
// Ragged rows, non-finite entries or an n that disagrees with A are
// rejected with kInvalidInput.
LinearSystem ParseSystemJson(std::string_view text);
LinearSystem LoadSystemJson(const std::filesystem::path& path);

// Serializes with round-trip exact floating point.
std::string SystemToJson(const LinearSystem& system);

}  // namespace gplace

#endif  // GPLACE_SYSTEM_IO_HPP_
