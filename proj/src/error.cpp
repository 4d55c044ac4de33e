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

#include "gplace/error.hpp"

namespace gplace {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kStability: return "stability error";
    case ErrorCode::kNormalization: return "normalization error";
    case ErrorCode::kNotControllable: return "not controllable";
    case ErrorCode::kSystemUncontrollable: return "system uncontrollable";
    case ErrorCode::kInfeasibleProblem: return "infeasible problem";
    case ErrorCode::kInfeasibleForEpsilon: return "infeasible for epsilon";
    case ErrorCode::kNumericalConditioning: return "numerical conditioning";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kTooLarge: return "instance too large";
  }
  return "unknown error";
}

}  // namespace gplace
