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

#ifndef GPLACE_ORACLE_HPP_
#define GPLACE_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "gplace/objective.hpp"
#include "gplace/system.hpp"

namespace gplace {

inline constexpr std::size_t kOracleMaxNodes = 20;

// Exhaustive ground truth for small instances. Subsets are enumerated by
// increasing cardinality (lexicographically within one); the first
// cardinality holding a feasible set is scanned completely so `witnesses`
// lists every optimal set.
struct OracleResult {
  std::size_t min_cardinality = 0;
  std::vector<ActuatorSet> witnesses;
  std::size_t evaluated = 0;
};

// Smallest sets with lambda_min(Gamma) > ctrl_tol and v^T Gamma^{-1} v <= E.
OracleResult BruteForceExactEnergy(const GramianBasis& basis,
                                   const TransferSpec& transfer,
                                   double energy_bound,
                                   std::optional<double> ctrl_tol =
                                       std::nullopt);

// Smallest sets with phi(Delta) <= E at the given epsilon; no explicit
// controllability test.
OracleResult BruteForceRegularized(const GramianBasis& basis,
                                   const TransferSpec& transfer,
                                   double energy_bound, double epsilon);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<ActuatorSet> SubsetsOfSize(std::size_t n, std::size_t k);

}  // namespace gplace

#endif  // GPLACE_ORACLE_HPP_
