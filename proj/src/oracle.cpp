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

#include "gplace/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "gplace/error.hpp"
#include "gplace/parallel.hpp"

namespace gplace {
namespace {

void RequireSmall(std::size_t n) {
  if (n > kOracleMaxNodes) {
    throw Error(ErrorCode::kTooLarge,
                "brute force is capped at " +
                    std::to_string(kOracleMaxNodes) + " nodes, got " +
                    std::to_string(n));
  }
}

OracleResult Enumerate(std::size_t n,
                       const std::function<bool(const ActuatorSet&)>& ok) {
  OracleResult result;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::vector<ActuatorSet> subsets = SubsetsOfSize(n, k);
    std::vector<char> feasible(subsets.size(), 0);
    ParallelFor(subsets.size(),
                [&](std::size_t i) { feasible[i] = ok(subsets[i]) ? 1 : 0; });
    result.evaluated += subsets.size();
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      if (feasible[i]) result.witnesses.push_back(subsets[i]);
    }
    if (!result.witnesses.empty()) {
      result.min_cardinality = k;
      return result;
    }
  }
  throw Error(ErrorCode::kInfeasibleProblem, "no subset meets the constraints");
}

}  // namespace

std::vector<ActuatorSet> SubsetsOfSize(std::size_t n, std::size_t k) {
  std::vector<ActuatorSet> out;
  if (k > n) return out;
  // Leading `true`s walked by prev_permutation give lexicographic order.
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    ActuatorSet set(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) set.insert(i);
    }
    out.push_back(std::move(set));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

OracleResult BruteForceExactEnergy(const GramianBasis& basis,
                                   const TransferSpec& transfer,
                                   double energy_bound,
                                   std::optional<double> ctrl_tol) {
  const std::size_t n = basis.dim();
  RequireSmall(n);
  const double tol = ctrl_tol.value_or(basis.DefaultControlTolerance());
  const double bound = FeasibilityBound(basis, transfer, tol);
  if (energy_bound < bound) {
    throw Error(ErrorCode::kInfeasibleProblem,
                "energy bound is below v^T Gamma_V^{-1} v", bound);
  }
  return Enumerate(n, [&](const ActuatorSet& set) {
    const Matrix gramian = basis.GramianOf(set);
    if (!CheckControllable(gramian, tol).controllable) return false;
    return MinEnergy(gramian, transfer.direction(), tol) <= energy_bound;
  });
}

OracleResult BruteForceRegularized(const GramianBasis& basis,
                                   const TransferSpec& transfer,
                                   double energy_bound, double epsilon) {
  const std::size_t n = basis.dim();
  RequireSmall(n);
  if (!(epsilon > 0.0) || epsilon > 1.0 / energy_bound) {
    throw Error(ErrorCode::kPrecondition,
                "epsilon must satisfy 0 < epsilon <= 1/E", epsilon);
  }
  const EpsilonObjective phi(basis, transfer, epsilon);
  const double phi_full = phi.OfGramian(basis.Full());
  if (phi_full > energy_bound) {
    throw Error(ErrorCode::kInfeasibleForEpsilon,
                "phi(V) exceeds E", phi_full);
  }
  return Enumerate(n, [&](const ActuatorSet& set) {
    return phi(set) <= energy_bound;
  });
}

}  // namespace gplace
