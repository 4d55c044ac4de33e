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

#ifndef GPLACE_SYSTEM_HPP_
#define GPLACE_SYSTEM_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include "gplace/numerics.hpp"

namespace gplace {

// Transfer window [t0, t1]; Gramians integrate over a duration of t1 - t0.
struct FiniteHorizon {
  double t0 = 0.0;
  double t1 = 1.0;

  double duration() const { return t1 - t0; }
  bool operator==(const FiniteHorizon&) const = default;
};

// Transfer with no time constraint; requires a Hurwitz state matrix.
struct InfiniteHorizon {
  bool operator==(const InfiniteHorizon&) const = default;
};

using Horizon = std::variant<FiniteHorizon, InfiniteHorizon>;

inline bool IsInfinite(const Horizon& h) {
  return std::holds_alternative<InfiniteHorizon>(h);
}

// x' = A x + B u with B = diag(delta) chosen later by placement.
class LinearSystem {
 public:
  LinearSystem(Matrix a, Horizon horizon, const NumericTolerances& tol = {});

  const Matrix& a() const { return a_; }
  const Horizon& horizon() const { return horizon_; }
  std::size_t dim() const { return static_cast<std::size_t>(a_.rows()); }

 private:
  Matrix a_;
  Horizon horizon_;
};

// Subset of the nodes {0, ..., n-1}; equivalently the binary vector delta
// with delta_i = 1 iff node i is actuated.
class ActuatorSet {
 public:
  explicit ActuatorSet(std::size_t n) : indicator_(n, false) {}
  ActuatorSet(std::size_t n, std::initializer_list<std::size_t> members);
  ActuatorSet(std::size_t n, std::span<const std::size_t> members);

  static ActuatorSet Full(std::size_t n);
  // Bit i of mask selects node i; requires n <= 64.
  static ActuatorSet FromMask(std::size_t n, std::uint64_t mask);

  std::size_t dim() const { return indicator_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(std::size_t node) const;

  void insert(std::size_t node);
  void erase(std::size_t node);
  ActuatorSet With(std::size_t node) const;

  bool IsSubsetOf(const ActuatorSet& other) const;

  // Ascending 0-based node indices.
  std::vector<std::size_t> members() const;
  const std::vector<bool>& indicator() const { return indicator_; }

  bool operator==(const ActuatorSet& other) const {
    return indicator_ == other.indicator_;
  }

 private:
  void CheckNode(std::size_t node) const;

  std::vector<bool> indicator_;
  std::size_t count_ = 0;
};

// The per-node Gramians Gamma_i, so that Gamma_Delta = sum_{i in Delta}
// Gamma_i. Immutable once built.
class GramianBasis {
 public:
  GramianBasis(std::vector<Matrix> gammas, Horizon horizon);

  std::size_t dim() const { return gammas_.size(); }
  const Matrix& gamma(std::size_t node) const { return gammas_.at(node); }
  const std::vector<Matrix>& gammas() const { return gammas_; }
  const Horizon& horizon() const { return horizon_; }

  Matrix GramianOf(const ActuatorSet& set) const;
  // Gamma_V for the full node set.
  const Matrix& Full() const { return full_; }

  // n * machine epsilon * lambda_max(Gamma_V): the numerical-rank threshold on
  // lambda_min(Gamma_Delta) used when callers do not supply one.
  double DefaultControlTolerance() const;

 private:
  std::vector<Matrix> gammas_;
  Horizon horizon_;
  Matrix full_;
  double full_max_eigenvalue_ = 0.0;
};

// Finite horizon: Gamma_i = int_0^tau e^{As} I_i e^{A^T s} ds, read off the
// exponential of the block matrix [[-A, I_i], [0, A^T]] tau. Infinite
// horizon: A Gamma_i + Gamma_i A^T = -I_i.
GramianBasis BuildGramianBasis(const LinearSystem& system,
                               const NumericTolerances& tol = {});

// -1 on the diagonal, +1 on the first subdiagonal.
LinearSystem IntegratorChain(std::size_t n,
                             Horizon horizon = FiniteHorizon{0.0, 1.0});

// A - 1.1 Re(lambda_rightmost) I, applied unconditionally.
Matrix Stabilize(const Matrix& a);

struct RandomNetworkOptions {
  bool self_loops = true;
};

// 2 ln(n) / n.
double EdgeProbability(std::size_t n);

// Weighted directed Erdos-Renyi adjacency before stabilization. Stream
// order for a std::mt19937_64 seeded with `seed`: entries scanned row-major;
// each entry draws one uniform u = (x >> 11) * 2^-53 and is present iff
// u < p; a present entry then draws two more uniforms for a Box-Muller
// standard normal weight. Diagonal entries draw nothing when self loops are
// disabled.
Matrix ErdosRenyiWeights(std::size_t n, std::uint64_t seed,
                         const RandomNetworkOptions& options = {});

// Stabilized Erdos-Renyi network in infinite-horizon mode. Throws a
// stability error if the stabilized matrix is not Hurwitz.
LinearSystem ErdosRenyiSystem(std::size_t n, std::uint64_t seed,
                              const RandomNetworkOptions& options = {});

}  // namespace gplace

#endif  // GPLACE_SYSTEM_HPP_
