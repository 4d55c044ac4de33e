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

#include "gplace/system.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "gplace/error.hpp"
#include "gplace/parallel.hpp"

namespace gplace {
namespace {

constexpr double kGammaSymmetryTol = 1e-10;
constexpr double kGammaPsdTol = 1e-10;

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

double StandardNormal(std::mt19937_64& rng) {
  const double u1 = 1.0 - Uniform(rng);  // (0, 1]
  const double u2 = Uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

LinearSystem::LinearSystem(Matrix a, Horizon horizon,
                           const NumericTolerances& tol)
    : a_(std::move(a)), horizon_(horizon) {
  RequireSquare(a_, "state matrix");
  if (a_.rows() == 0) throw Error(ErrorCode::kDimension, "empty state matrix");
  if (!a_.allFinite()) throw Error(ErrorCode::kNonFinite, "state matrix");
  if (const auto* finite = std::get_if<FiniteHorizon>(&horizon_)) {
    if (!std::isfinite(finite->t0) || !std::isfinite(finite->t1) ||
        !(finite->t1 > finite->t0)) {
      throw Error(ErrorCode::kInvalidInput, "finite horizon requires t1 > t0");
    }
  } else {
    const double abscissa = SpectralAbscissa(a_);
    if (!(abscissa < -tol.hurwitz_margin)) {
      throw Error(ErrorCode::kStability,
                  "infinite horizon requires a Hurwitz state matrix (max "
                  "Re(lambda) = " + FormatValue(abscissa) + ")",
                  abscissa);
    }
  }
}

ActuatorSet::ActuatorSet(std::size_t n,
                         std::initializer_list<std::size_t> members)
    : ActuatorSet(n, std::span<const std::size_t>(members.begin(),
                                                  members.size())) {}

ActuatorSet::ActuatorSet(std::size_t n, std::span<const std::size_t> members)
    : indicator_(n, false) {
  for (std::size_t node : members) insert(node);
}

ActuatorSet ActuatorSet::Full(std::size_t n) {
  ActuatorSet set(n);
  set.indicator_.assign(n, true);
  set.count_ = n;
  return set;
}

ActuatorSet ActuatorSet::FromMask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw Error(ErrorCode::kDimension, "mask supports n <= 64");
  ActuatorSet set(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) set.insert(i);
  }
  return set;
}

void ActuatorSet::CheckNode(std::size_t node) const {
  if (node >= indicator_.size()) {
    throw Error(ErrorCode::kDimension,
                "node " + std::to_string(node) + " outside [0, " +
                    std::to_string(indicator_.size()) + ")");
  }
}

bool ActuatorSet::contains(std::size_t node) const {
  CheckNode(node);
  return indicator_[node];
}

void ActuatorSet::insert(std::size_t node) {
  CheckNode(node);
  if (!indicator_[node]) {
    indicator_[node] = true;
    ++count_;
  }
}

void ActuatorSet::erase(std::size_t node) {
  CheckNode(node);
  if (indicator_[node]) {
    indicator_[node] = false;
    --count_;
  }
}

ActuatorSet ActuatorSet::With(std::size_t node) const {
  ActuatorSet out = *this;
  out.insert(node);
  return out;
}

bool ActuatorSet::IsSubsetOf(const ActuatorSet& other) const {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (indicator_[i] && !other.indicator_[i]) return false;
  }
  return true;
}

std::vector<std::size_t> ActuatorSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < indicator_.size(); ++i) {
    if (indicator_[i]) out.push_back(i);
  }
  return out;
}

GramianBasis::GramianBasis(std::vector<Matrix> gammas, Horizon horizon)
    : gammas_(std::move(gammas)), horizon_(horizon) {
  const auto n = static_cast<Eigen::Index>(gammas_.size());
  if (n == 0) throw Error(ErrorCode::kDimension, "empty Gramian basis");
  full_ = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    const Matrix& g = gammas_[i];
    if (g.rows() != n || g.cols() != n) {
      throw Error(ErrorCode::kDimension,
                  "Gramian " + std::to_string(i) + " has wrong size");
    }
    if (!g.allFinite()) {
      throw Error(ErrorCode::kNonFinite, "Gramian " + std::to_string(i));
    }
    const double scale = 1.0 + g.cwiseAbs().maxCoeff();
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > kGammaSymmetryTol * scale) {
      throw Error(ErrorCode::kPrecondition,
                  "Gramian " + std::to_string(i) + " is not symmetric");
    }
    const double lmin = MinEigenvalue(g);
    if (lmin < -kGammaPsdTol * scale) {
      throw Error(ErrorCode::kPrecondition,
                  "Gramian " + std::to_string(i) +
                      " is not positive semi-definite",
                  lmin);
    }
    full_ += g;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> full_eig(full_, Eigen::EigenvaluesOnly);
  full_max_eigenvalue_ = full_eig.eigenvalues()(n - 1);
}

Matrix GramianBasis::GramianOf(const ActuatorSet& set) const {
  if (set.dim() != dim()) {
    throw Error(ErrorCode::kDimension,
                "actuator set over " + std::to_string(set.dim()) +
                    " nodes, basis over " + std::to_string(dim()));
  }
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (set.indicator()[i]) sum += gammas_[i];
  }
  return sum;
}

double GramianBasis::DefaultControlTolerance() const {
  return static_cast<double>(dim()) * std::numeric_limits<double>::epsilon() *
         full_max_eigenvalue_;
}

GramianBasis BuildGramianBasis(const LinearSystem& system,
                               const NumericTolerances& tol) {
  const std::size_t n = system.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  const Matrix& a = system.a();
  std::vector<Matrix> gammas(n);

  if (const auto* finite = std::get_if<FiniteHorizon>(&system.horizon())) {
    const double tau = finite->duration();
    ParallelFor(n, [&](std::size_t i) {
      Matrix block = Matrix::Zero(2 * ni, 2 * ni);
      block.topLeftCorner(ni, ni) = -a * tau;
      block(static_cast<Eigen::Index>(i), ni + static_cast<Eigen::Index>(i)) =
          tau;
      block.bottomRightCorner(ni, ni) = a.transpose() * tau;
      const Matrix e = MatrixExp(block);
      // e = [[e^{-A tau}, Y], [0, e^{A^T tau}]] and Gamma_i = e^{A tau} Y.
      const Matrix g = e.bottomRightCorner(ni, ni).transpose() *
                       e.topRightCorner(ni, ni);
      gammas[i] = 0.5 * (g + g.transpose());
    });
  } else {
    const LyapunovSolver solver(a, tol);
    ParallelFor(n, [&](std::size_t i) {
      Matrix q = Matrix::Zero(ni, ni);
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
      gammas[i] = solver.Solve(q);
    });
  }
  return GramianBasis(std::move(gammas), system.horizon());
}

LinearSystem IntegratorChain(std::size_t n, Horizon horizon) {
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "chain length must be >= 1");
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix a = -Matrix::Identity(ni, ni);
  for (Eigen::Index i = 1; i < ni; ++i) a(i, i - 1) = 1.0;
  return LinearSystem(std::move(a), horizon);
}

Matrix Stabilize(const Matrix& a) {
  RequireSquare(a, "stabilize input");
  const double rightmost = SpectralAbscissa(a);
  return a - 1.1 * rightmost * Matrix::Identity(a.rows(), a.cols());
}

double EdgeProbability(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 2.0 * std::log(nd) / nd;
}

Matrix ErdosRenyiWeights(std::size_t n, std::uint64_t seed,
                         const RandomNetworkOptions& options) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidInput, "random network needs n >= 2");
  }
  const double p = EdgeProbability(n);
  const auto ni = static_cast<Eigen::Index>(n);
  std::mt19937_64 rng(seed);
  Matrix a = Matrix::Zero(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) {
      if (i == j && !options.self_loops) continue;
      if (Uniform(rng) < p) a(i, j) = StandardNormal(rng);
    }
  }
  return a;
}

LinearSystem ErdosRenyiSystem(std::size_t n, std::uint64_t seed,
                              const RandomNetworkOptions& options) {
  return LinearSystem(Stabilize(ErdosRenyiWeights(n, seed, options)),
                      InfiniteHorizon{});
}

}  // namespace gplace
