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

#ifndef GPLACE_OBJECTIVE_HPP_
#define GPLACE_OBJECTIVE_HPP_

#include <cstddef>
#include <optional>

#include "gplace/numerics.hpp"
#include "gplace/system.hpp"

namespace gplace {

// Normalized transfer direction v and its orthonormal complement.
//
// Finite horizon: v = (x1 - e^{A tau} x0) / ||x1 - e^{A tau} x0||.
// Infinite horizon: the transfer starts from rest, so x0 must be zero and
// v = x1 / ||x1||.
class TransferSpec {
 public:
  static TransferSpec FromEndpoints(const LinearSystem& system,
                                    const Vector& x0, const Vector& x1);
  // Uses x0 = 0 and x1 = direction (normalized).
  static TransferSpec FromDirection(const Vector& direction);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const Vector& x0() const { return x0_; }
  const Vector& x1() const { return x1_; }
  const Vector& direction() const { return v_; }
  // n x (n-1); columns are the complement vectors.
  const Matrix& complement() const { return vbar_; }

 private:
  TransferSpec(Vector x0, Vector x1, const Vector& displacement);

  Vector x0_;
  Vector x1_;
  Vector v_;
  Matrix vbar_;
};

struct Controllability {
  bool controllable = false;
  double lambda_min = 0.0;
};

Controllability CheckControllable(const Matrix& gramian, double ctrl_tol);
Controllability IsControllable(const GramianBasis& basis,
                               const ActuatorSet& set, double ctrl_tol);

// v^T Gamma^{-1} v through a Cholesky solve. Throws kNotControllable (value
// = lambda_min) when lambda_min(Gamma) <= ctrl_tol.
double MinEnergy(const Matrix& gramian, const Vector& v, double ctrl_tol);
// ctrl_tol defaults to basis.DefaultControlTolerance().
double MinEnergy(const GramianBasis& basis, const ActuatorSet& set,
                 const TransferSpec& transfer,
                 std::optional<double> ctrl_tol = std::nullopt);

// v^T Gamma_V^{-1} v: the least energy bound any actuator set can meet.
// Throws kSystemUncontrollable when Gamma_V itself is singular.
double FeasibilityBound(const GramianBasis& basis,
                        const TransferSpec& transfer,
                        std::optional<double> ctrl_tol = std::nullopt);

// v^T Gamma^{-1} v - v^T (Gamma + eps I)^{-1} v, evaluated as
// eps * (Gamma^{-1} v)^T (Gamma + eps I)^{-1} v to avoid cancellation.
double EnergyGap(const Matrix& gramian, const Vector& v, double epsilon,
                 double ctrl_tol);

// phi(Gamma) = v^T (Gamma + eps I)^{-1} v
//            + eps * sum_i vbar_i^T (Gamma + eps^2 I)^{-1} vbar_i.
// Cholesky first; if either shifted matrix fails to factor (roundoff pushed
// a zero eigenvalue of Gamma below -eps^2) the value is taken from the
// eigendecomposition of Gamma with eigenvalues clamped at zero.
double PhiOfGramian(const Matrix& gramian, const Vector& v,
                    const Matrix& complement, double epsilon);

// The epsilon-regularized energy set function. Holds a reference to the
// basis, which must outlive it.
class EpsilonObjective {
 public:
  EpsilonObjective(const GramianBasis& basis, TransferSpec transfer,
                   double epsilon);

  double epsilon() const { return epsilon_; }
  const GramianBasis& basis() const { return *basis_; }
  const TransferSpec& transfer() const { return transfer_; }

  double operator()(const ActuatorSet& set) const;
  double OfGramian(const Matrix& gramian) const;

  // phi(set) - phi(set + {node}). Requires node not in set.
  double MarginalGain(const ActuatorSet& set, std::size_t node) const;

  // phi of the empty set, n / eps.
  double EmptyValue() const;

 private:
  const GramianBasis* basis_;
  TransferSpec transfer_;
  double epsilon_;
};

}  // namespace gplace

#endif  // GPLACE_OBJECTIVE_HPP_
