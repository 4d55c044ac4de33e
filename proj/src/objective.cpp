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

#include "gplace/objective.hpp"

#include <cmath>
#include <string>

#include "gplace/error.hpp"

namespace gplace {
namespace {

void RequireSameDim(const Matrix& gramian, const Vector& v) {
  if (gramian.rows() != v.size() || gramian.cols() != v.size()) {
    throw Error(ErrorCode::kDimension, "Gramian and direction sizes differ");
  }
}

double PhiByEigen(const Matrix& gramian, const Vector& v,
                  const Matrix& complement, double epsilon) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(
      0.5 * (gramian + gramian.transpose()));
  const Vector lambda = eig.eigenvalues().cwiseMax(0.0);
  const Matrix& q = eig.eigenvectors();
  const Vector along = (q.transpose() * v).array().square();
  const Vector across =
      (q.transpose() * complement).rowwise().squaredNorm();
  double value = 0.0;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    value += along(j) / (lambda(j) + epsilon) +
             epsilon * across(j) / (lambda(j) + epsilon * epsilon);
  }
  return value;
}

}  // namespace

TransferSpec::TransferSpec(Vector x0, Vector x1, const Vector& displacement)
    : x0_(std::move(x0)), x1_(std::move(x1)) {
  const double norm = displacement.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kNormalization,
                "transfer displacement is zero or not finite", norm);
  }
  v_ = displacement / norm;
  vbar_ = NullBasis(v_);
}

TransferSpec TransferSpec::FromEndpoints(const LinearSystem& system,
                                         const Vector& x0, const Vector& x1) {
  const auto n = static_cast<Eigen::Index>(system.dim());
  if (x0.size() != n || x1.size() != n) {
    throw Error(ErrorCode::kDimension,
                "transfer endpoints must have dimension " + std::to_string(n));
  }
  if (!x0.allFinite() || !x1.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "transfer endpoints");
  }
  if (const auto* finite = std::get_if<FiniteHorizon>(&system.horizon())) {
    const Vector drift = MatrixExp(system.a() * finite->duration()) * x0;
    return TransferSpec(x0, x1, x1 - drift);
  }
  if (x0.cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::kInvalidInput,
                "infinite-horizon transfers start from rest (x0 = 0)");
  }
  return TransferSpec(x0, x1, x1);
}

TransferSpec TransferSpec::FromDirection(const Vector& direction) {
  return TransferSpec(Vector::Zero(direction.size()), direction, direction);
}

Controllability CheckControllable(const Matrix& gramian, double ctrl_tol) {
  const double lmin = MinEigenvalue(gramian);
  return {lmin > ctrl_tol, lmin};
}

Controllability IsControllable(const GramianBasis& basis,
                               const ActuatorSet& set, double ctrl_tol) {
  return CheckControllable(basis.GramianOf(set), ctrl_tol);
}

double MinEnergy(const Matrix& gramian, const Vector& v, double ctrl_tol) {
  RequireSameDim(gramian, v);
  const Controllability check = CheckControllable(gramian, ctrl_tol);
  if (!check.controllable) {
    throw Error(ErrorCode::kNotControllable,
                "lambda_min(Gamma) = " + FormatValue(check.lambda_min) +
                    " <= " + FormatValue(ctrl_tol),
                check.lambda_min);
  }
  Eigen::LLT<Matrix> llt(gramian);
  if (llt.info() == Eigen::Success) return v.dot(llt.solve(v));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gramian);
  const Vector proj = eig.eigenvectors().transpose() * v;
  return (proj.array().square() / eig.eigenvalues().array()).sum();
}

double MinEnergy(const GramianBasis& basis, const ActuatorSet& set,
                 const TransferSpec& transfer,
                 std::optional<double> ctrl_tol) {
  return MinEnergy(basis.GramianOf(set), transfer.direction(),
                   ctrl_tol.value_or(basis.DefaultControlTolerance()));
}

double FeasibilityBound(const GramianBasis& basis,
                        const TransferSpec& transfer,
                        std::optional<double> ctrl_tol) {
  try {
    return MinEnergy(basis.Full(), transfer.direction(),
                     ctrl_tol.value_or(basis.DefaultControlTolerance()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotControllable) throw;
    throw Error(ErrorCode::kSystemUncontrollable,
                "Gamma_V is singular (lambda_min = " +
                    FormatValue(e.value()) + ")",
                e.value());
  }
}

double EnergyGap(const Matrix& gramian, const Vector& v, double epsilon,
                 double ctrl_tol) {
  RequireSameDim(gramian, v);
  const Controllability check = CheckControllable(gramian, ctrl_tol);
  if (!check.controllable) {
    throw Error(ErrorCode::kNotControllable,
                "energy gap needs a controllable set", check.lambda_min);
  }
  const auto n = gramian.rows();
  const Vector exact = Eigen::LDLT<Matrix>(gramian).solve(v);
  const Vector shifted =
      Eigen::LLT<Matrix>(gramian + epsilon * Matrix::Identity(n, n)).solve(v);
  return epsilon * exact.dot(shifted);
}

double PhiOfGramian(const Matrix& gramian, const Vector& v,
                    const Matrix& complement, double epsilon) {
  RequireSameDim(gramian, v);
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "epsilon must be positive", epsilon);
  }
  const auto n = gramian.rows();
  Matrix shifted = gramian;
  shifted.diagonal().array() += epsilon;
  Eigen::LLT<Matrix> along(shifted);
  shifted = gramian;
  shifted.diagonal().array() += epsilon * epsilon;
  Eigen::LLT<Matrix> across(shifted);
  if (along.info() != Eigen::Success || across.info() != Eigen::Success) {
    return PhiByEigen(gramian, v, complement, epsilon);
  }
  double value = v.dot(along.solve(v));
  if (n > 1) {
    value += epsilon * complement.cwiseProduct(across.solve(complement)).sum();
  }
  return value;
}

EpsilonObjective::EpsilonObjective(const GramianBasis& basis,
                                   TransferSpec transfer, double epsilon)
    : basis_(&basis), transfer_(std::move(transfer)), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kPrecondition, "epsilon must be positive", epsilon);
  }
  if (transfer_.dim() != basis.dim()) {
    throw Error(ErrorCode::kDimension, "transfer and basis sizes differ");
  }
}

double EpsilonObjective::operator()(const ActuatorSet& set) const {
  return OfGramian(basis_->GramianOf(set));
}

double EpsilonObjective::OfGramian(const Matrix& gramian) const {
  return PhiOfGramian(gramian, transfer_.direction(), transfer_.complement(),
                      epsilon_);
}

double EpsilonObjective::MarginalGain(const ActuatorSet& set,
                                      std::size_t node) const {
  if (set.contains(node)) {
    throw Error(ErrorCode::kPrecondition,
                "node " + std::to_string(node) + " already in the set");
  }
  const Matrix base = basis_->GramianOf(set);
  return OfGramian(base) - OfGramian(base + basis_->gamma(node));
}

double EpsilonObjective::EmptyValue() const {
  return static_cast<double>(basis_->dim()) / epsilon_;
}

}  // namespace gplace
