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

#include "gplace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gplace/error.hpp"
#include "gplace/parallel.hpp"

namespace gplace {
namespace {

constexpr double kGainTieTolerance = 1e-12;
constexpr double kMinEpsilon = 1e-14;

bool PositiveFinite(double x) { return x > 0.0 && std::isfinite(x); }

double ControlTolerance(const GramianBasis& basis,
                        const PlacementOptions& options) {
  return options.ctrl_tol.value_or(basis.DefaultControlTolerance());
}

void RequireFeasible(const GramianBasis& basis, const TransferSpec& transfer,
                     double energy_bound, double ctrl_tol) {
  const double bound = FeasibilityBound(basis, transfer, ctrl_tol);
  if (energy_bound < bound) {
    throw Error(ErrorCode::kInfeasibleProblem,
                "energy bound " + FormatValue(energy_bound) +
                    " is below v^T Gamma_V^{-1} v = " + FormatValue(bound),
                bound);
  }
}

PlacementResult RunGreedy(const GramianBasis& basis,
                          const TransferSpec& transfer,
                          const GreedyConfig& config, double ctrl_tol) {
  const std::size_t n = basis.dim();
  const double e_bound = config.energy_bound;
  const EpsilonObjective phi(basis, transfer, config.epsilon);

  const double phi_full = phi.OfGramian(basis.Full());
  if (phi_full > e_bound) {
    throw Error(ErrorCode::kInfeasibleForEpsilon,
                "phi(V) = " + FormatValue(phi_full) +
                    " exceeds E = " + FormatValue(e_bound),
                phi_full);
  }

  PlacementResult result;
  result.actuators = ActuatorSet(n);
  result.epsilon = config.epsilon;
  result.phi_full = phi_full;

  const auto ni = static_cast<Eigen::Index>(n);
  Matrix current_gramian = Matrix::Zero(ni, ni);
  double current = phi.OfGramian(current_gramian);
  std::vector<double> candidate_values(n);

  while (current > e_bound && result.actuators.size() < n) {
    ParallelFor(n, [&](std::size_t a) {
      if (result.actuators.contains(a)) return;
      candidate_values[a] =
          phi.OfGramian(current_gramian + basis.gamma(a));
    });
    std::optional<std::size_t> best;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (result.actuators.contains(a)) continue;
      const double gain = current - candidate_values[a];
      if (!best || gain > best_gain + kGainTieTolerance) {
        best = a;
        best_gain = gain;
      }
    }
    result.actuators.insert(*best);
    result.gain_trace.push_back({*best, best_gain});
    current_gramian += basis.gamma(*best);
    current = candidate_values[*best];
  }

  result.phi = current;
  const Controllability check =
      CheckControllable(current_gramian, ctrl_tol);
  result.lambda_min = check.lambda_min;
  if (!check.controllable) {
    throw Error(ErrorCode::kNumericalConditioning,
                "greedy set fails the controllability threshold "
                "(lambda_min = " + FormatValue(check.lambda_min) + ")",
                check.lambda_min);
  }
  result.exact_energy =
      MinEnergy(current_gramian, transfer.direction(), ctrl_tol);
  result.bound_f = e_bound > phi_full
                       ? BoundF(n, config.epsilon, e_bound, phi_full)
                       : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace

void GreedyConfig::Validate() const {
  if (!PositiveFinite(energy_bound)) {
    throw Error(ErrorCode::kPrecondition, "E must be positive and finite");
  }
  if (!PositiveFinite(epsilon) || epsilon > 1.0 / energy_bound) {
    throw Error(ErrorCode::kPrecondition,
                "epsilon must satisfy 0 < epsilon <= 1/E", epsilon);
  }
}

void BisectionConfig::Validate() const {
  if (!PositiveFinite(energy_bound)) {
    throw Error(ErrorCode::kPrecondition, "E must be positive and finite");
  }
  if (!PositiveFinite(approximation_error)) {
    throw Error(ErrorCode::kPrecondition, "c must be positive and finite");
  }
  if (!PositiveFinite(accuracy)) {
    throw Error(ErrorCode::kPrecondition, "a must be positive and finite");
  }
}

PlacementResult GreedyPlace(const GramianBasis& basis,
                            const TransferSpec& transfer,
                            const GreedyConfig& config,
                            const PlacementOptions& options) {
  config.Validate();
  const double ctrl_tol = ControlTolerance(basis, options);
  RequireFeasible(basis, transfer, config.energy_bound, ctrl_tol);
  return RunGreedy(basis, transfer, config, ctrl_tol);
}

double BoundF(std::size_t n, double epsilon, double energy_bound,
              double phi_full) {
  if (!(energy_bound > phi_full)) {
    throw Error(ErrorCode::kInfeasibleForEpsilon,
                "F needs E > phi(V)", phi_full);
  }
  const double top = static_cast<double>(n) / epsilon - phi_full;
  if (!(top > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "F needs n / epsilon > phi(V)");
  }
  return 1.0 + std::log(top / (energy_bound - phi_full));
}

PlacementResult BisectionPlace(const GramianBasis& basis,
                               const TransferSpec& transfer,
                               const BisectionConfig& config,
                               const PlacementOptions& options) {
  config.Validate();
  const double ctrl_tol = ControlTolerance(basis, options);
  const double e_bound = config.energy_bound;
  const double budget = config.approximation_error * e_bound;
  RequireFeasible(basis, transfer, e_bound, ctrl_tol);

  std::size_t calls = 0;
  auto probe = [&](double eps) -> std::optional<PlacementResult> {
    ++calls;
    try {
      return RunGreedy(basis, transfer, GreedyConfig{e_bound, eps}, ctrl_tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasibleForEpsilon) return std::nullopt;
      throw;
    }
  };
  auto gap_ok = [&](const std::optional<PlacementResult>& r, double eps) {
    if (!r) return false;
    try {
      return EnergyGap(basis.GramianOf(r->actuators), transfer.direction(),
                       eps, ctrl_tol) <= budget;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotControllable) throw;
      throw Error(ErrorCode::kNumericalConditioning,
                  "greedy output lost controllability in the gap test",
                  e.value());
    }
  };

  const double upper_start = 1.0 / e_bound;
  const double floor = std::min(kMinEpsilon, upper_start / 2.0);
  double lower = 0.0;
  double upper = upper_start;
  double eps = (lower + upper) / 2.0;
  std::optional<PlacementResult> last;
  std::optional<PlacementResult> verified_at_lower;

  while (upper - lower > config.accuracy) {
    last = probe(eps);
    if (gap_ok(last, eps)) {
      lower = eps;
      verified_at_lower = last;
    } else {
      upper = eps;
    }
    eps = std::max((lower + upper) / 2.0, floor);
  }
  const std::size_t loop_calls = calls;

  if (!last) last = probe(eps);
  if (!gap_ok(last, eps)) {
    upper = eps;
    eps = std::max((lower + upper) / 2.0, floor);
  }
  std::optional<PlacementResult> final_set = probe(eps);

  while (!gap_ok(final_set, eps)) {
    if (verified_at_lower) {
      eps = lower;
      final_set = verified_at_lower;
      break;
    }
    if (eps <= floor) {
      throw Error(ErrorCode::kNumericalConditioning,
                  "epsilon reached " + FormatValue(floor) +
                      " without meeting the (1+c)E energy gap",
                  eps);
    }
    eps = std::max(eps / 2.0, floor);
    final_set = probe(eps);
  }

  PlacementResult result = std::move(*final_set);
  result.greedy_calls = calls;
  result.post_loop_calls = calls - loop_calls;
  return result;
}

SpectralSummary Spectrum(const Matrix& gramian, const Vector& v) {
  const SymEig eig = SymmetricEigen(gramian);
  const Vector along = (eig.eigenvectors.transpose() * v).array().square();
  return {eig.eigenvalues(0), along.maxCoeff()};
}

Certificate Certify(const PlacementResult& result, const GramianBasis& basis,
                    const TransferSpec& transfer,
                    const BisectionConfig& config,
                    const PlacementOptions& options) {
  const double ctrl_tol = ControlTolerance(basis, options);
  const Matrix gramian = basis.GramianOf(result.actuators);
  const Vector& v = transfer.direction();
  const double budget = config.approximation_error * config.energy_bound;

  Certificate cert;
  cert.spectral = Spectrum(gramian, v);
  const double lm = cert.spectral.lambda_min;
  cert.gap_bound = static_cast<double>(basis.dim()) * result.epsilon *
                   cert.spectral.alignment / (lm * lm);
  cert.epsilon_condition = cert.gap_bound <= budget;
  cert.energy_gap = EnergyGap(gramian, v, result.epsilon, ctrl_tol);
  cert.gap_within_budget = cert.energy_gap <= budget;
  cert.energy_guarantee = MinEnergy(gramian, v, ctrl_tol) <=
                          (1.0 + config.approximation_error) *
                              config.energy_bound;
  return cert;
}

}  // namespace gplace
