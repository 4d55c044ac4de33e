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

#ifndef GPLACE_PLACEMENT_HPP_
#define GPLACE_PLACEMENT_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "gplace/objective.hpp"
#include "gplace/system.hpp"

namespace gplace {

// Input to the greedy cover: energy bound E and regularization epsilon with
// 0 < epsilon <= 1/E.
struct GreedyConfig {
  double energy_bound = 0.0;
  double epsilon = 0.0;

  void Validate() const;
};

// Input to the epsilon bisection: energy bound E, approximation error c and
// bisection accuracy a (absolute width of the final epsilon bracket).
struct BisectionConfig {
  double energy_bound = 0.0;
  double approximation_error = 0.0;
  double accuracy = 0.0;

  void Validate() const;
};

struct PlacementOptions {
  // Threshold on lambda_min(Gamma_Delta); defaults to the basis' own.
  std::optional<double> ctrl_tol;
};

struct GainStep {
  std::size_t node = 0;
  double gain = 0.0;
};

struct PlacementResult {
  ActuatorSet actuators{0};
  double epsilon = 0.0;
  double phi = 0.0;           // phi(Delta) at `epsilon`
  double exact_energy = 0.0;  // v^T Gamma_Delta^{-1} v
  double lambda_min = 0.0;    // of Gamma_Delta
  double bound_f = 0.0;       // cardinality ratio certificate F
  double phi_full = 0.0;      // phi(V) at `epsilon`
  std::vector<GainStep> gain_trace;
  // Greedy runs spent by the bisection (1 for a bare greedy run), and how
  // many of them came after the bracket loop.
  std::size_t greedy_calls = 1;
  std::size_t post_loop_calls = 0;
};

// Starting from the empty set, repeatedly adds the node with the largest
// decrease of phi until phi <= E. Ties within 1e-12 go to the smaller node.
//
// Errors: kInfeasibleProblem if E is below the feasibility bound,
// kInfeasibleForEpsilon if phi(V) > E, kNumericalConditioning if the
// result fails the controllability threshold.
PlacementResult GreedyPlace(const GramianBasis& basis,
                            const TransferSpec& transfer,
                            const GreedyConfig& config,
                            const PlacementOptions& options = {});

// F = 1 + ln((n / eps - phi(V)) / (E - phi(V))). Requires E > phi(V).
double BoundF(std::size_t n, double epsilon, double energy_bound,
              double phi_full);

// Bisection over epsilon in (0, 1/E]: each probe runs GreedyPlace and
// shrinks the upper end when v^T Gamma^{-1} v - v^T (Gamma + eps I)^{-1} v
// exceeds cE (or when the probe is infeasible for that epsilon), otherwise
// raises the lower end. After the bracket narrows below `accuracy`, the
// final epsilon is re-lowered once if needed and the greedy is rerun. That
// final set is re-verified against the gap test; if it fails, epsilon falls
// back to the last verified lower end, or halves while no lower end was
// ever verified. The result satisfies exact_energy <= (1 + c) E.
PlacementResult BisectionPlace(const GramianBasis& basis,
                               const TransferSpec& transfer,
                               const BisectionConfig& config,
                               const PlacementOptions& options = {});

struct SpectralSummary {
  double lambda_min = 0.0;  // smallest eigenvalue of Gamma_Delta
  double alignment = 0.0;   // max_j (v^T q_j)^2 over its eigenvectors
};

struct Certificate {
  SpectralSummary spectral;
  double energy_gap = 0.0;  // v^T Gamma^{-1} v - v^T (Gamma + eps I)^{-1} v
  double gap_bound = 0.0;   // n eps alignment / lambda_min^2
  bool epsilon_condition = false;  // gap_bound <= cE
  bool gap_within_budget = false;  // energy_gap <= cE
  bool energy_guarantee = false;   // exact energy <= (1 + c) E
};

SpectralSummary Spectrum(const Matrix& gramian, const Vector& v);

Certificate Certify(const PlacementResult& result, const GramianBasis& basis,
                    const TransferSpec& transfer,
                    const BisectionConfig& config,
                    const PlacementOptions& options = {});

}  // namespace gplace

#endif  // GPLACE_PLACEMENT_HPP_
