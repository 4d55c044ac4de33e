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

#ifndef GPLACE_CLI_HPP_
#define GPLACE_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gplace/system.hpp"

namespace gplace::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerifyFailed = 4;

// Runs the command line `args` (args[0] is the program name). Results go to
// `out` unless a subcommand is given --out; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// One row of the energy-bound sweep.
struct ExperimentRow {
  std::size_t n = 0;
  double k = 0.0;
  double energy_bound = 0.0;
  std::size_t cardinality = 0;
  double epsilon = 0.0;
  double bound_f = 0.0;
  double exact_energy = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kSweepHeader =
    "n,k,E,cardinality,epsilon,F_bound,exact_energy,seed";

std::string FormatRow(const ExperimentRow& row);

// Seed of the `attempt`-th random instance of size n in a sweep seeded with
// `seed` (splitmix64 mixing, so nearby inputs give unrelated streams).
std::uint64_t InstanceSeed(std::uint64_t seed, std::size_t n,
                           std::size_t attempt);

struct SweepOptions {
  std::vector<std::size_t> sizes;
  std::vector<int> k_exponents;  // k = 2^j
  std::uint64_t seed = 1;
  double approximation_error = 0.1;
  double accuracy = 1.0;
  RandomNetworkOptions network;
  std::size_t max_attempts = 10;
};

// Rows ordered by n (outer) then k (inner). Instances or rows that cannot
// be produced are reported as "skipped ..." lines on `log`.
std::vector<ExperimentRow> RunSweep(const SweepOptions& options,
                                    std::ostream& log);

}  // namespace gplace::cli

#endif  // GPLACE_CLI_HPP_
