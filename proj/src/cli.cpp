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

#include "gplace/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gplace/error.hpp"
#include "gplace/objective.hpp"
#include "gplace/oracle.hpp"
#include "gplace/parallel.hpp"
#include "gplace/placement.hpp"
#include "gplace/system_io.hpp"

namespace gplace::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kVerifyMaxNodes = 10;

std::string FormatReal(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) items.push_back(item);
  return items;
}

Vector ParseVector(const std::string& text, const char* flag) {
  const auto items = SplitList(text);
  Vector v(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(items[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != items[i].size() || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(flag) + ": cannot parse '" + items[i] + "'");
    }
    v(static_cast<Eigen::Index>(i)) = x;
  }
  return v;
}

// 1-based node list from the command line to a 0-based set.
ActuatorSet ParseNodeSet(const std::string& text, std::size_t n,
                         const char* flag) {
  ActuatorSet set(n);
  for (const auto& item : SplitList(text)) {
    std::size_t used = 0;
    long node = 0;
    try {
      node = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || node < 1 ||
        static_cast<std::size_t>(node) > n) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(flag) + ": bad node '" + item + "'");
    }
    set.insert(static_cast<std::size_t>(node - 1));
  }
  return set;
}

json OneBased(const ActuatorSet& set) {
  json nodes = json::array();
  for (std::size_t i : set.members()) nodes.push_back(i + 1);
  return nodes;
}

void Emit(const std::string& text, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  }
  file << text;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleProblem:
    case ErrorCode::kInfeasibleForEpsilon:
    case ErrorCode::kSystemUncontrollable:
      return kExitInfeasible;
    case ErrorCode::kNumericalConditioning:
    case ErrorCode::kNotControllable:
      return kExitNumerical;
    default:
      return kExitBadInput;
  }
}

// Transfer and energy-bound flags shared by `place` and `oracle`.
struct ProblemArgs {
  std::string system_path;
  std::string x0;
  std::string x1;
  std::optional<double> energy;
  std::string energy_set;
  std::optional<double> energy_factor;

  void Register(CLI::App* cmd) {
    cmd->add_option("--system", system_path, "system JSON file")->required();
    cmd->add_option("--x0", x0, "initial state, comma separated (default 0)");
    cmd->add_option("--x1", x1, "target state, comma separated")->required();
    auto* e = cmd->add_option("--energy", energy, "energy bound E");
    auto* s = cmd->add_option("--energy-set", energy_set,
                              "E = energy of this 1-based node set");
    auto* f = cmd->add_option("--energy-factor", energy_factor,
                              "E = factor * v^T Gamma_V^{-1} v");
    e->excludes(s)->excludes(f);
    s->excludes(f);
  }

  struct Problem {
    GramianBasis basis;
    TransferSpec transfer;
    double energy_bound;
  };

  Problem Load() const {
    const LinearSystem system = LoadSystemJson(system_path);
    const auto n = static_cast<Eigen::Index>(system.dim());
    const Vector target = ParseVector(x1, "--x1");
    const Vector start = x0.empty() ? Vector::Zero(n) : ParseVector(x0, "--x0");
    GramianBasis basis = BuildGramianBasis(system);
    TransferSpec transfer = TransferSpec::FromEndpoints(system, start, target);
    double e_bound = 0.0;
    if (energy) {
      e_bound = *energy;
    } else if (!energy_set.empty()) {
      e_bound = MinEnergy(basis,
                          ParseNodeSet(energy_set, system.dim(),
                                       "--energy-set"),
                          transfer);
    } else if (energy_factor) {
      e_bound = *energy_factor * FeasibilityBound(basis, transfer);
    } else {
      throw Error(ErrorCode::kInvalidInput,
                  "one of --energy, --energy-set, --energy-factor is needed");
    }
    if (!(e_bound > 0.0) || !std::isfinite(e_bound)) {
      throw Error(ErrorCode::kInvalidInput, "energy bound must be positive");
    }
    return {std::move(basis), std::move(transfer), e_bound};
  }
};

int CmdPlace(const ProblemArgs& problem_args, double c, double a, bool verify,
             const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  const auto problem = problem_args.Load();
  const BisectionConfig config{problem.energy_bound, c, a};
  const PlacementResult result =
      BisectionPlace(problem.basis, problem.transfer, config);
  const Certificate cert =
      Certify(result, problem.basis, problem.transfer, config);

  json doc;
  doc["actuators"] = OneBased(result.actuators);
  doc["epsilon"] = result.epsilon;
  doc["energy"] = result.exact_energy;
  doc["energy_bound"] = problem.energy_bound;
  doc["phi"] = result.phi;
  doc["lambda_min"] = result.lambda_min;
  doc["bound_F"] = result.bound_f;
  doc["c"] = c;
  doc["a"] = a;
  doc["guarantee"] = "(1+c)E";
  doc["guarantee_holds"] = cert.energy_guarantee;
  doc["greedy_calls"] = result.greedy_calls;
  json trace = json::array();
  for (const auto& step : result.gain_trace) {
    trace.push_back({{"node", step.node + 1}, {"gain", step.gain}});
  }
  doc["gain_trace"] = std::move(trace);

  int code = kExitOk;
  if (verify) {
    if (problem.basis.dim() > kVerifyMaxNodes) {
      throw Error(ErrorCode::kTooLarge, "--verify supports n <= 10");
    }
    const OracleResult oracle = BruteForceRegularized(
        problem.basis, problem.transfer, problem.energy_bound,
        result.epsilon);
    const double limit =
        result.bound_f * static_cast<double>(oracle.min_cardinality);
    const bool ratio_ok =
        static_cast<double>(result.actuators.size()) <= limit;
    doc["verify"] = {{"l_star", oracle.min_cardinality},
                     {"ratio_holds", ratio_ok}};
    if (!ratio_ok) {
      err << "verify: |Delta| = " << result.actuators.size()
          << " exceeds F * l* = " << FormatReal(limit) << "\n";
      code = kExitVerifyFailed;
    }
  }
  Emit(doc.dump(2) + "\n", out_path, out);
  return code;
}

int CmdOracle(const ProblemArgs& problem_args, std::optional<double> epsilon,
              const std::string& out_path, std::ostream& out) {
  const auto problem = problem_args.Load();
  const OracleResult result =
      epsilon ? BruteForceRegularized(problem.basis, problem.transfer,
                                      problem.energy_bound, *epsilon)
              : BruteForceExactEnergy(problem.basis, problem.transfer,
                                      problem.energy_bound);
  json doc;
  doc["problem"] = epsilon ? "regularized" : "exact";
  doc["energy_bound"] = problem.energy_bound;
  doc["min_cardinality"] = result.min_cardinality;
  json witnesses = json::array();
  for (const auto& w : result.witnesses) witnesses.push_back(OneBased(w));
  doc["witnesses"] = std::move(witnesses);
  doc["evaluated"] = result.evaluated;
  Emit(doc.dump(2) + "\n", out_path, out);
  return kExitOk;
}

std::vector<int> ParseExponents(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int j = lo; j <= hi; ++j) out.push_back(j);
    return out;
  }
  for (const auto& item : SplitList(text)) out.push_back(std::stoi(item));
  return out;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string FormatRow(const ExperimentRow& row) {
  std::ostringstream s;
  s << row.n << ',' << FormatReal(row.k) << ','
    << FormatReal(row.energy_bound) << ',' << row.cardinality << ','
    << FormatReal(row.epsilon) << ',' << FormatReal(row.bound_f) << ','
    << FormatReal(row.exact_energy) << ',' << row.seed;
  return s.str();
}

std::uint64_t InstanceSeed(std::uint64_t seed, std::size_t n,
                           std::size_t attempt) {
  return SplitMix64(SplitMix64(seed) ^
                    SplitMix64((static_cast<std::uint64_t>(n) << 16) ^
                               static_cast<std::uint64_t>(attempt)));
}

std::vector<ExperimentRow> RunSweep(const SweepOptions& options,
                                    std::ostream& log) {
  struct Instance {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::unique_ptr<GramianBasis> basis;
    std::unique_ptr<TransferSpec> transfer;
    double feasibility = 0.0;
    std::string failure;
  };

  std::vector<Instance> instances(options.sizes.size());
  for (std::size_t s = 0; s < options.sizes.size(); ++s) {
    Instance& inst = instances[s];
    inst.n = options.sizes[s];
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
      inst.seed = InstanceSeed(options.seed, inst.n, attempt);
      try {
        const LinearSystem system =
            ErdosRenyiSystem(inst.n, inst.seed, options.network);
        auto basis = std::make_unique<GramianBasis>(BuildGramianBasis(system));
        auto transfer = std::make_unique<TransferSpec>(
            TransferSpec::FromEndpoints(
                system, Vector::Zero(static_cast<Eigen::Index>(inst.n)),
                Vector::Ones(static_cast<Eigen::Index>(inst.n))));
        inst.feasibility = FeasibilityBound(*basis, *transfer);
        inst.basis = std::move(basis);
        inst.transfer = std::move(transfer);
        break;
      } catch (const Error& e) {
        log << "skipped instance n=" << inst.n << " seed=" << inst.seed
            << " attempt=" << attempt << ": " << e.what() << "\n";
      }
    }
    if (!inst.basis) {
      log << "skipped n=" << inst.n << ": no usable instance after "
          << options.max_attempts << " attempts\n";
    }
  }

  const std::size_t per_n = options.k_exponents.size();
  std::vector<std::optional<ExperimentRow>> rows(instances.size() * per_n);
  std::vector<std::string> failures(rows.size());
  ParallelFor(rows.size(), [&](std::size_t job) {
    const Instance& inst = instances[job / per_n];
    if (!inst.basis) return;
    const double k = std::ldexp(1.0, options.k_exponents[job % per_n]);
    const double e_bound = k * inst.feasibility;
    try {
      const PlacementResult r = BisectionPlace(
          *inst.basis, *inst.transfer,
          BisectionConfig{e_bound, options.approximation_error,
                          options.accuracy});
      rows[job] = ExperimentRow{inst.n,       k,         e_bound,
                                r.actuators.size(), r.epsilon, r.bound_f,
                                r.exact_energy, inst.seed};
    } catch (const Error& e) {
      failures[job] = e.what();
    }
  });

  std::vector<ExperimentRow> out;
  for (std::size_t job = 0; job < rows.size(); ++job) {
    if (rows[job]) {
      out.push_back(*rows[job]);
    } else if (!failures[job].empty()) {
      log << "skipped row n=" << instances[job / per_n].n
          << " k=2^" << options.k_exponents[job % per_n] << ": "
          << failures[job] << "\n";
    }
  }
  return out;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Minimal actuator placement under a minimum-energy bound"};
  app.require_subcommand(1);

  std::string out_path;

  ProblemArgs place_args;
  double place_c = 0.1;
  double place_a = 1.0;
  bool verify = false;
  auto* place = app.add_subcommand(
      "place", "choose actuators by greedy cover with epsilon bisection");
  place_args.Register(place);
  place->add_option("--c", place_c, "approximation error c")
      ->check(CLI::PositiveNumber);
  place->add_option("--a", place_a, "bisection accuracy a")
      ->check(CLI::PositiveNumber);
  place->add_flag("--verify", verify,
                  "check |Delta| <= F * l* by brute force (n <= 10)");
  place->add_option("--out", out_path, "write JSON here instead of stdout");

  std::string n_list;
  std::string k_exponents = "1..25";
  SweepOptions sweep_opts;
  bool no_self_loops = false;
  auto* sweep = app.add_subcommand(
      "sweep", "energy-bound sweep over random networks, CSV output");
  sweep->add_option("--n-list", n_list, "network sizes, comma separated")
      ->required();
  sweep->add_option("--k-exponents", k_exponents,
                    "exponents j of k = 2^j, as lo..hi or a list");
  sweep->add_option("--seed", sweep_opts.seed, "base seed");
  sweep->add_option("--c", sweep_opts.approximation_error,
                    "approximation error c")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--a", sweep_opts.accuracy, "bisection accuracy a")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--no-self-loops", no_self_loops,
                  "never place edges on the diagonal");
  sweep->add_option("--out", out_path, "write CSV here instead of stdout");

  std::size_t chain_n = 5;
  double t0 = 0.0;
  double t1 = 1.0;
  auto* chain = app.add_subcommand("chain", "emit an integrator chain system");
  chain->add_option("--n", chain_n, "number of nodes")->check(
      CLI::PositiveNumber);
  chain->add_option("--t0", t0, "horizon start");
  chain->add_option("--t1", t1, "horizon end");
  chain->add_option("--out", out_path, "write JSON here instead of stdout");

  std::size_t er_n = 0;
  std::uint64_t er_seed = 1;
  bool er_no_self_loops = false;
  auto* er = app.add_subcommand(
      "er", "emit a stabilized Erdos-Renyi system (infinite horizon)");
  er->add_option("--n", er_n, "number of nodes")->required();
  er->add_option("--seed", er_seed, "generator seed");
  er->add_flag("--no-self-loops", er_no_self_loops,
               "never place edges on the diagonal");
  er->add_option("--out", out_path, "write JSON here instead of stdout");

  ProblemArgs oracle_args;
  std::optional<double> oracle_eps;
  auto* oracle = app.add_subcommand(
      "oracle", "exhaustive minimum actuator sets (n <= 20)");
  oracle_args.Register(oracle);
  oracle->add_option("--epsilon", oracle_eps,
                     "solve the regularized problem at this epsilon");
  oracle->add_option("--out", out_path, "write JSON here instead of stdout");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*place) {
      return CmdPlace(place_args, place_c, place_a, verify, out_path, out,
                      err);
    }
    if (*oracle) return CmdOracle(oracle_args, oracle_eps, out_path, out);
    if (*chain) {
      Emit(SystemToJson(IntegratorChain(chain_n, FiniteHorizon{t0, t1})) +
               "\n",
           out_path, out);
      return kExitOk;
    }
    if (*er) {
      Emit(SystemToJson(ErdosRenyiSystem(
               er_n, er_seed, RandomNetworkOptions{!er_no_self_loops})) +
               "\n",
           out_path, out);
      return kExitOk;
    }
    if (*sweep) {
      for (const auto& item : SplitList(n_list)) {
        const long n = std::stol(item);
        if (n < 2) throw Error(ErrorCode::kInvalidInput, "--n-list sizes >= 2");
        sweep_opts.sizes.push_back(static_cast<std::size_t>(n));
      }
      sweep_opts.k_exponents = ParseExponents(k_exponents);
      sweep_opts.network.self_loops = !no_self_loops;
      const auto rows = RunSweep(sweep_opts, err);
      std::ostringstream csv;
      csv << kSweepHeader << "\n";
      for (const auto& row : rows) csv << FormatRow(row) << "\n";
      Emit(csv.str(), out_path, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace gplace::cli
