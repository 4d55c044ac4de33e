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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gplace/error.hpp"
#include "gplace/system_io.hpp"
#include "json.hpp"
#include "testing_util.hpp"

namespace gplace {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "gramian-place");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gplace_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                               ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()
                      ->current_test_info()
                      ->name());
    fs::create_directories(dir_);
    chain_ = (dir_ / "chain.json").string();
    std::ofstream(chain_) << SystemToJson(IntegratorChain(5));
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string chain_;
};

TEST_F(CliTest, PlaceChainSelectsOneFour) {
  const Outcome r = RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1",
                            "--energy-set", "1,5", "--c", "0.001", "--a",
                            "0.001"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["actuators"], json::array({1, 4}));
  EXPECT_TRUE(doc["guarantee_holds"].get<bool>());
  EXPECT_LE(doc["energy"].get<double>(),
            1.001 * doc["energy_bound"].get<double>());
  EXPECT_NEAR(doc["energy_bound"].get<double>(), 2.1086e4, 2.1086e4 * 1e-3);
  EXPECT_EQ(doc["gain_trace"].size(), 2u);
  EXPECT_GE(doc["greedy_calls"].get<int>(), 1);
}

TEST_F(CliTest, PlaceVerifyAgainstOracle) {
  const Outcome r =
      RunCli({"place", "--system", chain_, "--x1", "0,0,0,1,0",
              "--energy-set", "1,5", "--c", "0.001", "--a", "0.001",
              "--verify"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["actuators"], json::array({1, 4}));
  EXPECT_TRUE(doc["verify"]["ratio_holds"].get<bool>());
  EXPECT_EQ(doc["verify"]["l_star"].get<int>(), 2);
}

TEST_F(CliTest, PlaceHugeBudgetAndOutFile) {
  const std::string path = (dir_ / "place.json").string();
  const Outcome r = RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1",
                            "--energy", "1e30", "--out", path});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  EXPECT_EQ(doc["actuators"], json::array({1}));
}

TEST_F(CliTest, PlaceEnergyFactorScalesTheBound) {
  const Outcome r = RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1",
                            "--energy-factor", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  const LinearSystem chain = IntegratorChain(5);
  const GramianBasis basis = BuildGramianBasis(chain);
  const double bound = FeasibilityBound(
      basis, TransferSpec::FromDirection(Vector::Ones(5)));
  EXPECT_NEAR(doc["energy_bound"].get<double>(), 2.0 * bound, 1e-9 * bound);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1",
                    "--energy", "1"})
                .code,
            cli::kExitInfeasible);
  EXPECT_EQ(RunCli({"place", "--system", (dir_ / "missing.json").string(),
                    "--x1", "1,1,1,1,1", "--energy", "1"})
                .code,
            cli::kExitBadInput);
  EXPECT_EQ(RunCli({"place", "--system", chain_, "--x1", "1,1,1",
                    "--energy", "1e6"})
                .code,
            cli::kExitBadInput);
  EXPECT_EQ(RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1"}).code,
            cli::kExitBadInput);
  EXPECT_EQ(RunCli({"place", "--system", chain_, "--x1", "1,1,1,1,1",
                    "--energy", "1e6", "--energy-factor", "2"})
                .code,
            cli::kExitBadInput);
  EXPECT_EQ(RunCli({"place", "--system", chain_, "--x1", "0,0,0,0,0",
                    "--energy", "1e6"})
                .code,
            cli::kExitBadInput);
  EXPECT_EQ(RunCli({"bogus"}).code, cli::kExitBadInput);
  std::ofstream(dir_ / "bad.json") << "{\"n\": 2, \"A\": [[1, 2], [3]]}";
  const Outcome bad = RunCli({"place", "--system",
                              (dir_ / "bad.json").string(), "--x1", "1,1",
                              "--energy", "1e6"});
  EXPECT_EQ(bad.code, cli::kExitBadInput);
  EXPECT_FALSE(bad.err.empty());
}

TEST_F(CliTest, OracleListsWitnesses) {
  const Outcome r = RunCli({"oracle", "--system", chain_, "--x1", "1,1,1,1,1",
                            "--energy-set", "1,5"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["min_cardinality"].get<int>(), 2);
  bool has_one_four = false;
  for (const json& w : doc["witnesses"]) {
    has_one_four |= w == json::array({1, 4});
  }
  EXPECT_TRUE(has_one_four);
}

TEST_F(CliTest, ChainEmitsSystemDocument) {
  const Outcome r = RunCli({"chain", "--n", "3", "--t0", "0.5", "--t1", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const LinearSystem parsed = ParseSystemJson(r.out);
  EXPECT_EQ(parsed.a(), IntegratorChain(3).a());
  const auto horizon = std::get<FiniteHorizon>(parsed.horizon());
  EXPECT_EQ(horizon.t0, 0.5);
  EXPECT_EQ(horizon.t1, 2.0);
}

TEST_F(CliTest, ErIsDeterministicAndStable) {
  const Outcome a = RunCli({"er", "--n", "12", "--seed", "3"});
  const Outcome b = RunCli({"er", "--n", "12", "--seed", "3"});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const LinearSystem parsed = ParseSystemJson(a.out);
  EXPECT_TRUE(IsInfinite(parsed.horizon()));
  EXPECT_EQ(parsed.a(), ErdosRenyiSystem(12, 3).a());
}

TEST_F(CliTest, SweepCsvIsDeterministic) {
  const std::string path = (dir_ / "sweep.csv").string();
  const std::vector<std::string> args = {"sweep", "--n-list", "8,10",
                                         "--k-exponents", "1,3,6", "--seed",
                                         "5"};
  const Outcome a = RunCli(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--out", path});
  ASSERT_EQ(RunCli(to_file).code, cli::kExitOk);
  std::stringstream file;
  file << std::ifstream(path).rdbuf();
  EXPECT_EQ(a.out, file.str());

  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, cli::kSweepHeader);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].substr(0, 4), "8,2,");
  EXPECT_EQ(rows[2].substr(0, 5), "8,64,");
  EXPECT_EQ(rows[3].substr(0, 5), "10,2,");
}

TEST(Sweep, RowsAreConsistent) {
  cli::SweepOptions options;
  options.sizes = {8};
  options.k_exponents = {1, 2, 4, 8};
  options.seed = 9;
  std::ostringstream log;
  const std::vector<cli::ExperimentRow> rows = cli::RunSweep(options, log);
  ASSERT_EQ(rows.size(), 4u);
  for (const cli::ExperimentRow& row : rows) {
    const LinearSystem system = ErdosRenyiSystem(8, row.seed);
    const GramianBasis basis = BuildGramianBasis(system);
    const double bound =
        FeasibilityBound(basis, TransferSpec::FromDirection(Vector::Ones(8)));
    EXPECT_NEAR(row.energy_bound, row.k * bound, 1e-9 * row.k * bound);
    EXPECT_GE(row.cardinality, 1u);
    EXPECT_LE(row.cardinality, 8u);
    EXPECT_LE(row.exact_energy, 1.1 * row.energy_bound);
  }
}

TEST(Sweep, FormatRowRoundTrips) {
  const cli::ExperimentRow row{32, 1024.0, 1.0 / 3.0, 4, 1e-300, 2.5, 0.1, 42};
  const std::string text = cli::FormatRow(row);
  std::istringstream in(text);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(in, field, ',')) fields.push_back(field);
  ASSERT_EQ(fields.size(), 8u);
  EXPECT_EQ(fields[0], "32");
  EXPECT_EQ(std::stod(fields[2]), 1.0 / 3.0);
  EXPECT_EQ(std::stod(fields[4]), 1e-300);
  EXPECT_EQ(fields[7], "42");
}

TEST(Sweep, InstanceSeedsDiffer) {
  EXPECT_EQ(cli::InstanceSeed(1, 32, 0), cli::InstanceSeed(1, 32, 0));
  EXPECT_NE(cli::InstanceSeed(1, 32, 0), cli::InstanceSeed(1, 32, 1));
  EXPECT_NE(cli::InstanceSeed(1, 32, 0), cli::InstanceSeed(1, 64, 0));
  EXPECT_NE(cli::InstanceSeed(1, 32, 0), cli::InstanceSeed(2, 32, 0));
}

TEST(SystemJson, RoundTripIsExact) {
  std::mt19937_64 rng(4);
  const LinearSystem finite(testing::RandomMatrix(rng, 4, 4),
                            FiniteHorizon{0.25, 1.75});
  const LinearSystem back = ParseSystemJson(SystemToJson(finite));
  EXPECT_EQ(back.a(), finite.a());
  EXPECT_EQ(std::get<FiniteHorizon>(back.horizon()),
            std::get<FiniteHorizon>(finite.horizon()));
  const LinearSystem infinite(testing::RandomStable(rng, 3),
                              InfiniteHorizon{});
  const LinearSystem back2 = ParseSystemJson(SystemToJson(infinite));
  EXPECT_EQ(back2.a(), infinite.a());
  EXPECT_TRUE(IsInfinite(back2.horizon()));
}

TEST(SystemJson, DefaultsToUnitHorizon) {
  const LinearSystem s = ParseSystemJson(R"({"n": 1, "A": [[-1]]})");
  EXPECT_EQ(std::get<FiniteHorizon>(s.horizon()), (FiniteHorizon{0.0, 1.0}));
}

TEST(SystemJson, Rejections) {
  for (const char* text : {
           "not json",
           R"({"n": 2, "A": [[1, 2], [3]]})",
           R"({"n": 3, "A": [[1, 2], [3, 4]]})",
           R"({"n": 1, "A": [["x"]]})",
           R"({"n": 1})",
           R"({"n": 1, "A": [[1]], "horizon": "sometimes"})",
           R"({"n": 1, "A": [[1]], "horizon": {"t0": 2, "t1": 1}})",
           R"({"n": 1, "A": [[1e999]]})",
       }) {
    try {
      ParseSystemJson(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidInput) << text;
    }
  }
  EXPECT_THROW(LoadSystemJson("/nonexistent/system.json"), Error);
}

}  // namespace
}  // namespace gplace
