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
#include <random>

#include <gtest/gtest.h>

#include "gplace/error.hpp"
#include "testing_util.hpp"

namespace gplace {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected gplace::Error";
  return ErrorCode::kInvalidInput;
}

TEST(LinearSystem, ValidatesShapeAndHorizon) {
  EXPECT_EQ(CodeOf([] { LinearSystem(Matrix::Zero(2, 3), FiniteHorizon{}); }),
            ErrorCode::kDimension);
  EXPECT_EQ(CodeOf([] {
              LinearSystem(Matrix::Zero(2, 2), FiniteHorizon{1.0, 1.0});
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              LinearSystem(Matrix::Zero(2, 2), InfiniteHorizon{});
            }),
            ErrorCode::kStability);
  EXPECT_NO_THROW(LinearSystem(-Matrix::Identity(2, 2), InfiniteHorizon{}));
}

TEST(ActuatorSet, MembershipAndIndicator) {
  ActuatorSet set(5, {3, 0});
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.members(), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(set.indicator(),
            (std::vector<bool>{true, false, false, true, false}));
  set.insert(3);
  EXPECT_EQ(set.size(), 2u);
  set.erase(0);
  EXPECT_FALSE(set.contains(0));
  EXPECT_EQ(set.With(4).members(), (std::vector<std::size_t>{3, 4}));
  EXPECT_THROW(set.insert(5), Error);
  EXPECT_EQ(ActuatorSet::FromMask(5, 0b01001), ActuatorSet(5, {0, 3}));
  EXPECT_TRUE(ActuatorSet(5, {0}).IsSubsetOf(ActuatorSet(5, {0, 3})));
  EXPECT_FALSE(ActuatorSet(5, {1}).IsSubsetOf(ActuatorSet(5, {0, 3})));
  EXPECT_EQ(ActuatorSet::Full(3).size(), 3u);
}

TEST(GramianBasis, ZeroDynamicsUnitHorizon) {
  const GramianBasis basis = BuildGramianBasis(
      LinearSystem(Matrix::Zero(2, 2), FiniteHorizon{0.0, 1.0}));
  Matrix want0 = Matrix::Zero(2, 2);
  want0(0, 0) = 1.0;
  Matrix want1 = Matrix::Zero(2, 2);
  want1(1, 1) = 1.0;
  EXPECT_LT((basis.gamma(0) - want0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((basis.gamma(1) - want1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((basis.GramianOf(ActuatorSet::Full(2)) - Matrix::Identity(2, 2))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  EXPECT_EQ(basis.GramianOf(ActuatorSet(2)), Matrix::Zero(2, 2));
}

TEST(GramianBasis, ScalarClosedForms) {
  const Matrix a = Matrix::Constant(1, 1, -1.0);
  const GramianBasis finite =
      BuildGramianBasis(LinearSystem(a, FiniteHorizon{0.0, 1.0}));
  EXPECT_NEAR(finite.gamma(0)(0, 0), (1.0 - std::exp(-2.0)) / 2.0, 1e-15);
  EXPECT_NEAR(finite.gamma(0)(0, 0), 0.432332, 1e-6);
  const GramianBasis infinite =
      BuildGramianBasis(LinearSystem(a, InfiniteHorizon{}));
  EXPECT_NEAR(infinite.gamma(0)(0, 0), 0.5, 1e-15);
}

TEST(GramianBasis, OnlyHorizonLengthMatters) {
  std::mt19937_64 rng(6);
  const Matrix a = testing::RandomMatrix(rng, 4, 4);
  const GramianBasis early =
      BuildGramianBasis(LinearSystem(a, FiniteHorizon{0.0, 0.7}));
  const GramianBasis late =
      BuildGramianBasis(LinearSystem(a, FiniteHorizon{2.0, 2.7}));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LT((early.gamma(i) - late.gamma(i)).norm(),
              1e-12 * early.gamma(i).norm());
  }
}

TEST(GramianBasis, BlockExponentialMatchesSimpsonQuadrature) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = testing::RandomStable(rng, 5, 0.1);
    const double tau = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    const GramianBasis basis =
        BuildGramianBasis(LinearSystem(a, FiniteHorizon{0.0, tau}));
    for (Eigen::Index i = 0; i < 5; ++i) {
      const Matrix want =
          testing::SimpsonGramian(a, testing::UnitDiagonal(5, i), tau, 10000);
      EXPECT_LT((basis.gamma(i) - want).norm(), 1e-6 * want.norm());
    }
  }
}

TEST(GramianBasis, InfiniteHorizonSolvesPerNodeLyapunov) {
  std::mt19937_64 rng(23);
  const Matrix a = testing::RandomStable(rng, 6);
  const GramianBasis basis =
      BuildGramianBasis(LinearSystem(a, InfiniteHorizon{}));
  for (Eigen::Index i = 0; i < 6; ++i) {
    const Matrix& g = basis.gamma(i);
    const Matrix residual =
        a * g + g * a.transpose() + testing::UnitDiagonal(6, i);
    EXPECT_LT(residual.norm(), 1e-10);
  }
}

TEST(GramianBasis, EachGammaIsNonzeroPsdAndSumsAdditively) {
  std::mt19937_64 rng(31);
  const GramianBasis basis = BuildGramianBasis(
      LinearSystem(testing::RandomMatrix(rng, 6, 6), FiniteHorizon{0.0, 1.0}));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_GT(basis.gamma(i).norm(), 0.0);
    EXPECT_GE(MinEigenvalue(basis.gamma(i)), -1e-10);
  }
  const ActuatorSet set(6, {1, 2, 5});
  const Matrix sum = basis.gamma(1) + basis.gamma(2) + basis.gamma(5);
  EXPECT_LT((basis.GramianOf(set) - sum).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GramianBasis, MonotoneInTheActuatorSet) {
  std::mt19937_64 rng(41);
  const GramianBasis basis = BuildGramianBasis(
      LinearSystem(testing::RandomStable(rng, 7), InfiniteHorizon{}));
  for (int trial = 0; trial < 200; ++trial) {
    const ActuatorSet small = testing::RandomSubset(rng, 7, 0.3);
    ActuatorSet big = small;
    for (std::size_t i : testing::RandomSubset(rng, 7, 0.4).members()) {
      big.insert(i);
    }
    EXPECT_GE(MinEigenvalue(basis.GramianOf(big) - basis.GramianOf(small)),
              -1e-10);
  }
}

TEST(GramianBasis, RejectsDimensionMismatchAndBadInputs) {
  const GramianBasis basis =
      BuildGramianBasis(IntegratorChain(3));
  EXPECT_EQ(CodeOf([&] { basis.GramianOf(ActuatorSet(4)); }),
            ErrorCode::kDimension);
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  EXPECT_EQ(CodeOf([&] {
              testing::SyntheticBasis({indefinite, Matrix::Identity(2, 2)});
            }),
            ErrorCode::kPrecondition);
}

TEST(IntegratorChain, FiveNodeMatrix) {
  const LinearSystem chain = IntegratorChain(5);
  Matrix want(5, 5);
  want << -1, 0, 0, 0, 0,  //
      1, -1, 0, 0, 0,      //
      0, 1, -1, 0, 0,      //
      0, 0, 1, -1, 0,      //
      0, 0, 0, 1, -1;
  EXPECT_EQ(chain.a(), want);
  EXPECT_EQ(std::get<FiniteHorizon>(chain.horizon()),
            (FiniteHorizon{0.0, 1.0}));
}

TEST(IntegratorChain, SmallSizes) {
  EXPECT_EQ(IntegratorChain(1).a(), Matrix::Constant(1, 1, -1.0));
  const Matrix a = IntegratorChain(3).a();
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double want = i == j ? -1.0 : (i == j + 1 ? 1.0 : 0.0);
      EXPECT_EQ(a(i, j), want);
    }
  }
  EXPECT_EQ(CodeOf([] { IntegratorChain(0); }), ErrorCode::kInvalidInput);
}

TEST(IntegratorChain, FullActuationIsControllable) {
  for (std::size_t n : {1u, 3u, 5u, 8u}) {
    const GramianBasis basis = BuildGramianBasis(IntegratorChain(n));
    EXPECT_GT(MinEigenvalue(basis.Full()), 0.0);
  }
}

TEST(Stabilize, ShiftsSpectrum) {
  Matrix a(2, 2);
  a << 1.0, 5.0, 0.0, -2.0;
  const Eigen::VectorXcd eig = Stabilize(a).eigenvalues();
  std::vector<double> re = {eig(0).real(), eig(1).real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3.1, 1e-12);
  EXPECT_NEAR(re[1], -0.1, 1e-12);
  EXPECT_EQ(Stabilize(Matrix::Zero(4, 4)), Matrix::Zero(4, 4));
}

TEST(Stabilize, RandomNetworksBecomeHurwitz) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix w = ErdosRenyiWeights(20, seed);
    if (SpectralAbscissa(w) <= 0.0) continue;
    EXPECT_LT(SpectralAbscissa(Stabilize(w)), 0.0) << "seed " << seed;
  }
}

TEST(ErdosRenyi, EdgeProbability) {
  EXPECT_NEAR(EdgeProbability(64), 2.0 * std::log(64.0) / 64.0, 1e-16);
  EXPECT_NEAR(EdgeProbability(64), 0.129965, 1e-6);
}

TEST(ErdosRenyi, DeterministicPerSeed) {
  EXPECT_EQ(ErdosRenyiWeights(30, 7), ErdosRenyiWeights(30, 7));
  EXPECT_NE(ErdosRenyiWeights(30, 7), ErdosRenyiWeights(30, 8));
  EXPECT_EQ(ErdosRenyiSystem(12, 3).a(), ErdosRenyiSystem(12, 3).a());
  EXPECT_TRUE(IsInfinite(ErdosRenyiSystem(12, 3).horizon()));
  EXPECT_THROW(ErdosRenyiWeights(1, 0), Error);
}

TEST(ErdosRenyi, EdgeCountConcentratesAroundBinomialMean) {
  constexpr std::size_t n = 50;
  constexpr int seeds = 200;
  const double p = EdgeProbability(n);
  const double pairs = static_cast<double>(n * (n - 1));
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const Matrix w = ErdosRenyiWeights(n, static_cast<std::uint64_t>(s));
    const Matrix off = w - Matrix(w.diagonal().asDiagonal());
    total += static_cast<double>((off.array() != 0.0).count());
  }
  const double mean = total / seeds;
  const double sd_of_mean = std::sqrt(pairs * p * (1.0 - p) / seeds);
  EXPECT_LT(std::abs(mean - pairs * p), 3.0 * sd_of_mean);
}

TEST(ErdosRenyi, WeightsLookStandardNormal) {
  std::vector<double> weights;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix w = ErdosRenyiWeights(40, s);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w.data()[i] != 0.0) weights.push_back(w.data()[i]);
    }
  }
  double mean = 0.0;
  for (double x : weights) mean += x;
  mean /= static_cast<double>(weights.size());
  double var = 0.0;
  for (double x : weights) var += (x - mean) * (x - mean);
  var /= static_cast<double>(weights.size() - 1);
  const double count = static_cast<double>(weights.size());
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(count));
  EXPECT_LT(std::abs(var - 1.0), 4.0 * std::sqrt(2.0 / count));
}

TEST(ErdosRenyi, SelfLoopsCanBeDisabled) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix w = ErdosRenyiWeights(10, s, RandomNetworkOptions{false});
    EXPECT_EQ(w.diagonal(), Vector::Zero(10));
  }
  bool any_loop = false;
  for (std::uint64_t s = 0; s < 20; ++s) {
    any_loop |= (ErdosRenyiWeights(10, s).diagonal().array() != 0.0).any();
  }
  EXPECT_TRUE(any_loop);
}

}  // namespace
}  // namespace gplace
