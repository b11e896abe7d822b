//
// Copyright 2026 The fedmab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedmab/bandit_env.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace fedmab {
namespace {

EnvConfig RandomConfig(int m, int k, MeanMode mode) {
  EnvConfig c;
  c.num_agents = m;
  c.num_arms = k;
  c.horizon = 1000;
  c.mean_mode = mode;
  return c;
}

EnvSpec ConstantEnv(double mu) {
  return EnvSpec(2, 2, 10, RewardKind::kBernoulli, {mu, 0.0, mu, 0.0});
}

TEST(BuildEnvTest, RandomHomogeneousRowsAreIdentical) {
  const EnvSpec env =
      BuildEnv(RandomConfig(50, 100, MeanMode::kRandomHomogeneous), 7);
  EXPECT_TRUE(env.homogeneous());
  for (int i = 1; i < 50; ++i) {
    for (int k = 0; k < 100; ++k) EXPECT_EQ(env.mean(i, k), env.mean(0, k));
  }
  for (double mu : env.means()) {
    EXPECT_GE(mu, 0.0);
    EXPECT_LT(mu, 1.0);
  }
}

TEST(BuildEnvTest, MinGapMatchesBruteForceScan) {
  const EnvSpec env =
      BuildEnv(RandomConfig(50, 100, MeanMode::kRandomHomogeneous), 7);
  std::vector<double> row(env.agent_means(0).begin(), env.agent_means(0).end());
  double best = -1.0;
  for (double mu : row) best = std::max(best, mu);
  double brute = 2.0;
  for (size_t a = 0; a < row.size(); ++a) {
    for (size_t b = 0; b < row.size(); ++b) {
      if (row[a] == best && row[b] != best) brute = std::min(brute, row[a] - row[b]);
    }
  }
  // Averaging 50 identical rows may move the last bit.
  EXPECT_NEAR(env.gaps().min_gap, brute, 1e-12);
  EXPECT_EQ(row[env.gaps().best_arm], best);
}

TEST(BuildEnvTest, HeterogeneousGlobalMeansUseTheSameArithmetic) {
  const EnvSpec env =
      BuildEnv(RandomConfig(7, 9, MeanMode::kRandomHeterogeneous), 11);
  EXPECT_FALSE(env.homogeneous());
  for (int k = 0; k < 9; ++k) {
    double sum = 0.0;
    for (int i = 0; i < 7; ++i) sum += env.mean(i, k);
    EXPECT_EQ(env.gaps().global_means[k], sum / 7);
  }
}

TEST(BuildEnvTest, SameSeedSameMeansDifferentSeedDifferentMeans) {
  const auto cfg = RandomConfig(3, 5, MeanMode::kRandomHeterogeneous);
  const EnvSpec a = BuildEnv(cfg, 3);
  const EnvSpec b = BuildEnv(cfg, 3);
  const EnvSpec c = BuildEnv(cfg, 4);
  EXPECT_TRUE(std::equal(a.means().begin(), a.means().end(), b.means().begin()));
  EXPECT_FALSE(std::equal(a.means().begin(), a.means().end(), c.means().begin()));
}

TEST(BuildEnvTest, ExplicitSingleRowIsBroadcast) {
  EnvConfig c = RandomConfig(3, 3, MeanMode::kExplicit);
  c.means = {{0.9, 0.5, 0.4}};
  const EnvSpec env = BuildEnv(c, 0);
  EXPECT_TRUE(env.homogeneous());
  EXPECT_EQ(env.mean(2, 1), 0.5);
}

TEST(BuildEnvTest, RejectsAllEqualMeans) {
  EnvConfig c = RandomConfig(2, 3, MeanMode::kExplicit);
  c.means = {{0.5, 0.5, 0.5}};
  EXPECT_THROW(BuildEnv(c, 0), std::invalid_argument);
}

TEST(BuildEnvTest, RejectsSymmetricHeterogeneousTie) {
  EnvConfig c = RandomConfig(2, 2, MeanMode::kExplicit);
  c.means = {{0.9, 0.1}, {0.1, 0.9}};
  EXPECT_THROW(BuildEnv(c, 0), std::invalid_argument);
}

TEST(EnvSpecTest, RejectsBadShapesAndMeans) {
  EXPECT_THROW(EnvSpec(1, 2, 10, RewardKind::kBernoulli, {0.1, 0.2}),
               std::invalid_argument);
  EXPECT_THROW(EnvSpec(2, 1, 10, RewardKind::kBernoulli, {0.1, 0.2}),
               std::invalid_argument);
  EXPECT_THROW(EnvSpec(2, 2, 0, RewardKind::kBernoulli, {0.1, 0.2, 0.1, 0.2}),
               std::invalid_argument);
  EXPECT_THROW(EnvSpec(2, 2, 10, RewardKind::kBernoulli, {0.1, 1.2, 0.1, 0.2}),
               std::invalid_argument);
}

TEST(GapProfileTest, HomogeneousDirectSubtraction) {
  const std::vector<double> means = {0.9, 0.5, 0.4, 0.9, 0.5, 0.4};
  const GapProfile p = ComputeGapProfile(2, 3, means);
  EXPECT_EQ(p.best_arm, 0);
  EXPECT_EQ(p.gaps[0], 0.0);
  EXPECT_DOUBLE_EQ(p.gaps[1], 0.4);
  EXPECT_DOUBLE_EQ(p.gaps[2], 0.5);
  EXPECT_DOUBLE_EQ(p.min_gap, 0.4);
}

TEST(GapProfileTest, HeterogeneousAverage) {
  const std::vector<double> means = {0.8, 0.2, 0.4, 0.6};
  const GapProfile p = ComputeGapProfile(2, 2, means);
  EXPECT_DOUBLE_EQ(p.global_means[0], 0.6);
  EXPECT_DOUBLE_EQ(p.global_means[1], 0.4);
  EXPECT_EQ(p.best_arm, 0);
  EXPECT_DOUBLE_EQ(p.min_gap, 0.2);
}

TEST(GapProfileTest, HomogeneousEqualsSingleRow) {
  const std::vector<double> row = {0.3, 0.7, 0.1, 0.65};
  std::vector<double> matrix;
  for (int i = 0; i < 4; ++i) matrix.insert(matrix.end(), row.begin(), row.end());
  const GapProfile one = ComputeGapProfile(1, 4, row);
  const GapProfile many = ComputeGapProfile(4, 4, matrix);
  EXPECT_EQ(one.best_arm, many.best_arm);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(one.gaps[k], many.gaps[k]);
}

TEST(SampleRewardTest, BernoulliBoundaryMeans) {
  RandomStream rng(1);
  const EnvSpec one = ConstantEnv(1.0);
  const EnvSpec zero = EnvSpec(2, 2, 10, RewardKind::kBernoulli,
                               {0.0, 1.0, 0.0, 1.0});
  for (int n = 0; n < 1000; ++n) {
    EXPECT_EQ(SampleReward(one, 0, 0, rng), 1.0);
    EXPECT_EQ(SampleReward(zero, 1, 0, rng), 0.0);
  }
}

TEST(SampleRewardTest, BernoulliMeanWithinHoeffdingBand) {
  const EnvSpec env = ConstantEnv(0.3);
  RandomStream rng(99);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += SampleReward(env, 0, 0, rng);
  EXPECT_NEAR(sum / n, 0.3, 0.01);
}

TEST(SampleRewardTest, BoundedUniformStaysInSupportAndCentres) {
  const EnvSpec env(2, 2, 10, RewardKind::kBoundedUniform, {0.7, 0.2, 0.7, 0.2});
  RandomStream rng(5);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = SampleReward(env, 1, 0, rng);
    ASSERT_GE(x, 0.4);
    ASSERT_LE(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / n, 0.7, 0.01);
}

TEST(SampleRewardTest, IdenticalSeedsGiveIdenticalSequences) {
  const EnvSpec env = ConstantEnv(0.45);
  RandomStream a(17);
  RandomStream b(17);
  for (int i = 0; i < 500; ++i) {
    EXPECT_EQ(SampleReward(env, 0, 0, a), SampleReward(env, 0, 0, b));
  }
}

TEST(SampleRewardTest, RejectsBadIndices) {
  const EnvSpec env = ConstantEnv(0.5);
  RandomStream rng(1);
  EXPECT_THROW(SampleReward(env, 2, 0, rng), std::out_of_range);
  EXPECT_THROW(SampleReward(env, 0, -1, rng), std::out_of_range);
}

}  // namespace
}  // namespace fedmab
