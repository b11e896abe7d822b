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
#include <limits>
#include <stdexcept>
#include <string>

namespace fedmab {

GapProfile ComputeGapProfile(int num_agents, int num_arms,
                             std::span<const double> means) {
  if (num_agents < 1 || num_arms < 2 ||
      means.size() != static_cast<size_t>(num_agents) * num_arms) {
    throw std::invalid_argument("gap profile: malformed mean matrix");
  }
  GapProfile profile;
  profile.global_means.assign(num_arms, 0.0);
  for (int k = 0; k < num_arms; ++k) {
    double sum = 0.0;
    for (int i = 0; i < num_agents; ++i) {
      sum += means[static_cast<size_t>(i) * num_arms + k];
    }
    profile.global_means[k] = sum / num_agents;
  }
  const auto& mu = profile.global_means;
  profile.best_arm = static_cast<int>(
      std::max_element(mu.begin(), mu.end()) - mu.begin());
  const double best = mu[profile.best_arm];
  profile.gaps.resize(num_arms);
  profile.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < num_arms; ++k) {
    profile.gaps[k] = best - mu[k];
    if (k == profile.best_arm) continue;
    if (profile.gaps[k] <= 0.0) {
      throw std::invalid_argument(
          "gap profile: best global mean shared by arms " +
          std::to_string(profile.best_arm) + " and " + std::to_string(k));
    }
    profile.min_gap = std::min(profile.min_gap, profile.gaps[k]);
  }
  return profile;
}

EnvSpec::EnvSpec(int num_agents, int num_arms, int64_t horizon,
                 RewardKind kind, std::vector<double> means)
    : num_agents_(num_agents),
      num_arms_(num_arms),
      horizon_(horizon),
      reward_kind_(kind),
      means_(std::move(means)) {
  if (num_agents_ < 2) throw std::invalid_argument("env: need M >= 2");
  if (num_arms_ < 2) throw std::invalid_argument("env: need K >= 2");
  if (horizon_ < 1) throw std::invalid_argument("env: need T >= 1");
  if (means_.size() != static_cast<size_t>(num_agents_) * num_arms_) {
    throw std::invalid_argument("env: mean matrix must be M x K");
  }
  for (double m : means_) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw std::invalid_argument("env: arm mean outside [0, 1]");
    }
  }
  homogeneous_ = true;
  for (int i = 1; i < num_agents_ && homogeneous_; ++i) {
    homogeneous_ = std::equal(agent_means(i).begin(), agent_means(i).end(),
                              agent_means(0).begin());
  }
  gaps_ = ComputeGapProfile(num_agents_, num_arms_, means_);
}

int EnvSpec::LocalBestArm(int agent) const {
  auto row = agent_means(agent);
  return static_cast<int>(std::max_element(row.begin(), row.end()) -
                          row.begin());
}

EnvSpec BuildEnv(const EnvConfig& config, uint64_t rng_seed) {
  const int m = config.num_agents;
  const int k = config.num_arms;
  if (m < 2) throw std::invalid_argument("env: need M >= 2");
  if (k < 2) throw std::invalid_argument("env: need K >= 2");
  std::vector<double> means(static_cast<size_t>(m) * k);
  switch (config.mean_mode) {
    case MeanMode::kExplicit: {
      const auto& rows = config.means;
      if (rows.size() != 1 && rows.size() != static_cast<size_t>(m)) {
        throw std::invalid_argument(
            "env: explicit means need 1 or M rows");
      }
      for (int i = 0; i < m; ++i) {
        const auto& row = rows.size() == 1 ? rows[0] : rows[i];
        if (row.size() != static_cast<size_t>(k)) {
          throw std::invalid_argument("env: explicit mean row must have K entries");
        }
        std::copy(row.begin(), row.end(),
                  means.begin() + static_cast<ptrdiff_t>(i) * k);
      }
      break;
    }
    case MeanMode::kRandomHomogeneous: {
      RandomStream rng(rng_seed);
      for (int a = 0; a < k; ++a) means[a] = rng.Uniform();
      for (int i = 1; i < m; ++i) {
        std::copy(means.begin(), means.begin() + k,
                  means.begin() + static_cast<ptrdiff_t>(i) * k);
      }
      break;
    }
    case MeanMode::kRandomHeterogeneous: {
      RandomStream rng(rng_seed);
      for (double& x : means) x = rng.Uniform();
      break;
    }
  }
  return EnvSpec(m, k, config.horizon, config.reward_kind, std::move(means));
}

double SampleReward(const EnvSpec& env, int agent, int arm,
                    RandomStream& rng) {
  if (agent < 0 || agent >= env.num_agents() || arm < 0 ||
      arm >= env.num_arms()) {
    throw std::out_of_range("sample_reward: index out of range");
  }
  const double mu = env.mean(agent, arm);
  if (env.reward_kind() == RewardKind::kBernoulli) {
    return rng.Uniform() < mu ? 1.0 : 0.0;
  }
  const double w = std::min(mu, 1.0 - mu);
  return mu - w + 2.0 * w * rng.Uniform();
}

}  // namespace fedmab
