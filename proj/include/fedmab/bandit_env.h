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

#ifndef FEDMAB_BANDIT_ENV_H_
#define FEDMAB_BANDIT_ENV_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedmab/rng.h"

namespace fedmab {

enum class RewardKind { kBernoulli, kBoundedUniform };

enum class MeanMode { kExplicit, kRandomHomogeneous, kRandomHeterogeneous };

struct EnvConfig {
  int num_agents = 2;
  int num_arms = 2;
  int64_t horizon = 1;
  RewardKind reward_kind = RewardKind::kBernoulli;
  MeanMode mean_mode = MeanMode::kRandomHomogeneous;
  // Row-major M x K matrix, or a single row broadcast to every agent.
  // Only read in kExplicit mode.
  std::vector<std::vector<double>> means;
};

// Global (agent-averaged) view of the arm means used for scoring.
struct GapProfile {
  std::vector<double> global_means;
  int best_arm = 0;
  std::vector<double> gaps;
  double min_gap = 0.0;
};

// Computes the gap profile of an M x K mean matrix. Throws
// std::invalid_argument when the largest global mean is shared by two or
// more arms, because the minimal gap is then undefined.
GapProfile ComputeGapProfile(int num_agents, int num_arms,
                             std::span<const double> means);

// Immutable after construction; safe to share between replications.
class EnvSpec {
 public:
  EnvSpec(int num_agents, int num_arms, int64_t horizon, RewardKind kind,
          std::vector<double> means);

  int num_agents() const { return num_agents_; }
  int num_arms() const { return num_arms_; }
  int64_t horizon() const { return horizon_; }
  RewardKind reward_kind() const { return reward_kind_; }
  bool homogeneous() const { return homogeneous_; }

  double mean(int agent, int arm) const {
    return means_[static_cast<size_t>(agent) * num_arms_ + arm];
  }
  std::span<const double> agent_means(int agent) const {
    return {means_.data() + static_cast<size_t>(agent) * num_arms_,
            static_cast<size_t>(num_arms_)};
  }
  std::span<const double> means() const { return means_; }

  const GapProfile& gaps() const { return gaps_; }

  // Arm with the largest mean for one agent (lowest index on ties).
  int LocalBestArm(int agent) const;

 private:
  int num_agents_;
  int num_arms_;
  int64_t horizon_;
  RewardKind reward_kind_;
  std::vector<double> means_;
  bool homogeneous_;
  GapProfile gaps_;
};

// Validates the config and builds the environment. Random mean generation
// draws each entry uniformly on [0, 1) from a stream seeded by rng_seed.
EnvSpec BuildEnv(const EnvConfig& config, uint64_t rng_seed);

// One reward in [0, 1] for (agent, arm). Bernoulli consumes one uniform;
// bounded-uniform consumes one uniform on [mu - w, mu + w] with
// w = min(mu, 1 - mu).
double SampleReward(const EnvSpec& env, int agent, int arm,
                    RandomStream& rng);

}  // namespace fedmab

#endif  // FEDMAB_BANDIT_ENV_H_
