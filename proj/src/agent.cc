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

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fedmab/protocols.h"

namespace fedmab {

AgentState::AgentState(int agent_id, int num_arms)
    : id(agent_id), active(num_arms), arms(num_arms) {
  std::iota(active.begin(), active.end(), 0);
}

std::vector<double> AgentState::HistoricalMeans() const {
  std::vector<double> out(arms.size());
  for (size_t k = 0; k < arms.size(); ++k) out[k] = arms[k].historical.value;
  return out;
}

int AgentState::LocalBestArm() const {
  int best = active.front();
  for (int k : active) {
    if (arms[k].historical.value > arms[best].historical.value) best = k;
  }
  return best;
}

ScheduleParams MakeScheduleParams(const EnvSpec& env,
                                  const AlgorithmParams& algo,
                                  int agent_pool) {
  ScheduleParams p;
  p.num_agents = agent_pool;
  p.num_arms = env.num_arms();
  p.horizon = env.horizon();
  p.privacy = algo.privacy;
  p.participation = algo.participation;
  p.variant = algo.variant;
  p.rounds = algo.rounds;
  p.min_gap = algo.min_gap.value_or(env.gaps().min_gap);
  return p;
}

bool ExploreEpoch(AgentState& agent, const EnvSpec& env, const EpochPlan& plan,
                  int participants, const PrivacyParams& privacy,
                  RandomStream& rng, RegretTrace& trace, int64_t start_slot) {
  if (plan.new_samples < 1) {
    throw std::invalid_argument("explore: epoch needs new samples");
  }
  const int64_t horizon = env.horizon();
  const int64_t per_arm = plan.new_samples;
  const bool complete =
      start_slot + static_cast<int64_t>(agent.active.size()) * per_arm <= horizon;
  int64_t slot = start_slot;
  for (int k : agent.active) {
    const int64_t count = std::clamp<int64_t>(horizon - slot, 0, per_arm);
    trace.RecordPulls(agent.id, k, slot, count);
    slot += per_arm;
  }
  if (!complete) return false;

  for (int k : agent.active) {
    double sum = 0.0;
    for (int64_t n = 0; n < per_arm; ++n) {
      sum += SampleReward(env, agent.id, k, rng);
    }
    ArmEstimate& est = agent.arms[k];
    est.epoch_count = per_arm;
    est.raw_mean = sum / static_cast<double>(per_arm);
    est.private_mean =
        PrivatizeEpochMean(est.raw_mean, participants, privacy, per_arm, rng);
    est.historical = UpdateHistoricalMean(est.historical, plan.cumulative_samples,
                                          est.private_mean);
  }
  return true;
}

EliminationOutcome AggregateAndEliminate(
    std::span<const std::vector<double>> contributions,
    std::span<const int> active, double confidence,
    std::span<const double> weights) {
  if (contributions.empty()) {
    throw std::invalid_argument("aggregate: no contributions");
  }
  if (active.empty()) throw std::invalid_argument("aggregate: empty active set");
  if (!weights.empty() && weights.size() != contributions.size()) {
    throw std::invalid_argument("aggregate: one weight per contribution");
  }
  EliminationOutcome out;
  out.aggregated.reserve(active.size());
  for (int k : active) {
    double value = 0.0;
    for (size_t c = 0; c < contributions.size(); ++c) {
      if (static_cast<size_t>(k) >= contributions[c].size()) {
        throw std::invalid_argument("aggregate: contribution misses an active arm");
      }
      value += weights.empty() ? contributions[c][k]
                               : weights[c] * contributions[c][k];
    }
    if (weights.empty()) value /= static_cast<double>(contributions.size());
    out.aggregated.push_back(value);
  }
  out.max_mean = *std::max_element(out.aggregated.begin(), out.aggregated.end());
  for (size_t j = 0; j < active.size(); ++j) {
    if (out.max_mean - out.aggregated[j] >= 2.0 * confidence) {
      out.eliminated.push_back(active[j]);
    } else {
      out.survivors.push_back(active[j]);
    }
  }
  return out;
}

}  // namespace fedmab
