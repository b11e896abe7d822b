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

#ifndef FEDMAB_SRC_RUN_COMMON_H_
#define FEDMAB_SRC_RUN_COMMON_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "fedmab/protocols.h"

namespace fedmab::internal {

inline RunResult NewRunResult(const EnvSpec& env) {
  return RunResult{
      RegretTrace(env.gaps().gaps, env.num_agents(), env.horizon()),
      CommLedger{}, {}, {{0, env.num_arms()}}};
}

inline std::vector<RandomStream> AgentStreams(uint64_t seed,
                                              std::span<const int> ids) {
  std::vector<RandomStream> streams;
  streams.reserve(ids.size());
  for (int id : ids) {
    streams.push_back(MakeStream(seed, StreamTag::kAgent,
                                 static_cast<uint64_t>(id)));
  }
  return streams;
}

// Every agent pulls its own empirical best arm for `count` slots.
inline void RecordLocalExploit(std::span<const AgentState> agents,
                               RegretTrace& trace, int64_t start,
                               int64_t count) {
  for (const AgentState& a : agents) {
    trace.RecordPulls(a.id, a.LocalBestArm(), start, count);
  }
}

inline int ArgmaxArm(std::span<const int> active,
                     std::span<const double> aggregated) {
  size_t best = 0;
  for (size_t j = 1; j < active.size(); ++j) {
    if (aggregated[j] > aggregated[best]) best = j;
  }
  return active[best];
}

inline bool BudgetSpent(const AlgorithmParams& algo, int rounds_done) {
  return algo.variant == ScheduleVariant::kFixedRounds &&
         rounds_done >= algo.rounds;
}

inline bool Contains(std::span<const int> xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Survivor exploitation to the horizon by every agent in `agents`.
inline void FinishRun(RunResult& result, std::span<const AgentState> agents,
                      int64_t t, int64_t horizon) {
  if (result.survivor >= 0 && t < horizon) {
    for (const AgentState& a : agents) {
      result.regret.RecordPulls(a.id, result.survivor, t, horizon - t);
    }
    result.exploit_tail = horizon - t;
    t = horizon;
  }
  result.time_used = t;
}

inline void FillPlan(RoundRecord& rec, const EpochPlan& plan,
                     std::span<const int> active, int64_t start) {
  rec.round = plan.round;
  rec.target_gap = plan.target_gap;
  rec.cumulative_samples = plan.cumulative_samples;
  rec.new_samples = plan.new_samples;
  rec.confidence = plan.confidence;
  rec.active_before.assign(active.begin(), active.end());
  rec.start_slot = start;
}

inline void FillOutcome(RoundRecord& rec, EliminationOutcome outcome) {
  rec.aggregated = std::move(outcome.aggregated);
  rec.max_mean = outcome.max_mean;
  rec.eliminated = std::move(outcome.eliminated);
  rec.active_after = std::move(outcome.survivors);
}

}  // namespace fedmab::internal

#endif  // FEDMAB_SRC_RUN_COMMON_H_
