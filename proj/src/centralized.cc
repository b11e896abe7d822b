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

#include <numeric>
#include <stdexcept>

#include "fedmab/protocols.h"
#include "run_common.h"

namespace fedmab {
namespace {

// N agents of the pool, uniformly without replacement, ascending.
std::vector<int> SampleUploaders(std::span<const int> pool, int n,
                                 RandomStream& server) {
  std::vector<int> ids(pool.begin(), pool.end());
  if (n >= static_cast<int>(ids.size())) return ids;
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(server.Below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(n);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Elimination driven by a server over `pool`. With `communicate` false the
// pool is a lone agent and no links are charged.
RunResult CentralizedCore(const EnvSpec& env, const AlgorithmParams& algo,
                          uint64_t seed, std::span<const int> pool,
                          bool communicate) {
  const int pool_size = static_cast<int>(pool.size());
  EpochScheduler scheduler(MakeScheduleParams(env, algo, pool_size));
  const int participants = scheduler.params().participants();
  const int noise_agents = scheduler.params().effective_agents();

  std::vector<AgentState> agents;
  for (int id : pool) agents.emplace_back(id, env.num_arms());
  std::vector<RandomStream> streams = internal::AgentStreams(seed, pool);
  RandomStream server = MakeStream(seed, StreamTag::kServer);

  RunResult result = internal::NewRunResult(env);
  const int64_t horizon = env.horizon();
  std::vector<int> active = agents.front().active;
  int64_t t = 0;

  while (active.size() > 1) {
    if (internal::BudgetSpent(algo, result.communication_rounds())) {
      // The maximum always survives, so argmax over the last aggregate.
      const RoundRecord& last = result.rounds.back();
      result.survivor = internal::ArgmaxArm(last.active_before, last.aggregated);
      break;
    }
    if (t >= horizon) {
      result.horizon_exhausted = true;
      break;
    }
    const EpochPlan plan = scheduler.Next(static_cast<int>(active.size()));
    bool complete = true;
    for (size_t i = 0; i < agents.size(); ++i) {
      complete &= ExploreEpoch(agents[i], env, plan, noise_agents,
                               algo.privacy, streams[i], result.regret, t);
    }
    if (!complete) {
      result.horizon_exhausted = true;
      t = horizon;
      break;
    }
    RoundRecord rec;
    internal::FillPlan(rec, plan, active, t);
    t += static_cast<int64_t>(active.size()) * plan.new_samples;

    rec.uploaders = SampleUploaders(pool, participants, server);
    std::vector<std::vector<double>> uploads;
    for (int id : rec.uploaders) {
      const auto it = std::find(pool.begin(), pool.end(), id);
      uploads.push_back(agents[it - pool.begin()].HistoricalMeans());
    }
    EliminationOutcome outcome =
        AggregateAndEliminate(uploads, active, plan.confidence);

    if (communicate) {
      const int64_t slot = t - 1;
      for (int id : rec.uploaders) {
        result.ledger.Record(plan.round, slot, LinkKind::kServerAgent,
                             kServerEndpoint, id);
      }
      for (int id : pool) {
        result.ledger.Record(plan.round, slot, LinkKind::kServerAgent,
                             kServerEndpoint, id);
      }
      rec.c1_links = static_cast<int64_t>(rec.uploaders.size() + pool.size());
    }
    if (internal::Contains(outcome.eliminated, env.gaps().best_arm)) {
      result.best_arm_eliminated = true;
    }
    internal::FillOutcome(rec, std::move(outcome));
    rec.end_slot = t;
    active = rec.active_after;
    for (AgentState& a : agents) a.active = active;
    result.active_sizes.push_back({t, static_cast<int>(active.size())});
    result.rounds.push_back(std::move(rec));
  }
  if (active.size() == 1) result.survivor = active.front();
  internal::FinishRun(result, agents, t, horizon);
  return result;
}

}  // namespace

RunResult RunCentralized(const EnvSpec& env, const AlgorithmParams& algo,
                         uint64_t seed) {
  std::vector<int> pool(env.num_agents());
  std::iota(pool.begin(), pool.end(), 0);
  return CentralizedCore(env, algo, seed, pool, /*communicate=*/true);
}

RunResult RunIsolatedAgent(const EnvSpec& env, int agent,
                           const AlgorithmParams& algo, uint64_t seed) {
  if (agent < 0 || agent >= env.num_agents()) {
    throw std::out_of_range("isolated agent: bad agent index");
  }
  AlgorithmParams solo = algo;
  solo.participation = 1.0;
  const int pool[] = {agent};
  return CentralizedCore(env, solo, seed, pool, /*communicate=*/false);
}

}  // namespace fedmab
