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
#include "fedmab/relay.h"
#include "run_common.h"

namespace fedmab {

RunResult RunDecentralized(const EnvSpec& env, const Graph& graph,
                           const AlgorithmParams& algo, uint64_t seed) {
  const int m = env.num_agents();
  if (graph.vertex_count() != m) {
    throw std::invalid_argument("decentralized: graph size differs from M");
  }
  if (!graph.IsConnected()) {
    throw std::invalid_argument("decentralized: graph is disconnected");
  }
  if (algo.participation < 1.0) {
    throw std::invalid_argument(
        "decentralized: partial participation is centralized only");
  }
  EpochScheduler scheduler(MakeScheduleParams(env, algo, m));
  const int noise_agents = scheduler.params().effective_agents();

  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<AgentState> agents;
  for (int id : ids) agents.emplace_back(id, env.num_arms());
  std::vector<RandomStream> streams = internal::AgentStreams(seed, ids);

  RunResult result = internal::NewRunResult(env);
  const int64_t horizon = env.horizon();
  std::vector<int> active = agents.front().active;
  int64_t t = 0;

  while (active.size() > 1) {
    if (internal::BudgetSpent(algo, result.communication_rounds())) {
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
    for (int i = 0; i < m; ++i) {
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

    for (AgentState& a : agents) BeginObservationRound(a);
    const size_t links_before = result.ledger.entries().size();
    const GisRoundResult gis =
        RunGisRound(graph, agents, result.ledger, plan.round, t, horizon - t);
    rec.c2_links =
        static_cast<int64_t>(result.ledger.entries().size() - links_before);
    internal::RecordLocalExploit(agents, result.regret, t, gis.t_delay);
    t += gis.t_delay;
    if (!gis.completed) {
      result.horizon_exhausted = true;
      break;
    }

    // Every agent decides from its own copy of the records.
    EliminationOutcome outcome;
    for (int i = 0; i < m; ++i) {
      EliminationOutcome mine = AggregateAndEliminate(
          agents[i].records, agents[i].active, plan.confidence);
      if (i == 0) {
        outcome = std::move(mine);
      } else if (mine.aggregated != outcome.aggregated ||
                 mine.survivors != outcome.survivors) {
        throw std::logic_error("decentralized: agents disagree after GIS");
      }
    }
    if (internal::Contains(outcome.eliminated, env.gaps().best_arm)) {
      result.best_arm_eliminated = true;
    }
    rec.uploaders = ids;
    rec.t_delay = gis.t_delay;
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

}  // namespace fedmab
