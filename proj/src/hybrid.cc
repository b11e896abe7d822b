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

RunResult RunHybrid(const EnvSpec& env, const ComponentLayout& layout,
                    const AlgorithmParams& algo, uint64_t seed) {
  const int m = env.num_agents();
  if (layout.agent_count() != m) {
    throw std::invalid_argument("hybrid: layout size differs from M");
  }
  if (algo.participation < 1.0) {
    throw std::invalid_argument(
        "hybrid: partial participation is centralized only");
  }
  EpochScheduler scheduler(MakeScheduleParams(env, algo, m));
  const int noise_agents = scheduler.params().effective_agents();

  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<AgentState> agents;
  for (int id : ids) agents.emplace_back(id, env.num_arms());
  std::vector<RandomStream> streams = internal::AgentStreams(seed, ids);

  std::vector<double> weights;
  std::vector<int> sinks;
  std::vector<std::vector<int>> next_hops;
  for (const Component& c : layout.components) {
    if (algo.hybrid_weighting == HybridWeighting::kSizeWeighted) {
      weights.push_back(static_cast<double>(c.members.size()) / m);
    }
    sinks.push_back(c.global_sink());
    next_hops.push_back(SinkNextHops(c));
  }

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

    const size_t links_before = result.ledger.entries().size();
    int delay = 0;
    bool collected = true;
    for (const Component& c : layout.components) {
      const SacRoundResult sac =
          RunSinkCollection(c, result.ledger, plan.round, t, horizon - t);
      delay = std::max(delay, sac.slots);
      collected &= sac.completed;
    }
    rec.c2_links =
        static_cast<int64_t>(result.ledger.entries().size() - links_before);
    internal::RecordLocalExploit(agents, result.regret, t, delay);
    t += delay;
    if (!collected) {
      result.horizon_exhausted = true;
      break;
    }

    // Each sink averages its component; the server combines the sinks.
    std::vector<std::vector<double>> component_means;
    for (const Component& c : layout.components) {
      std::vector<double> sum(env.num_arms(), 0.0);
      for (int id : c.members) {
        const std::vector<double> own = agents[id].HistoricalMeans();
        for (size_t k = 0; k < sum.size(); ++k) sum[k] += own[k];
      }
      for (double& v : sum) v /= static_cast<double>(c.members.size());
      component_means.push_back(std::move(sum));
    }
    EliminationOutcome outcome = AggregateAndEliminate(
        component_means, active, plan.confidence, weights);

    const int64_t slot = t - 1;
    for (int sink : sinks) {
      result.ledger.Record(plan.round, slot, LinkKind::kServerAgent,
                           kServerEndpoint, sink);
    }
    for (int sink : sinks) {
      result.ledger.Record(plan.round, slot, LinkKind::kServerAgent,
                           kServerEndpoint, sink);
    }
    for (size_t q = 0; q < layout.components.size(); ++q) {
      const Component& c = layout.components[q];
      for (size_t v = 0; v < c.members.size(); ++v) {
        const int hop = next_hops[q][v];
        if (hop < 0) continue;
        result.ledger.Record(plan.round, slot, LinkKind::kAgentAgent,
                             std::min(c.members[v], c.members[hop]),
                             std::max(c.members[v], c.members[hop]));
        ++rec.c2_links;
      }
    }
    rec.c1_links = 2 * static_cast<int64_t>(sinks.size());

    if (internal::Contains(outcome.eliminated, env.gaps().best_arm)) {
      result.best_arm_eliminated = true;
    }
    rec.uploaders = sinks;
    rec.t_delay = delay;
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
