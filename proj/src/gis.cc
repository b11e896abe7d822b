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
#include <deque>
#include <stdexcept>
#include <utility>

#include "fedmab/relay.h"

namespace fedmab {
namespace {

bool Holds(const std::vector<int>& sorted, int label) {
  return std::binary_search(sorted.begin(), sorted.end(), label);
}

bool AllSynced(std::span<const AgentState> agents) {
  for (const AgentState& a : agents) {
    if (a.observation_list.size() != agents.size()) return false;
  }
  return true;
}

}  // namespace

void BeginObservationRound(AgentState& agent) {
  agent.observation_list.assign(1, agent.id);
  agent.records.clear();
  agent.records.resize(agent.id + 1);
  agent.records[agent.id] = agent.HistoricalMeans();
}

GisRoundResult RunGisRound(const Graph& graph, std::span<AgentState> agents,
                           CommLedger& ledger, int round, int64_t start_slot,
                           int64_t max_slots,
                           std::vector<GisMessage>* transcript) {
  const int m = graph.vertex_count();
  if (static_cast<int>(agents.size()) != m) {
    throw std::invalid_argument("gis: one agent per vertex");
  }
  for (int i = 0; i < m; ++i) {
    if (agents[i].id != i) throw std::invalid_argument("gis: agent ids 0..M-1");
    agents[i].records.resize(m);
  }

  GisRoundResult result;
  for (int n = 1;; ++n) {
    if (AllSynced(agents)) {
      result.completed = true;
      result.t_delay = n - 1;
      return result;
    }
    if (n - 1 >= max_slots) {
      result.t_delay = n - 1;
      return result;
    }
    if (n > m) {
      throw std::runtime_error("gis: no synchronization within M slots");
    }

    // Lists as advertised at the start of the slot.
    std::vector<std::vector<int>> adv(m);
    for (int i = 0; i < m; ++i) adv[i] = agents[i].observation_list;
    if (transcript != nullptr) {
      for (int i = 0; i < m; ++i) {
        for (int j : graph.neighbors(i)) {
          transcript->push_back({GisMessageKind::kAdv, i, j, adv[i], {}, n});
        }
      }
    }

    // requests[i]: (provider, labels) with each missing label asked of the
    // lowest-index neighbor advertising it.
    std::vector<std::vector<std::pair<int, std::vector<int>>>> requests(m);
    for (int i = 0; i < m; ++i) {
      auto& mine = requests[i];
      for (int label = 0; label < m; ++label) {
        if (Holds(adv[i], label)) continue;
        for (int j : graph.neighbors(i)) {
          if (!Holds(adv[j], label)) continue;
          auto it = std::find_if(mine.begin(), mine.end(),
                                 [j](const auto& r) { return r.first == j; });
          if (it == mine.end()) {
            mine.push_back({j, {}});
            it = mine.end() - 1;
          }
          it->second.push_back(label);
          break;
        }
      }
      std::sort(mine.begin(), mine.end());
    }

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i) {
      for (const auto& [j, labels] : requests[i]) {
        if (transcript != nullptr) {
          transcript->push_back({GisMessageKind::kReq, i, j, labels, {}, n});
        }
        GisMessage data{GisMessageKind::kData, j, i, labels, {}, n};
        for (int label : labels) {
          // Records a provider advertised are never rewritten this round.
          agents[i].records[label] = agents[j].records[label];
          if (transcript != nullptr) {
            data.records.push_back(agents[j].records[label]);
          }
        }
        if (transcript != nullptr) transcript->push_back(std::move(data));
        pairs.emplace_back(std::min(i, j), std::max(i, j));
      }
    }
    for (int i = 0; i < m; ++i) {
      std::vector<int>& obs = agents[i].observation_list;
      for (const auto& [j, labels] : requests[i]) {
        obs.insert(obs.end(), labels.begin(), labels.end());
      }
      std::sort(obs.begin(), obs.end());
    }

    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [a, b] : pairs) {
      ledger.Record(round, start_slot + n - 1, LinkKind::kAgentAgent, a, b);
    }
    result.links_per_slot.push_back(static_cast<int64_t>(pairs.size()));
  }
}

std::vector<int> SinkNextHops(const Component& component) {
  const Graph& g = component.graph;
  const int n = g.vertex_count();
  std::vector<int> dist(n, -1);
  std::deque<int> queue{component.sink};
  dist[component.sink] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : g.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<int> next(n, -1);
  for (int v = 0; v < n; ++v) {
    if (dist[v] < 0) throw std::invalid_argument("sac: disconnected component");
    if (v == component.sink) continue;
    for (int u : g.neighbors(v)) {
      if (dist[u] == dist[v] - 1) {
        next[v] = u;
        break;
      }
    }
  }
  return next;
}

SacRoundResult RunSinkCollection(const Component& component,
                                 CommLedger& ledger, int round,
                                 int64_t start_slot, int64_t max_slots) {
  const std::vector<int> next = SinkNextHops(component);
  const int n = static_cast<int>(next.size());
  std::vector<std::vector<int>> held(n);
  for (int v = 0; v < n; ++v) held[v] = {v};

  SacRoundResult result;
  const int sink = component.sink;
  while (static_cast<int>(held[sink].size()) < n) {
    if (result.slots >= max_slots) break;
    std::vector<std::vector<int>> moved(n);
    for (int v = 0; v < n; ++v) {
      if (v == sink || held[v].empty()) continue;
      ledger.Record(round, start_slot + result.slots, LinkKind::kAgentAgent,
                    std::min(component.members[v], component.members[next[v]]),
                    std::max(component.members[v], component.members[next[v]]));
      moved[next[v]].insert(moved[next[v]].end(), held[v].begin(),
                            held[v].end());
      held[v].clear();
    }
    for (int v = 0; v < n; ++v) {
      held[v].insert(held[v].end(), moved[v].begin(), moved[v].end());
    }
    ++result.slots;
  }
  result.collected = held[sink];
  std::sort(result.collected.begin(), result.collected.end());
  result.completed = static_cast<int>(result.collected.size()) == n;
  return result;
}

}  // namespace fedmab
