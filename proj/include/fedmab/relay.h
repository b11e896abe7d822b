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

#ifndef FEDMAB_RELAY_H_
#define FEDMAB_RELAY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedmab/metrics.h"
#include "fedmab/protocols.h"
#include "fedmab/topology.h"

namespace fedmab {

// Global information synchronization (ADV-REQ-DATA flooding) and sink
// agent collection, the two multi-hop exchanges of one round.

enum class GisMessageKind { kAdv, kReq, kData };

struct GisMessage {
  GisMessageKind kind = GisMessageKind::kAdv;
  int sender = 0;
  int receiver = 0;
  std::vector<int> labels;
  std::vector<std::vector<double>> records;  // kData only, aligned with labels
  int slot = 0;                              // 1-based slot within the round
};

struct GisRoundResult {
  int t_delay = 0;
  bool completed = false;  // every observation list reached size M
  std::vector<int64_t> links_per_slot;
};

// Starts each agent's observation list as {id} with its own historical
// means as the record.
void BeginObservationRound(AgentState& agent);

// Runs flooding slots until every agent holds all M records, or until
// `max_slots` slots have elapsed. Each slot charges one agent-agent link
// per pair that exchanged at least one DATA message, at slot
// start_slot + n - 1. Throws std::runtime_error if synchronization is not
// reached within M slots (a disconnected graph). `transcript`, when given,
// receives every message.
GisRoundResult RunGisRound(const Graph& graph, std::span<AgentState> agents,
                           CommLedger& ledger, int round, int64_t start_slot,
                           int64_t max_slots,
                           std::vector<GisMessage>* transcript = nullptr);

// Next hop from each local vertex toward the component's sink along a
// shortest path, lowest index on ties; -1 at the sink.
std::vector<int> SinkNextHops(const Component& component);

struct SacRoundResult {
  int slots = 0;
  bool completed = false;
  // Local indices whose records reached the sink, ascending.
  std::vector<int> collected;
};

// One-way relay of every member's record to the sink, one hop per slot.
// Each (slot, tree link) carrying at least one record costs one
// agent-agent link. Stops early after `max_slots` slots.
SacRoundResult RunSinkCollection(const Component& component,
                                 CommLedger& ledger, int round,
                                 int64_t start_slot, int64_t max_slots);

}  // namespace fedmab

#endif  // FEDMAB_RELAY_H_
