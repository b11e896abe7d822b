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

#ifndef FEDMAB_PROTOCOLS_H_
#define FEDMAB_PROTOCOLS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fedmab/bandit_env.h"
#include "fedmab/metrics.h"
#include "fedmab/privacy.h"
#include "fedmab/rng.h"
#include "fedmab/schedule.h"
#include "fedmab/topology.h"

namespace fedmab {

struct ArmEstimate {
  int64_t epoch_count = 0;
  double raw_mean = 0.0;      // this epoch's empirical mean
  double private_mean = 0.0;  // raw_mean plus Laplace noise
  HistoricalPrivateMean historical;
};

struct AgentState {
  int id = 0;
  std::vector<int> active;  // ascending arm indices
  std::vector<ArmEstimate> arms;
  // Decentralized runs only: labels of agents whose current-epoch record
  // this agent holds, ascending, and the records indexed by label.
  std::vector<int> observation_list;
  std::vector<std::vector<double>> records;

  AgentState(int agent_id, int num_arms);

  // Historical private means for every arm (inactive arms keep stale
  // values).
  std::vector<double> HistoricalMeans() const;
  // Highest own historical mean over the active set, lowest index on ties.
  int LocalBestArm() const;
};

enum class HybridWeighting { kUnweighted, kSizeWeighted };

struct AlgorithmParams {
  PrivacyParams privacy;
  double participation = 1.0;
  ScheduleVariant variant = ScheduleVariant::kDoubling;
  int rounds = 0;
  // Delta for the fixed-rounds schedule; the environment's true minimal
  // gap is used when unset.
  std::optional<double> min_gap;
  HybridWeighting hybrid_weighting = HybridWeighting::kUnweighted;
};

// Schedule parameters for a pool of `agent_pool` agents drawn from env.
ScheduleParams MakeScheduleParams(const EnvSpec& env,
                                  const AlgorithmParams& algo,
                                  int agent_pool);

struct RoundRecord {
  int round = 0;
  double target_gap = 0.0;
  int64_t cumulative_samples = 0;
  int64_t new_samples = 0;
  double confidence = 0.0;
  std::vector<int> active_before;
  std::vector<double> aggregated;  // aligned with active_before
  double max_mean = 0.0;
  std::vector<int> eliminated;
  std::vector<int> active_after;
  std::vector<int> uploaders;
  int t_delay = 0;
  int64_t start_slot = 0;
  int64_t end_slot = 0;  // start + |I| * new_samples + t_delay
  int64_t c1_links = 0;
  int64_t c2_links = 0;
};

struct RunResult {
  RegretTrace regret;
  CommLedger ledger;
  std::vector<RoundRecord> rounds;
  std::vector<ActiveSizeEvent> active_sizes;
  // Arm played after communication stops; -1 if the horizon ran out first.
  int survivor = -1;
  bool horizon_exhausted = false;
  bool best_arm_eliminated = false;
  int64_t exploit_tail = 0;  // slots of the final exploitation phase
  int64_t time_used = 0;

  int communication_rounds() const { return static_cast<int>(rounds.size()); }
};

// Pulls every active arm plan.new_samples times from slot start_slot,
// records the regret, then privatizes each epoch mean with `participants`
// in the noise scale and folds it into the historical mean. When the
// horizon cuts the epoch short only the pulls that fit are recorded, the
// estimates stay untouched, and false is returned.
bool ExploreEpoch(AgentState& agent, const EnvSpec& env, const EpochPlan& plan,
                  int participants, const PrivacyParams& privacy,
                  RandomStream& rng, RegretTrace& trace, int64_t start_slot);

struct EliminationOutcome {
  std::vector<double> aggregated;  // aligned with the input active set
  double max_mean = 0.0;
  std::vector<int> survivors;
  std::vector<int> eliminated;
};

// Averages the contributed mean vectors (each indexed by arm) over the
// active set, optionally with weights summing to one, and removes every arm
// trailing the maximum by at least 2 * confidence. Throws
// std::invalid_argument for an empty contribution list.
EliminationOutcome AggregateAndEliminate(
    std::span<const std::vector<double>> contributions,
    std::span<const int> active, double confidence,
    std::span<const double> weights = {});

// The runners record link counts in the ledger; prices are applied
// afterwards with CommLedger::TotalCost.

// Master-worker elimination with optional partial participation and a
// fixed round budget.
RunResult RunCentralized(const EnvSpec& env, const AlgorithmParams& algo,
                         uint64_t seed);

// Fully decentralized elimination synchronizing through GIS flooding.
RunResult RunDecentralized(const EnvSpec& env, const Graph& graph,
                           const AlgorithmParams& algo, uint64_t seed);

// Components relay to sink agents, which report to the server.
RunResult RunHybrid(const EnvSpec& env, const ComponentLayout& layout,
                    const AlgorithmParams& algo, uint64_t seed);

// A single agent eliminating on its own rewards, scored against the global
// gaps. Uses the same per-agent stream as the federated runners.
RunResult RunIsolatedAgent(const EnvSpec& env, int agent,
                           const AlgorithmParams& algo, uint64_t seed);

}  // namespace fedmab

#endif  // FEDMAB_PROTOCOLS_H_
