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

#ifndef FEDMAB_METRICS_H_
#define FEDMAB_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fedmab {

// Cumulative pseudo-regret: every pull of arm k adds the global gap of k.
class RegretTrace {
 public:
  RegretTrace(std::vector<double> gaps, int num_agents, int64_t horizon);

  // Throws std::out_of_range for t outside [0, horizon) or a bad index.
  void RecordPull(int agent, int arm, int64_t t);
  // `count` consecutive pulls of one arm starting at slot t.
  void RecordPulls(int agent, int arm, int64_t t, int64_t count);

  int64_t horizon() const { return static_cast<int64_t>(slot_regret_.size()); }
  int64_t total_pulls() const { return total_pulls_; }
  double total() const { return total_; }
  double agent_total(int agent) const { return per_agent_[agent]; }
  std::span<const double> per_agent() const { return per_agent_; }
  // Regret added in each slot, summed over agents.
  std::span<const double> slot_regret() const { return slot_regret_; }
  // Regret over the first t slots.
  double CumulativeAt(int64_t t) const;
  double gap(int arm) const { return gaps_[arm]; }

 private:
  std::vector<double> gaps_;
  std::vector<double> slot_regret_;
  std::vector<double> per_agent_;
  int64_t total_pulls_ = 0;
  double total_ = 0.0;
};

enum class LinkKind { kServerAgent, kAgentAgent };

inline constexpr int kServerEndpoint = -1;

struct LinkEntry {
  int round = 0;
  int64_t slot = 0;
  LinkKind kind = LinkKind::kServerAgent;
  int a = kServerEndpoint;  // kServerEndpoint for server links
  int b = 0;
};

class CommLedger {
 public:
  void Record(int round, int64_t slot, LinkKind kind, int a, int b);

  const std::vector<LinkEntry>& entries() const { return entries_; }
  int64_t server_links() const { return server_links_; }
  int64_t agent_links() const { return agent_links_; }
  // c1 * server_links + c2 * agent_links from the running counts.
  double TotalCost(double c1, double c2) const;
  // Links of one kind built during a round.
  int64_t CountInRound(int round, LinkKind kind) const;

 private:
  std::vector<LinkEntry> entries_;
  int64_t server_links_ = 0;
  int64_t agent_links_ = 0;
};

// Recomputes the cost from the raw entries, independent of the counters.
double ReplayCost(std::span<const LinkEntry> entries, double c1, double c2);

struct Stats {
  int64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one value
  double min = 0.0;
  double max = 0.0;
};

// One-pass (Welford) statistics. Throws std::invalid_argument when empty.
Stats Summarize(std::span<const double> values);

struct ActiveSizeEvent {
  int64_t slot = 0;  // first slot at which the new size applies
  int active_arms = 0;
};

struct TracePoint {
  int64_t t = 0;
  double cumulative_regret = 0.0;
  int64_t c1_units = 0;
  int64_t c2_units = 0;
  int active_arms = 0;
};

// Samples the regret, ledger and active-set size after the first t slots
// for each t in `times` (ascending, each in [1, horizon]).
std::vector<TracePoint> SampleTrace(const RegretTrace& regret,
                                    const CommLedger& ledger,
                                    std::span<const ActiveSizeEvent> sizes,
                                    std::span<const int64_t> times);

// `count` evenly spaced points ending at the horizon.
std::vector<int64_t> EvenSamplePoints(int64_t horizon, int count);

}  // namespace fedmab

#endif  // FEDMAB_METRICS_H_
