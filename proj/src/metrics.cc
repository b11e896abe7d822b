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

#include "fedmab/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fedmab {

RegretTrace::RegretTrace(std::vector<double> gaps, int num_agents,
                         int64_t horizon)
    : gaps_(std::move(gaps)),
      slot_regret_(static_cast<size_t>(horizon), 0.0),
      per_agent_(num_agents, 0.0) {}

void RegretTrace::RecordPull(int agent, int arm, int64_t t) {
  RecordPulls(agent, arm, t, 1);
}

void RegretTrace::RecordPulls(int agent, int arm, int64_t t, int64_t count) {
  if (count <= 0) return;
  if (t < 0 || t + count > horizon()) {
    throw std::out_of_range("regret trace: slot outside the horizon");
  }
  if (agent < 0 || agent >= static_cast<int>(per_agent_.size()) || arm < 0 ||
      arm >= static_cast<int>(gaps_.size())) {
    throw std::out_of_range("regret trace: bad agent or arm");
  }
  const double g = gaps_[arm];
  total_pulls_ += count;
  if (g == 0.0) return;
  for (int64_t s = t; s < t + count; ++s) slot_regret_[s] += g;
  per_agent_[agent] += g * static_cast<double>(count);
  total_ += g * static_cast<double>(count);
}

double RegretTrace::CumulativeAt(int64_t t) const {
  t = std::clamp<int64_t>(t, 0, horizon());
  double sum = 0.0;
  for (int64_t s = 0; s < t; ++s) sum += slot_regret_[s];
  return sum;
}

void CommLedger::Record(int round, int64_t slot, LinkKind kind, int a, int b) {
  entries_.push_back({round, slot, kind, a, b});
  if (kind == LinkKind::kServerAgent) {
    ++server_links_;
  } else {
    ++agent_links_;
  }
}

double CommLedger::TotalCost(double c1, double c2) const {
  return c1 * static_cast<double>(server_links_) +
         c2 * static_cast<double>(agent_links_);
}

int64_t CommLedger::CountInRound(int round, LinkKind kind) const {
  return std::count_if(entries_.begin(), entries_.end(),
                       [&](const LinkEntry& e) {
                         return e.round == round && e.kind == kind;
                       });
}

double ReplayCost(std::span<const LinkEntry> entries, double c1, double c2) {
  int64_t n1 = 0;
  int64_t n2 = 0;
  for (const LinkEntry& e : entries) {
    (e.kind == LinkKind::kServerAgent ? n1 : n2) += 1;
  }
  return c1 * static_cast<double>(n1) + c2 * static_cast<double>(n2);
}

Stats Summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  Stats s;
  s.min = s.max = values[0];
  double m2 = 0.0;
  for (double x : values) {
    ++s.count;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    m2 += delta * (x - s.mean);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.stddev = s.count > 1 ? std::sqrt(m2 / static_cast<double>(s.count - 1)) : 0.0;
  return s;
}

std::vector<TracePoint> SampleTrace(const RegretTrace& regret,
                                    const CommLedger& ledger,
                                    std::span<const ActiveSizeEvent> sizes,
                                    std::span<const int64_t> times) {
  std::vector<TracePoint> out;
  out.reserve(times.size());
  const auto slots = regret.slot_regret();
  const auto& entries = ledger.entries();
  double cumulative = 0.0;
  int64_t s = 0;
  size_t size_index = 0;
  int active = sizes.empty() ? 0 : sizes[0].active_arms;
  for (int64_t t : times) {
    if (t < s || t > regret.horizon()) {
      throw std::invalid_argument("sample trace: times must ascend within the horizon");
    }
    for (; s < t; ++s) cumulative += slots[s];
    while (size_index < sizes.size() && sizes[size_index].slot <= t) {
      active = sizes[size_index].active_arms;
      ++size_index;
    }
    TracePoint p;
    p.t = t;
    p.cumulative_regret = cumulative;
    p.active_arms = active;
    for (const LinkEntry& e : entries) {
      if (e.slot >= t) continue;
      (e.kind == LinkKind::kServerAgent ? p.c1_units : p.c2_units) += 1;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<int64_t> EvenSamplePoints(int64_t horizon, int count) {
  count = static_cast<int>(std::clamp<int64_t>(count, 1, horizon));
  std::vector<int64_t> points;
  for (int i = 1; i <= count; ++i) {
    int64_t t = horizon * i / count;
    if (points.empty() || t > points.back()) points.push_back(t);
  }
  return points;
}

}  // namespace fedmab
