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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "fedmab/bandit_env.h"
#include "fedmab/metrics.h"
#include "fedmab/privacy.h"
#include "fedmab/protocols.h"
#include "fedmab/relay.h"
#include "fedmab/rng.h"
#include "fedmab/topology.h"

namespace fedmab {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, double a = 0, double b = 0, double c = 0,
                   double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

std::string FormatList(const std::vector<double>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += Format("%.1f", xs[i]);
  }
  return out + "]";
}

EnvSpec RandomEnv(int m, int k, int64_t horizon, uint64_t seed) {
  EnvConfig c;
  c.num_agents = m;
  c.num_arms = k;
  c.horizon = horizon;
  c.mean_mode = MeanMode::kRandomHomogeneous;
  return BuildEnv(c, DeriveSeed({seed, 0xe7}));
}

EnvSpec RowEnv(int m, const std::vector<double>& row, int64_t horizon) {
  std::vector<double> means;
  for (int i = 0; i < m; ++i) means.insert(means.end(), row.begin(), row.end());
  return EnvSpec(m, static_cast<int>(row.size()), horizon,
                 RewardKind::kBernoulli, means);
}

std::vector<double> LinearRow(int k, double top, double step) {
  std::vector<double> row(k);
  for (int a = 0; a < k; ++a) row[a] = std::max(0.0, top - step * a);
  return row;
}

AlgorithmParams WithEps(double eps) {
  AlgorithmParams a;
  a.privacy = PrivacyParams::WithEpsilon(eps);
  return a;
}

AlgorithmParams NoiseFree() {
  AlgorithmParams a;
  a.privacy = PrivacyParams::Disabled();
  return a;
}

Graph Topology(TopologyKind kind, int n) {
  RandomStream rng(0);
  return BuildTopology({kind, 0, 0.0}, n, rng);
}

bool StrictlyDecreasing(const std::vector<double>& xs) {
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

int BoundRound(double gap) {
  return static_cast<int>(std::ceil(std::log2(1.0 / gap) + 1.0));
}

double Mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

// 1 and 2: noise-free centralized elimination at desk scale.
struct EliminationStudy {
  int within_bound = 0;
  int best_lost = 0;
  int runs = 0;
};

EliminationStudy RunEliminationStudy() {
  EliminationStudy s;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const EnvSpec env = RandomEnv(50, 100, 100000, seed);
    const RunResult run = RunCentralized(env, NoiseFree(), seed);
    ++s.runs;
    s.best_lost += run.best_arm_eliminated;
    bool ok = run.communication_rounds() <= BoundRound(env.gaps().min_gap);
    std::vector<int> removed_at(env.num_arms(), 0);
    for (const RoundRecord& r : run.rounds) {
      for (int k : r.eliminated) removed_at[k] = r.round;
    }
    for (int k = 0; k < env.num_arms(); ++k) {
      if (k == env.gaps().best_arm) continue;
      const int rk = BoundRound(env.gaps().gaps[k]);
      if (rk > run.communication_rounds()) continue;
      ok &= removed_at[k] != 0 && removed_at[k] <= rk;
    }
    s.within_bound += ok;
  }
  return s;
}

Verdict Criterion3() {
  const int draws = 200000;
  const double eps = 1.0;
  const int n = 10;
  // Adjacent histories: four ones out of ten vs five ones out of ten.
  const double a = 0.4;
  const double b = 0.5;
  const double scale = EpochNoiseScale(1, eps, n);
  const double lo = std::min(a, b) - 3 * scale;
  const double hi = std::max(a, b) + 3 * scale;
  const int bins = 20;
  std::vector<double> ha(bins, 0), hb(bins, 0);
  RandomStream ra(101);
  RandomStream rb(202);
  const PrivacyParams priv = PrivacyParams::WithEpsilon(eps);
  const auto bin_of = [&](double x) {
    const int i = static_cast<int>(std::floor((x - lo) / (hi - lo) * bins));
    return std::clamp(i, 0, bins - 1);
  };
  for (int i = 0; i < draws; ++i) {
    ha[bin_of(PrivatizeEpochMean(a, 1, priv, n, ra))] += 1;
    hb[bin_of(PrivatizeEpochMean(b, 1, priv, n, rb))] += 1;
  }
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < bins; ++i) {
    const double ratio = std::max(ha[i] / hb[i], hb[i] / ha[i]);
    // Relative binomial std of each count, combined for the ratio.
    const double slack = std::sqrt((1 - ha[i] / draws) / ha[i] +
                                   (1 - hb[i] / draws) / hb[i]);
    const double bound = std::exp(eps) * (1 + 3 * slack);
    pass &= ratio <= bound;
    worst = std::max(worst, ratio / bound);
  }
  return {pass,
          Format("max bin ratio / bound = %.4f over %.0f bins", worst, bins)};
}

Verdict Criterion4() {
  std::string detail;
  bool pass = true;
  const double c1 = 50, c2 = 1;

  const EnvSpec env = RowEnv(20, LinearRow(8, 0.9, 0.1), 100000);
  const RunResult cdp = RunCentralized(env, WithEps(1.0), 1);
  const int rho = cdp.communication_rounds();
  int64_t uploads = 0, broadcasts = 0;
  for (const RoundRecord& r : cdp.rounds) {
    uploads += static_cast<int64_t>(r.uploaders.size());
    broadcasts += env.num_agents();
    pass &= cdp.ledger.CountInRound(r.round, LinkKind::kServerAgent) ==
            2 * env.num_agents();
  }
  pass &= uploads == static_cast<int64_t>(env.num_agents()) * rho;
  pass &= ReplayCost(cdp.ledger.entries(), c1, c2) ==
          c1 * env.num_agents() * rho + c1 * broadcasts;
  pass &= ReplayCost(cdp.ledger.entries(), c1, c2) == cdp.ledger.TotalCost(c1, c2);
  detail += Format("CDP rho=%.0f cost=%.0f", rho,
                   ReplayCost(cdp.ledger.entries(), c1, c2));

  const int m = env.num_agents();
  const RunResult ddp =
      RunDecentralized(env, Topology(TopologyKind::kComplete, m), WithEps(1.0), 1);
  for (const RoundRecord& r : ddp.rounds) {
    pass &= r.t_delay == 1;
    pass &= ddp.ledger.CountInRound(r.round, LinkKind::kAgentAgent) ==
            m * (m - 1) / 2;
    pass &= ddp.ledger.CountInRound(r.round, LinkKind::kServerAgent) == 0;
  }
  pass &= ReplayCost(ddp.ledger.entries(), c1, c2) ==
          c2 * ddp.communication_rounds() * m * (m - 1) / 2;
  detail += Format("; DDP rounds=%.0f", ddp.communication_rounds());

  std::vector<Graph> graphs = {Topology(TopologyKind::kRing, 7),
                               Topology(TopologyKind::kStar, 6),
                               Topology(TopologyKind::kComplete, 4),
                               Graph(1, {}), Topology(TopologyKind::kRing, 2)};
  const ComponentLayout layout = BuildComponentLayout(graphs);
  const int q = static_cast<int>(layout.components.size());
  const RunResult hdp = RunHybrid(env, layout, WithEps(1.0), 1);
  // Relay links per round from an independent collection of each component.
  int64_t relay = 0, tree = 0;
  for (const Component& c : layout.components) {
    CommLedger scratch;
    RunSinkCollection(c, scratch, 1, 0, 1000);
    relay += scratch.agent_links();
    tree += static_cast<int64_t>(c.members.size()) - 1;
  }
  for (const RoundRecord& r : hdp.rounds) {
    pass &= hdp.ledger.CountInRound(r.round, LinkKind::kServerAgent) == 2 * q;
    pass &= hdp.ledger.CountInRound(r.round, LinkKind::kAgentAgent) ==
            relay + tree;
    pass &= r.t_delay == layout.global_delay;
  }
  pass &= ReplayCost(hdp.ledger.entries(), c1, c2) ==
          hdp.communication_rounds() * (c1 * 2 * q + c2 * (relay + tree));
  detail += Format("; HDP Q=%.0f rounds=%.0f", q, hdp.communication_rounds());
  return {pass, detail};
}

Verdict Criterion5() {
  const std::vector<double> eps = {0.1, 0.3, 0.5, 1.0};
  std::vector<double> means;
  for (double e : eps) {
    std::vector<double> regret;
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const EnvSpec env = RandomEnv(50, 50, 100000, 500 + seed);
      regret.push_back(RunCentralized(env, WithEps(e), 500 + seed).regret.total());
    }
    means.push_back(Mean(regret));
  }
  return {StrictlyDecreasing(means),
          "mean regret over eps {0.1,0.3,0.5,1}: " + FormatList(means)};
}

Verdict Criterion6() {
  std::vector<double> by_p;
  for (double p : {0.2, 0.6, 1.0}) {
    std::vector<double> regret;
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const EnvSpec env = RandomEnv(50, 50, 100000, 500 + seed);
      AlgorithmParams algo = WithEps(0.5);
      algo.participation = p;
      regret.push_back(RunCentralized(env, algo, 500 + seed).regret.total());
    }
    by_p.push_back(Mean(regret));
  }
  const EnvSpec env = RowEnv(50, LinearRow(10, 0.9, 0.1), 100000);
  std::vector<double> by_r;
  for (int rounds : {2, 3, 4, 5}) {
    std::vector<double> regret;
    for (uint64_t seed = 0; seed < 20; ++seed) {
      AlgorithmParams algo = WithEps(1.0);
      algo.variant = ScheduleVariant::kFixedRounds;
      algo.rounds = rounds;
      regret.push_back(RunCentralized(env, algo, 700 + seed).regret.total());
    }
    by_r.push_back(Mean(regret));
  }
  const std::vector<double> ranked = {by_r[0], by_r[1], by_r[3]};
  const double r45 = std::abs(by_r[2] - by_r[3]) / std::min(by_r[2], by_r[3]);
  const bool pass = StrictlyDecreasing(by_p) && StrictlyDecreasing(ranked) &&
                    r45 < 0.10;
  return {pass, "p {0.2,0.6,1}: " + FormatList(by_p) +
                    "; R {2,3,4,5}: " + FormatList(by_r) +
                    Format("; |R4-R5| = %.1f%%", 100 * r45)};
}

Verdict Criterion7() {
  const int m = 50;
  const EnvSpec env = RowEnv(m, LinearRow(20, 0.95, 0.05), 100000);
  const Graph complete = Topology(TopologyKind::kComplete, m);
  const Graph star = Topology(TopologyKind::kStar, m);
  const Graph ring = Topology(TopologyKind::kRing, m);
  std::vector<double> rc, rs, rr, cen;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    rc.push_back(RunDecentralized(env, complete, WithEps(1.0), seed).regret.total());
    rs.push_back(RunDecentralized(env, star, WithEps(1.0), seed).regret.total());
    rr.push_back(RunDecentralized(env, ring, WithEps(1.0), seed).regret.total());
    cen.push_back(RunCentralized(env, WithEps(1.0), seed).regret.total());
  }
  const double c = Mean(rc), s = Mean(rs), r = Mean(rr), z = Mean(cen);
  const double rel = std::abs(c - z) / z;
  return {c <= s && s <= r && rel <= 0.05,
          Format("complete %.1f <= star %.1f <= ring %.1f; vs centralized "
                 "%.2f%%",
                 c, s, r, 100 * rel)};
}

Verdict Criterion8() {
  RandomStream rng(808);
  int rounds = 0;
  int violations = 0;
  for (int g = 0; g < 50; ++g) {
    const int m = 5 + static_cast<int>(rng.Below(26));
    const double p =
        std::min(1.0, (1.0 + rng.Uniform()) * (std::log(m) + 1.0) / m);
    RandomStream topo(DeriveSeed({808, static_cast<uint64_t>(g)}));
    const Graph graph = BuildTopology({TopologyKind::kRandom, 0, p}, m, topo);
    const int diameter = Diameter(graph);
    const EnvSpec env = RowEnv(m, LinearRow(5, 0.9, 0.15), 20000);
    const RunResult run = RunDecentralized(env, graph, WithEps(1.0), g);
    for (const RoundRecord& r : run.rounds) {
      ++rounds;
      violations += r.t_delay > diameter;
    }
  }
  return {violations == 0 && rounds > 0,
          Format("%.0f GIS rounds on 50 graphs, %.0f above the diameter",
                 rounds, violations)};
}

// Exhaustive sink oracle: lowest-index vertex of minimum eccentricity.
bool SinkMatchesOracle(const Graph& g) {
  const int n = g.vertex_count();
  int best = -1;
  int best_ecc = std::numeric_limits<int>::max();
  for (int v = 0; v < n; ++v) {
    std::vector<int> dist(n, -1);
    std::vector<int> frontier = {v};
    dist[v] = 0;
    for (size_t i = 0; i < frontier.size(); ++i) {
      for (int u : g.neighbors(frontier[i])) {
        if (dist[u] < 0) {
          dist[u] = dist[frontier[i]] + 1;
          frontier.push_back(u);
        }
      }
    }
    const int ecc = *std::max_element(dist.begin(), dist.end());
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = v;
    }
  }
  const Graph one[] = {g};
  const SinkAssignment s = FindSinkAgents(one);
  return s.sinks[0] == best && s.local_delays[0] == best_ecc;
}

Verdict Criterion9() {
  int checked = 0;
  int mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (size_t e = 0; e < pairs.size(); ++e) {
        if (mask >> e & 1) edges.push_back(pairs[e]);
      }
      const Graph g(n, edges);
      if (!g.IsConnected()) continue;
      ++checked;
      mismatches += !SinkMatchesOracle(g);
    }
  }
  RandomStream rng(909);
  for (int n : {7, 8}) {
    int made = 0;
    while (made < 200) {
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (rng.Uniform() < 0.35) edges.emplace_back(u, v);
        }
      }
      const Graph g(n, edges);
      if (!g.IsConnected()) continue;
      ++made;
      ++checked;
      mismatches += !SinkMatchesOracle(g);
    }
  }
  return {mismatches == 0,
          Format("%.0f connected graphs, %.0f mismatches", checked, mismatches)};
}

Verdict Criterion10() {
  const int m = 50;
  const EnvSpec env = RowEnv(m, LinearRow(20, 0.95, 0.05), 100000);
  std::vector<Graph> singles(m, Graph(1, {}));
  const ComponentLayout singleton = BuildComponentLayout(singles);
  int identical = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const RunResult h = RunHybrid(env, singleton, WithEps(1.0), seed);
    const RunResult c = RunCentralized(env, WithEps(1.0), seed);
    identical += std::equal(h.regret.slot_regret().begin(),
                            h.regret.slot_regret().end(),
                            c.regret.slot_regret().begin(),
                            c.regret.slot_regret().end());
  }
  const Graph star = Topology(TopologyKind::kStar, m);
  const ComponentLayout whole = BuildComponentLayout({star});
  std::vector<double> rh, rd;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    rh.push_back(RunHybrid(env, whole, WithEps(1.0), seed).regret.total());
    rd.push_back(RunDecentralized(env, star, WithEps(1.0), seed).regret.total());
  }
  const double rel = std::abs(Mean(rh) - Mean(rd)) / Mean(rd);
  return {identical == 20 && rel < 0.10,
          Format("Q=M traces identical in %.0f/20 seeds; Q=1 vs DDP %.2f%%",
                 identical, 100 * rel)};
}

Verdict Criterion11() {
  // Agent j-1 sees arm j at 0.95, others see it at 0.55 (global 0.63);
  // arm 0 is 0.8 everywhere, so every local best differs from the global.
  const int m = 5, k = 10;
  std::vector<double> means(m * k, 0.1);
  for (int i = 0; i < m; ++i) {
    means[i * k + 0] = 0.8;
    for (int j = 1; j <= 5; ++j) means[i * k + j] = (i == j - 1) ? 0.95 : 0.55;
  }
  const EnvSpec env(m, k, 100000, RewardKind::kBernoulli, means);
  const int best = env.gaps().best_arm;
  const Graph complete = Topology(TopologyKind::kComplete, m);
  const Graph ring = Topology(TopologyKind::kRing, m);
  const ComponentLayout layout =
      BuildComponentLayout({Topology(TopologyKind::kComplete, 3),
                            Topology(TopologyKind::kComplete, 2)});
  int cdp = 0, ddp_complete = 0, ddp_ring = 0, hdp = 0, isolated = 0;
  const int runs = 100;
  for (uint64_t seed = 0; seed < runs; ++seed) {
    cdp += RunCentralized(env, NoiseFree(), seed).survivor == best;
    ddp_complete +=
        RunDecentralized(env, complete, NoiseFree(), seed).survivor == best;
    ddp_ring += RunDecentralized(env, ring, NoiseFree(), seed).survivor == best;
    hdp += RunHybrid(env, layout, NoiseFree(), seed).survivor == best;
    const int agent = static_cast<int>(seed % m);
    isolated += RunIsolatedAgent(env, agent, NoiseFree(), seed).survivor == best;
  }
  const int need = 95;
  const bool pass = best == 0 && cdp >= need && ddp_complete >= need &&
                    ddp_ring >= need && hdp >= need && 2 * isolated < runs;
  return {pass, Format("global best found: CDP %.0f, DDP complete %.0f, "
                       "DDP ring %.0f, HDP %.0f",
                       cdp, ddp_complete, ddp_ring, hdp) +
                    Format("; isolated agents %.0f (of 100 each)", isolated)};
}

Verdict Criterion12() {
  RandomStream rng(1212);
  const PrivacyParams off = PrivacyParams::Disabled();
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int length = 1 + static_cast<int>(rng.Below(2000));
    std::vector<double> rewards(length);
    for (double& r : rewards) r = rng.Uniform();
    HistoricalPrivateMean hist;
    int pos = 0;
    double sum = 0.0;
    while (pos < length) {
      const int epoch = 1 + static_cast<int>(rng.Below(length - pos));
      double epoch_sum = 0.0;
      for (int i = pos; i < pos + epoch; ++i) epoch_sum += rewards[i];
      const double x = PrivatizeEpochMean(epoch_sum / epoch, 1, off, epoch, rng);
      hist = UpdateHistoricalMean(hist, hist.cumulative_samples + epoch, x);
      pos += epoch;
      sum += epoch_sum;
    }
    worst = std::max(worst, std::abs(hist.value - sum / length));
  }
  return {worst <= 1e-12,
          Format("max |recurrence - flat mean| = %.3g over 1000 partitions",
                 worst)};
}

}  // namespace
}  // namespace fedmab

int main() {
  using namespace fedmab;
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  const auto report = [&](int id, const char* name,
                          const std::function<Verdict()>& check) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id,
                name, v.detail.c_str());
    std::fflush(stdout);
  };

  EliminationStudy study;
  report(1, "round-count bound", [&] {
    study = RunEliminationStudy();
    return Verdict{study.within_bound >= 95,
                   Format("%.0f/%.0f runs within the round bound",
                          study.within_bound, study.runs)};
  });
  report(2, "best-arm survival", [&] {
    return Verdict{study.runs == 100 && study.best_lost <= 1,
                   Format("best arm eliminated in %.0f/%.0f runs",
                          study.best_lost, study.runs)};
  });
  report(3, "privacy ratio", Criterion3);
  report(4, "ledger exactness", Criterion4);
  report(5, "privacy-regret trade-off", Criterion5);
  report(6, "participation and round trade-offs", Criterion6);
  report(7, "topology ordering", Criterion7);
  report(8, "GIS delay bound", Criterion8);
  report(9, "sink-agent oracle", Criterion9);
  report(10, "hybrid limits", Criterion10);
  report(11, "heterogeneous rewards", Criterion11);
  report(12, "historical-mean oracle", Criterion12);

  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::printf("%d/12 criteria passed in %.1f s\n", 12 - failures, secs);
  return failures == 0 ? 0 : 1;
}
