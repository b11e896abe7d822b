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

#include "fedmab/experiment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fedmab/csv_writer.h"
#include "fedmab/rng.h"

namespace fedmab {

using nlohmann::json;

namespace {

std::string Join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string Child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Collects diagnostics while walking the document.
class Reader {
 public:
  std::vector<std::string> diagnostics;

  void Fail(const std::string& path, const std::string& message) {
    diagnostics.push_back(path + ": " + message);
  }

  void CheckKeys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; })) {
        Fail(Child(path, key), "unknown field");
      }
    }
  }

  // Object member or nullptr. Reports a missing required member.
  const json* Find(const json& obj, const std::string& path, const char* key,
                   bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) Fail(Child(path, key), "required");
      return nullptr;
    }
    return &*it;
  }

  const json* Object(const json& obj, const std::string& path,
                     const char* key, bool required) {
    const json* v = Find(obj, path, key, required);
    if (v != nullptr && !v->is_object()) {
      Fail(Child(path, key), "must be an object");
      return nullptr;
    }
    return v;
  }

  int64_t Integer(const json& obj, const std::string& path, const char* key,
                  bool required, int64_t fallback, int64_t lo, int64_t hi) {
    const json* v = Find(obj, path, key, required);
    if (v == nullptr) return fallback;
    const std::string where = Child(path, key);
    double x = 0.0;
    if (v->is_number_integer()) {
      x = static_cast<double>(v->get<int64_t>());
    } else if (v->is_number_float()) {
      x = v->get<double>();
      if (x != std::floor(x)) {
        Fail(where, "must be an integer");
        return fallback;
      }
    } else {
      Fail(where, "must be an integer");
      return fallback;
    }
    if (x < static_cast<double>(lo) || x > static_cast<double>(hi)) {
      Fail(where, "must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
      return fallback;
    }
    return static_cast<int64_t>(x);
  }

  double Number(const json& obj, const std::string& path, const char* key,
                bool required, double fallback) {
    const json* v = Find(obj, path, key, required);
    if (v == nullptr) return fallback;
    if (!v->is_number()) {
      Fail(Child(path, key), "must be a number");
      return fallback;
    }
    return v->get<double>();
  }

  bool Bool(const json& obj, const std::string& path, const char* key,
            bool fallback) {
    const json* v = Find(obj, path, key, false);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) {
      Fail(Child(path, key), "must be true or false");
      return fallback;
    }
    return v->get<bool>();
  }

  // Index of the member's value in `choices`, or `fallback`.
  int Choice(const json& obj, const std::string& path, const char* key,
             bool required, int fallback,
             std::initializer_list<const char*> choices) {
    const json* v = Find(obj, path, key, required);
    if (v == nullptr) return fallback;
    if (v->is_string()) {
      int i = 0;
      for (const char* c : choices) {
        if (v->get<std::string>() == c) return i;
        ++i;
      }
    }
    std::vector<std::string> names(choices.begin(), choices.end());
    Fail(Child(path, key), "must be one of " + Join(names, ", "));
    return fallback;
  }
};

TopologySpec ParseGraph(Reader& r, const json& obj, const std::string& path) {
  r.CheckKeys(obj, path, {"kind", "degree", "edge_prob"});
  TopologySpec spec;
  spec.kind = static_cast<TopologyKind>(
      r.Choice(obj, path, "kind", true, 2,
               {"star", "ring", "complete", "d_regular", "random"}));
  spec.degree = static_cast<int>(r.Integer(
      obj, path, "degree", spec.kind == TopologyKind::kDRegular, 0, 0,
      1 << 20));
  spec.edge_prob = r.Number(obj, path, "edge_prob",
                            spec.kind == TopologyKind::kRandom, 0.0);
  return spec;
}

void ParseMeans(Reader& r, const json& env_obj, ExperimentConfig& c) {
  const std::string path = "environment.means";
  const json* means = r.Object(env_obj, "environment", "means", false);
  if (means == nullptr) return;
  r.CheckKeys(*means, path, {"mode", "values"});
  c.env.mean_mode = static_cast<MeanMode>(r.Choice(
      *means, path, "mode", true, 1,
      {"explicit", "random_homogeneous", "random_heterogeneous"}));
  const json* values =
      r.Find(*means, path, "values", c.env.mean_mode == MeanMode::kExplicit);
  if (values == nullptr) return;
  const std::string vpath = path + ".values";
  if (c.env.mean_mode != MeanMode::kExplicit) {
    r.Fail(vpath, "only used with mode explicit");
    return;
  }
  if (!values->is_array() || values->empty()) {
    r.Fail(vpath, "must be a non-empty list");
    return;
  }
  std::vector<std::vector<double>> rows;
  const bool matrix = values->front().is_array();
  const auto read_row = [&](const json& row, const std::string& where) {
    std::vector<double> out;
    if (!row.is_array()) {
      r.Fail(where, "must be a list of numbers");
      return out;
    }
    for (const json& x : row) {
      if (!x.is_number() || x.get<double>() < 0.0 || x.get<double>() > 1.0) {
        r.Fail(where, "means must be numbers in [0, 1]");
        return std::vector<double>{};
      }
      out.push_back(x.get<double>());
    }
    if (static_cast<int>(out.size()) != c.env.num_arms) {
      r.Fail(where, "needs one mean per arm (" +
                        std::to_string(c.env.num_arms) + ")");
    }
    return out;
  };
  if (matrix) {
    if (static_cast<int>(values->size()) != c.env.num_agents) {
      r.Fail(vpath, "needs one row per agent or a single list");
    }
    for (size_t i = 0; i < values->size(); ++i) {
      rows.push_back(read_row((*values)[i], vpath + "[" + std::to_string(i) + "]"));
    }
  } else {
    rows.push_back(read_row(*values, vpath));
  }
  c.env.means = std::move(rows);
}

void ParseEnvironment(Reader& r, const json& doc, ExperimentConfig& c) {
  const json* env = r.Object(doc, "", "environment", true);
  if (env == nullptr) return;
  const std::string path = "environment";
  r.CheckKeys(*env, path, {"agents", "arms", "horizon", "reward", "means"});
  c.env.num_agents =
      static_cast<int>(r.Integer(*env, path, "agents", true, 2, 2, 100000));
  c.env.num_arms =
      static_cast<int>(r.Integer(*env, path, "arms", true, 2, 2, 100000));
  c.env.horizon =
      r.Integer(*env, path, "horizon", true, 1, 1, int64_t{1} << 40);
  c.env.reward_kind = static_cast<RewardKind>(r.Choice(
      *env, path, "reward", false, 0, {"bernoulli", "bounded_uniform"}));
  ParseMeans(r, *env, c);
}

void ParseAlgorithm(Reader& r, const json& doc, ExperimentConfig& c) {
  const json* algo = r.Object(doc, "", "algorithm", true);
  if (algo == nullptr) return;
  const std::string path = "algorithm";
  r.CheckKeys(*algo, path,
              {"structure", "schedule", "rounds", "min_gap", "privacy",
               "participation", "hybrid_weighting"});
  c.structure = static_cast<Structure>(r.Choice(
      *algo, path, "structure", true, 0,
      {"centralized", "decentralized", "hybrid"}));
  c.algo.variant = static_cast<ScheduleVariant>(r.Choice(
      *algo, path, "schedule", false, 0, {"doubling", "fixed_rounds"}));
  const bool fixed = c.algo.variant == ScheduleVariant::kFixedRounds;
  c.algo.rounds =
      static_cast<int>(r.Integer(*algo, path, "rounds", fixed, 0, 1, 64));
  if (const json* gap = r.Find(*algo, path, "min_gap", false)) {
    if (!gap->is_number() || !(gap->get<double>() > 0.0) ||
        gap->get<double>() > 1.0) {
      r.Fail(path + ".min_gap", "must be a number in (0, 1]");
    } else {
      c.algo.min_gap = gap->get<double>();
    }
  }

  const std::string ppath = path + ".privacy";
  if (const json* priv = r.Object(*algo, path, "privacy", true)) {
    r.CheckKeys(*priv, ppath, {"enabled", "epsilon"});
    const bool enabled = r.Bool(*priv, ppath, "enabled", true);
    if (enabled) {
      const double eps = r.Number(*priv, ppath, "epsilon", true, 1.0);
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        r.Fail(ppath + ".epsilon", "must be a positive number");
      }
      c.algo.privacy = PrivacyParams::WithEpsilon(eps);
    } else {
      c.algo.privacy = PrivacyParams::Disabled();
    }
  }

  c.algo.participation = r.Number(*algo, path, "participation", false, 1.0);
  if (!(c.algo.participation > 0.0 && c.algo.participation <= 1.0)) {
    r.Fail(path + ".participation",
           "must be in (0, 1] so that at least one agent uploads");
  } else if (c.algo.participation < 1.0 &&
             c.structure != Structure::kCentralized) {
    r.Fail(path + ".participation",
           "partial participation needs structure centralized");
  }
  c.algo.hybrid_weighting = static_cast<HybridWeighting>(r.Choice(
      *algo, path, "hybrid_weighting", false, 0,
      {"unweighted", "size_weighted"}));
}

void ParseTopology(Reader& r, const json& doc, ExperimentConfig& c) {
  const bool needed = c.structure != Structure::kCentralized;
  const json* topo = r.Object(doc, "", "topology", needed);
  if (topo == nullptr) return;
  const std::string path = "topology";
  r.CheckKeys(*topo, path, {"graph", "components", "export_edges"});
  c.export_edges = r.Bool(*topo, path, "export_edges", false);

  const bool ddp = c.structure == Structure::kDecentralized;
  const bool hdp = c.structure == Structure::kHybrid;
  if (const json* g = r.Object(*topo, path, "graph", ddp)) {
    if (!ddp) {
      r.Fail(path + ".graph", "only used with structure decentralized");
    } else {
      c.graph = ParseGraph(r, *g, path + ".graph");
      if (std::string why = TopologyFeasibility(c.graph, c.env.num_agents);
          !why.empty()) {
        c.feasibility_issues.push_back(path + ".graph: " + why);
      }
    }
  }
  const json* comps = r.Find(*topo, path, "components", hdp);
  if (comps == nullptr) return;
  const std::string cpath = path + ".components";
  if (!hdp) {
    r.Fail(cpath, "only used with structure hybrid");
    return;
  }
  if (!comps->is_array() || comps->empty()) {
    r.Fail(cpath, "must be a non-empty list");
    return;
  }
  int total = 0;
  for (size_t q = 0; q < comps->size(); ++q) {
    const std::string qpath = cpath + "[" + std::to_string(q) + "]";
    const json& item = (*comps)[q];
    if (!item.is_object()) {
      r.Fail(qpath, "must be an object");
      continue;
    }
    r.CheckKeys(item, qpath, {"size", "graph"});
    ComponentSpec spec;
    spec.size =
        static_cast<int>(r.Integer(item, qpath, "size", true, 1, 1, 100000));
    if (const json* g = r.Object(item, qpath, "graph", true)) {
      spec.graph = ParseGraph(r, *g, qpath + ".graph");
    }
    if (std::string why = TopologyFeasibility(spec.graph, spec.size);
        !why.empty()) {
      c.feasibility_issues.push_back(qpath + ".graph: " + why);
    }
    total += spec.size;
    c.components.push_back(spec);
  }
  if (total != c.env.num_agents) {
    r.Fail(cpath, "component sizes sum to " + std::to_string(total) +
                      ", environment.agents is " +
                      std::to_string(c.env.num_agents));
  }
}

void ParseRun(Reader& r, const json& doc, ExperimentConfig& c) {
  if (const json* costs = r.Object(doc, "", "costs", false)) {
    r.CheckKeys(*costs, "costs", {"c1", "c2"});
    c.c1 = r.Number(*costs, "costs", "c1", false, 1.0);
    c.c2 = r.Number(*costs, "costs", "c2", false, 1.0);
    if (c.c1 < 0.0) r.Fail("costs.c1", "must be nonnegative");
    if (c.c2 < 0.0) r.Fail("costs.c2", "must be nonnegative");
  }
  c.replications =
      static_cast<int>(r.Integer(doc, "", "replications", false, 1, 1, 1000000));
  if (const json* s = r.Find(doc, "", "seed", false)) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<int64_t>() >= 0)) {
      r.Fail("seed", "must be a nonnegative integer");
    } else {
      c.seed = s->get<uint64_t>();
    }
  }
  c.paired_seeds = r.Bool(doc, "", "paired_seeds", false);
  if (const json* o = r.Find(doc, "", "output", false)) {
    if (!o->is_string() || o->get<std::string>().empty()) {
      r.Fail("output", "must be a non-empty string");
    } else {
      c.output = o->get<std::string>();
    }
  }
  c.sample_points =
      static_cast<int>(r.Integer(doc, "", "sample_points", false, 100, 1, 1000000));
}

// Explicit means need a unique best global arm.
void CheckExplicitMeans(Reader& r, ExperimentConfig& c) {
  if (c.env.mean_mode != MeanMode::kExplicit || c.env.means.empty()) return;
  for (const auto& row : c.env.means) {
    if (static_cast<int>(row.size()) != c.env.num_arms) return;
  }
  try {
    BuildEnv(c.env, 0);
  } catch (const std::invalid_argument& e) {
    r.Fail("environment.means.values", e.what());
  }
}

json* Descend(json& doc, const std::vector<std::string>& keys,
              const std::string& path) {
  json* node = &doc;
  for (size_t i = 0; i + 1 < keys.size(); ++i) {
    if (!node->is_object()) {
      throw ConfigError({path + ": " + keys[i] + " is not an object"});
    }
    node = &(*node)[keys[i]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object()) {
    throw ConfigError({path + ": parent is not an object"});
  }
  return node;
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> keys;
  std::stringstream in(path);
  std::string key;
  while (std::getline(in, key, '.')) keys.push_back(key);
  if (keys.empty() || std::any_of(keys.begin(), keys.end(),
                                  [](const std::string& k) { return k.empty(); })) {
    throw ConfigError({path + ": malformed field path"});
  }
  return keys;
}

void SetPath(json& doc, const std::string& path, json value) {
  const std::vector<std::string> keys = SplitPath(path);
  (*Descend(doc, keys, path))[keys.back()] = std::move(value);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(Join(diagnostics, "\n")),
      diagnostics_(std::move(diagnostics)) {}

json ParseConfigText(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const size_t end = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError({source_name + ":" + std::to_string(line) + ":" +
                       std::to_string(column) + ": " + e.what()});
  }
}

json LoadConfigDocument(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path.string() + ": cannot read file"});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str(), path.string());
}

void ApplyOverride(json& doc, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError({"--override " + assignment + ": expected key.path=value"});
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  SetPath(doc, path, std::move(value));
}

ExperimentConfig ParseExperimentConfig(const json& doc) {
  Reader r;
  ExperimentConfig c;
  if (!doc.is_object()) throw ConfigError({"config: top level must be an object"});
  r.CheckKeys(doc, "",
              {"environment", "algorithm", "topology", "costs", "replications",
               "seed", "paired_seeds", "output", "sample_points", "sweep"});
  ParseEnvironment(r, doc, c);
  ParseAlgorithm(r, doc, c);
  ParseTopology(r, doc, c);
  ParseRun(r, doc, c);
  CheckExplicitMeans(r, c);
  if (!r.diagnostics.empty()) {
    r.diagnostics.insert(r.diagnostics.end(), c.feasibility_issues.begin(),
                         c.feasibility_issues.end());
    throw ConfigError(std::move(r.diagnostics));
  }
  return c;
}

std::vector<SweepCell> ExpandSweep(const json& doc) {
  json base = doc;
  std::vector<std::pair<std::string, std::vector<json>>> axes;
  if (doc.is_object() && doc.contains("sweep")) {
    const json& sweep = doc.at("sweep");
    std::vector<std::string> problems;
    if (!sweep.is_object()) {
      problems.push_back("sweep: must be an object of field path to value list");
    } else {
      for (const auto& [path, values] : sweep.items()) {
        if (!values.is_array() || values.empty()) {
          problems.push_back("sweep." + path + ": must be a non-empty list");
          continue;
        }
        axes.push_back({path, std::vector<json>(values.begin(), values.end())});
      }
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    base.erase("sweep");
  }

  std::vector<SweepCell> cells;
  std::vector<std::string> problems;
  std::set<std::string> stems;
  std::vector<size_t> index(axes.size(), 0);
  while (true) {
    SweepCell cell;
    cell.document = base;
    std::vector<std::string> parts;
    for (size_t a = 0; a < axes.size(); ++a) {
      const json& value = axes[a].second[index[a]];
      SetPath(cell.document, axes[a].first, value);
      parts.push_back(axes[a].first + "=" + value.dump());
    }
    cell.key = parts.empty() ? "base" : Join(parts, ";");
    try {
      cell.config = ParseExperimentConfig(cell.document);
    } catch (const ConfigError& e) {
      for (const std::string& d : e.diagnostics()) {
        problems.push_back(axes.empty() ? d : "[" + cell.key + "] " + d);
      }
    }
    if (!stems.insert(CellFileStem(cell.key)).second) {
      problems.push_back("sweep: cells " + cell.key +
                         " collide after file name sanitizing");
    }
    cells.push_back(std::move(cell));

    size_t a = 0;
    while (a < axes.size() && ++index[a] == axes[a].second.size()) {
      index[a] = 0;
      ++a;
    }
    if (a == axes.size()) break;
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cells;
}

uint64_t ReplicationSeed(const ExperimentConfig& config,
                         const std::string& cell_key, int replication) {
  const auto rep = static_cast<uint64_t>(replication);
  if (config.paired_seeds) return DeriveSeed({config.seed, rep});
  return DeriveSeed({config.seed, HashString(cell_key), rep});
}

std::string CellFileStem(const std::string& cell_key) {
  std::string stem;
  for (char c : cell_key) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '.';
    stem += keep ? c : '_';
  }
  return stem;
}

ReplicationResult RunReplication(const ExperimentConfig& config,
                                 const std::string& cell_key,
                                 int replication) {
  ReplicationResult out;
  out.replication = replication;
  out.seed = ReplicationSeed(config, cell_key, replication);
  const uint64_t seed = out.seed;
  try {
    const EnvSpec env = BuildEnv(
        config.env,
        DeriveSeed({seed, static_cast<uint64_t>(StreamTag::kEnvironment)}));
    const int m = env.num_agents();
    RunResult run = [&] {
      switch (config.structure) {
        case Structure::kDecentralized: {
          RandomStream topo = MakeStream(seed, StreamTag::kTopology, 0);
          const Graph g = BuildTopology(config.graph, m, topo);
          if (config.export_edges) out.edges = g.Edges();
          return RunDecentralized(env, g, config.algo, seed);
        }
        case Structure::kHybrid: {
          std::vector<Graph> graphs;
          int offset = 0;
          for (size_t q = 0; q < config.components.size(); ++q) {
            const ComponentSpec& spec = config.components[q];
            RandomStream topo = MakeStream(seed, StreamTag::kTopology, q);
            graphs.push_back(BuildTopology(spec.graph, spec.size, topo));
            if (config.export_edges) {
              for (auto [u, v] : graphs.back().Edges()) {
                out.edges.emplace_back(u + offset, v + offset);
              }
            }
            offset += spec.size;
          }
          return RunHybrid(env, BuildComponentLayout(std::move(graphs)),
                           config.algo, seed);
        }
        case Structure::kCentralized:
          break;
      }
      return RunCentralized(env, config.algo, seed);
    }();
    const int points = static_cast<int>(
        std::min<int64_t>(config.sample_points, env.horizon()));
    const std::vector<int64_t> times = EvenSamplePoints(env.horizon(), points);
    out.trace = SampleTrace(run.regret, run.ledger, run.active_sizes, times);
    out.regret = run.regret.total();
    out.c1_links = run.ledger.server_links();
    out.c2_links = run.ledger.agent_links();
    out.cost = run.ledger.TotalCost(config.c1, config.c2);
    out.rounds = run.communication_rounds();
    out.survivor = run.survivor;
    out.best_arm = env.gaps().best_arm;
    out.best_arm_eliminated = run.best_arm_eliminated;
    out.horizon_exhausted = run.horizon_exhausted;
  } catch (const std::exception& e) {
    out.error = e.what();
  } catch (...) {
    out.error = "unknown error";
  }
  return out;
}

std::vector<ReplicationResult> RunReplicationsSerial(
    const ExperimentConfig& config, const std::string& cell_key) {
  std::vector<ReplicationResult> out;
  out.reserve(config.replications);
  for (int rep = 0; rep < config.replications; ++rep) {
    out.push_back(RunReplication(config, cell_key, rep));
  }
  return out;
}

std::vector<ReplicationResult> RunReplicationsParallel(
    const ExperimentConfig& config, const std::string& cell_key, int jobs) {
  std::vector<ReplicationResult> out(config.replications);
#pragma omp parallel for num_threads(std::max(jobs, 1)) schedule(dynamic)
  for (int rep = 0; rep < config.replications; ++rep) {
    out[rep] = RunReplication(config, cell_key, rep);
  }
  return out;
}

int CellResult::failed_replications() const {
  return static_cast<int>(std::count_if(
      replications.begin(), replications.end(),
      [](const ReplicationResult& r) { return !r.error.empty(); }));
}

CellResult RunCell(const SweepCell& cell, int jobs) {
  CellResult result;
  result.key = cell.key;
  if (!cell.config.feasibility_issues.empty()) {
    result.error = Join(cell.config.feasibility_issues, "; ");
    return result;
  }
  result.replications =
      jobs <= 1 ? RunReplicationsSerial(cell.config, cell.key)
                : RunReplicationsParallel(cell.config, cell.key, jobs);
  return result;
}

void WriteCellOutputs(const CellResult& cell, const ExperimentConfig& config,
                      const std::filesystem::path& dir) {
  const std::string stem = CellFileStem(cell.key);
  std::vector<std::vector<TracePoint>> traces;
  for (const ReplicationResult& r : cell.replications) {
    if (r.error.empty()) traces.push_back(r.trace);
  }
  {
    std::ofstream out(dir / (stem + "_trace.csv"), std::ios::binary);
    WriteTraceCsv(AverageTraces(traces), out);
  }

  CsvTable table({"replication", "seed", "status", "final_regret",
                  "cost_c1_links", "cost_c2_links", "total_cost", "rounds",
                  "survivor", "best_arm", "best_arm_eliminated",
                  "horizon_exhausted"});
  for (const ReplicationResult& r : cell.replications) {
    const bool ok = r.error.empty();
    table.AddRow({std::to_string(r.replication), std::to_string(r.seed),
                  ok ? "ok" : "error: " + r.error,
                  ok ? FormatNumber(r.regret) : "",
                  ok ? std::to_string(r.c1_links) : "",
                  ok ? std::to_string(r.c2_links) : "",
                  ok ? FormatNumber(r.cost) : "",
                  ok ? std::to_string(r.rounds) : "",
                  ok ? std::to_string(r.survivor) : "",
                  ok ? std::to_string(r.best_arm) : "",
                  ok ? (r.best_arm_eliminated ? "1" : "0") : "",
                  ok ? (r.horizon_exhausted ? "1" : "0") : ""});
  }
  std::ofstream out(dir / (stem + "_summary.csv"), std::ios::binary);
  table.Write(out);

  if (!config.export_edges) return;
  for (const ReplicationResult& r : cell.replications) {
    if (!r.error.empty()) continue;
    std::ofstream edges(
        dir / (stem + "_rep" + std::to_string(r.replication) + "_edges.txt"),
        std::ios::binary);
    for (auto [u, v] : r.edges) edges << u << ' ' << v << '\n';
  }
}

void WriteSweepSummary(std::span<const CellResult> cells,
                       const std::filesystem::path& path) {
  CsvTable table({"cell", "replications", "failed", "regret_mean",
                  "regret_std", "regret_min", "regret_max", "cost_mean",
                  "cost_std", "cost_min", "cost_max", "rounds_mean",
                  "error"});
  for (const CellResult& cell : cells) {
    std::vector<double> regret;
    std::vector<double> cost;
    std::vector<double> rounds;
    for (const ReplicationResult& r : cell.replications) {
      if (!r.error.empty()) continue;
      regret.push_back(r.regret);
      cost.push_back(r.cost);
      rounds.push_back(r.rounds);
    }
    std::vector<std::string> row = {
        cell.key, std::to_string(cell.replications.size()),
        std::to_string(cell.failed_replications())};
    if (regret.empty()) {
      row.resize(12);
    } else {
      const Stats rs = Summarize(regret);
      const Stats cs = Summarize(cost);
      for (double x : {rs.mean, rs.stddev, rs.min, rs.max, cs.mean, cs.stddev,
                       cs.min, cs.max, Summarize(rounds).mean}) {
        row.push_back(FormatNumber(x));
      }
    }
    row.push_back(cell.error);
    table.AddRow(std::move(row));
  }
  std::ofstream out(path, std::ios::binary);
  table.Write(out);
}

int RunExperiment(const std::vector<SweepCell>& cells,
                  const std::filesystem::path& out_dir, int jobs,
                  std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  std::vector<CellResult> results;
  bool failures = false;
  for (const SweepCell& cell : cells) {
    CellResult result = RunCell(cell, jobs);
    if (!result.error.empty()) {
      failures = true;
      log << "cell " << cell.key << ": error: " << result.error << '\n';
    } else {
      WriteCellOutputs(result, cell.config, out_dir);
      const int failed = result.failed_replications();
      failures |= failed > 0;
      std::vector<double> regret;
      std::vector<double> cost;
      for (const ReplicationResult& r : result.replications) {
        if (!r.error.empty()) continue;
        regret.push_back(r.regret);
        cost.push_back(r.cost);
      }
      log << "cell " << cell.key << ": replications=" << result.replications.size()
          << " failed=" << failed;
      if (!regret.empty()) {
        log << " regret_mean=" << FormatNumber(Summarize(regret).mean)
            << " cost_mean=" << FormatNumber(Summarize(cost).mean);
      }
      log << '\n';
      for (const ReplicationResult& r : result.replications) {
        if (!r.error.empty()) {
          log << "  replication " << r.replication << ": " << r.error << '\n';
        }
      }
    }
    results.push_back(std::move(result));
  }
  WriteSweepSummary(results, out_dir / "summary.csv");
  return failures ? 2 : 0;
}

}  // namespace fedmab
