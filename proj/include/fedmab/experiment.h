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

#ifndef FEDMAB_EXPERIMENT_H_
#define FEDMAB_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fedmab/bandit_env.h"
#include "fedmab/protocols.h"
#include "fedmab/topology.h"

namespace fedmab {

// A list of "field.path: message" diagnostics.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

enum class Structure { kCentralized, kDecentralized, kHybrid };

struct ComponentSpec {
  int size = 1;
  TopologySpec graph;
};

struct ExperimentConfig {
  EnvConfig env;
  Structure structure = Structure::kCentralized;
  AlgorithmParams algo;
  TopologySpec graph;                     // decentralized
  std::vector<ComponentSpec> components;  // hybrid
  bool export_edges = false;
  double c1 = 1.0;
  double c2 = 1.0;
  int replications = 1;
  uint64_t seed = 0;
  // Same replication seeds in every sweep cell.
  bool paired_seeds = false;
  std::string output = "results";
  int sample_points = 100;
  // Topology parameters that cannot yield a connected graph. Validation
  // reports them; a run records them as a failure of this cell only.
  std::vector<std::string> feasibility_issues;
};

// Reads a JSON document; syntax errors are reported as
// "<path>:<line>:<column>: <message>" inside a ConfigError.
nlohmann::json LoadConfigDocument(const std::filesystem::path& path);
nlohmann::json ParseConfigText(const std::string& text,
                               const std::string& source_name);

// Applies "a.b.c=value". The value is parsed as JSON when possible and
// kept as a string otherwise. Missing intermediate objects are created.
void ApplyOverride(nlohmann::json& doc, const std::string& assignment);

// Full structural validation of a document without its "sweep" block.
// Throws ConfigError listing every problem found.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& doc);

struct SweepCell {
  std::string key;  // "path=value;path=value", or "base" without a sweep
  nlohmann::json document;
  ExperimentConfig config;
};

// Cartesian product of the "sweep" block (an object mapping field paths to
// value lists, iterated in key order). Every cell is validated; the
// diagnostics of all cells are collected into one ConfigError. Topology
// infeasibility is not a config error here; it surfaces per cell.
std::vector<SweepCell> ExpandSweep(const nlohmann::json& doc);

// hash(base seed, cell key, replication); the cell key is left out with
// paired seeds.
uint64_t ReplicationSeed(const ExperimentConfig& config,
                         const std::string& cell_key, int replication);

// Filesystem-safe stem for a cell key.
std::string CellFileStem(const std::string& cell_key);

struct ReplicationResult {
  int replication = 0;
  uint64_t seed = 0;
  std::string error;  // empty on success
  double regret = 0.0;
  int64_t c1_links = 0;
  int64_t c2_links = 0;
  double cost = 0.0;
  int rounds = 0;
  int survivor = -1;
  int best_arm = 0;
  bool best_arm_eliminated = false;
  bool horizon_exhausted = false;
  std::vector<TracePoint> trace;
  // Graph edges in global agent ids, when export_edges is set.
  std::vector<std::pair<int, int>> edges;
};

// One seeded run of the configured structure.
ReplicationResult RunReplication(const ExperimentConfig& config,
                                 const std::string& cell_key,
                                 int replication);

// All replications of a cell, in replication order.
std::vector<ReplicationResult> RunReplicationsSerial(
    const ExperimentConfig& config, const std::string& cell_key);
// Same results, replications spread over up to `jobs` OpenMP threads.
std::vector<ReplicationResult> RunReplicationsParallel(
    const ExperimentConfig& config, const std::string& cell_key, int jobs);

struct CellResult {
  std::string key;
  std::string error;  // set when the cell could not run at all
  std::vector<ReplicationResult> replications;
  int failed_replications() const;
};

CellResult RunCell(const SweepCell& cell, int jobs);

// Writes <stem>_trace.csv, <stem>_summary.csv and optional edge lists.
void WriteCellOutputs(const CellResult& cell, const ExperimentConfig& config,
                      const std::filesystem::path& dir);
// One row per cell: statistics of final regret and cost over replications.
void WriteSweepSummary(std::span<const CellResult> cells,
                       const std::filesystem::path& path);

// Runs every cell, writes outputs under `out_dir`, prints one line per cell
// to `log`. Returns 0, or 2 when any cell or replication failed.
int RunExperiment(const std::vector<SweepCell>& cells,
                  const std::filesystem::path& out_dir, int jobs,
                  std::ostream& log);

}  // namespace fedmab

#endif  // FEDMAB_EXPERIMENT_H_
