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

// Runs a federated bandit experiment sweep from a JSON config.
//
//   fedmab config.json [--override key.path=value]... [--out dir]
//          [--jobs n] [--validate]

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedmab/experiment.h"

int main(int argc, char** argv) {
  CLI::App app{"Federated multi-armed bandit experiment runner"};
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int jobs = 1;
  bool validate_only = false;
  app.add_option("config", config_path, "JSON experiment config")
      ->required();
  app.add_option("--override", overrides, "Set a field: key.path=value")
      ->take_all();
  app.add_option("--out", out_dir, "Output directory (default: config output)");
  app.add_option("--jobs", jobs, "Replications run concurrently")
      ->check(CLI::PositiveNumber);
  app.add_flag("--validate", validate_only, "Check the config and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::vector<fedmab::SweepCell> cells;
  try {
    nlohmann::json doc = fedmab::LoadConfigDocument(config_path);
    for (const std::string& o : overrides) fedmab::ApplyOverride(doc, o);
    cells = fedmab::ExpandSweep(doc);
  } catch (const fedmab::ConfigError& e) {
    for (const std::string& d : e.diagnostics()) {
      std::cerr << "config error: " << d << '\n';
    }
    return 1;
  }

  if (validate_only) {
    bool feasible = true;
    for (const fedmab::SweepCell& cell : cells) {
      for (const std::string& why : cell.config.feasibility_issues) {
        std::cerr << "config error: [" << cell.key << "] " << why << '\n';
        feasible = false;
      }
    }
    if (!feasible) return 1;
    std::cout << "ok: " << cells.size() << " cell(s)\n";
    return 0;
  }

  const std::filesystem::path dir =
      out_dir.empty() ? cells.front().config.output : out_dir;
  try {
    return fedmab::RunExperiment(cells, dir, jobs, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
