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

#ifndef FEDMAB_CSV_WRITER_H_
#define FEDMAB_CSV_WRITER_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fedmab/metrics.h"

namespace fedmab {

// "%.10g" with a '.' decimal separator.
std::string FormatNumber(double value);

// A trace point averaged over replications.
struct TraceRow {
  int64_t t = 0;
  double cumulative_regret = 0.0;
  double c1_units = 0.0;
  double c2_units = 0.0;
  double active_arms = 0.0;
};

std::vector<TraceRow> AverageTraces(
    std::span<const std::vector<TracePoint>> traces);

// Header: t,cumulative_regret,cumulative_cost_c1_units,
// cumulative_cost_c2_units,active_set_size
void WriteTraceCsv(std::span<const TraceRow> rows, std::ostream& out);

// Minimal CSV table: a header and rows of preformatted fields. Fields that
// contain a comma, quote or newline are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void AddRow(std::vector<std::string> fields);
  void Write(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fedmab

#endif  // FEDMAB_CSV_WRITER_H_
