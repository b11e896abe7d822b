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

#include "fedmab/csv_writer.h"

#include <cstdio>
#include <stdexcept>

namespace fedmab {
namespace {

void WriteField(const std::string& field, std::ostream& out) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void WriteLine(const std::vector<std::string>& fields, std::ostream& out) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    WriteField(fields[i], out);
  }
  out << '\n';
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::vector<TraceRow> AverageTraces(
    std::span<const std::vector<TracePoint>> traces) {
  if (traces.empty()) return {};
  const size_t n = traces.front().size();
  std::vector<TraceRow> rows(n);
  for (const auto& trace : traces) {
    if (trace.size() != n) {
      throw std::invalid_argument("csv: traces sampled at different points");
    }
    for (size_t j = 0; j < n; ++j) {
      rows[j].t = trace[j].t;
      rows[j].cumulative_regret += trace[j].cumulative_regret;
      rows[j].c1_units += static_cast<double>(trace[j].c1_units);
      rows[j].c2_units += static_cast<double>(trace[j].c2_units);
      rows[j].active_arms += trace[j].active_arms;
    }
  }
  const double scale = 1.0 / static_cast<double>(traces.size());
  for (TraceRow& r : rows) {
    r.cumulative_regret *= scale;
    r.c1_units *= scale;
    r.c2_units *= scale;
    r.active_arms *= scale;
  }
  return rows;
}

void WriteTraceCsv(std::span<const TraceRow> rows, std::ostream& out) {
  CsvTable table({"t", "cumulative_regret", "cumulative_cost_c1_units",
                  "cumulative_cost_c2_units", "active_set_size"});
  for (const TraceRow& r : rows) {
    table.AddRow({std::to_string(r.t), FormatNumber(r.cumulative_regret),
                  FormatNumber(r.c1_units), FormatNumber(r.c2_units),
                  FormatNumber(r.active_arms)});
  }
  table.Write(out);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::AddRow(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) {
    throw std::invalid_argument("csv: row width differs from header");
  }
  rows_.push_back(std::move(fields));
}

void CsvTable::Write(std::ostream& out) const {
  WriteLine(header_, out);
  for (const auto& row : rows_) WriteLine(row, out);
}

}  // namespace fedmab
