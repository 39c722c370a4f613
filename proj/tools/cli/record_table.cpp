// Copyright 2026 The qswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/record_table.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace qswap::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + '"';
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", value);
}

RecordTable::RecordTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void RecordTable::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("row has " + std::to_string(cells.size()) +
                                " cells, table has " +
                                std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(cells));
}

void RecordTable::write(std::ostream& out, Format format) const {
  format == Format::Csv ? write_csv(out) : write_json(out);
}

void RecordTable::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out << (c ? "," : "") << csv_escape(columns_[c]);
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const Cell& cell = row[c];
      if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) out << format_number(*d);
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        out << csv_escape(*s);
      } else if (const auto* b = std::get_if<bool>(&cell)) {
        out << (*b ? "true" : "false");
      }
    }
    out << '\n';
  }
}

void RecordTable::write_json(std::ostream& out) const {
  out << '[';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out << ", ";
      out << json_escape(columns_[c]) << ": ";
      const Cell& cell = rows_[r][c];
      if (const auto* d = std::get_if<double>(&cell)) {
        out << (std::isfinite(*d) ? format_number(*d) : "null");
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        out << json_escape(*s);
      } else if (const auto* b = std::get_if<bool>(&cell)) {
        out << (*b ? "true" : "false");
      } else {
        out << "null";
      }
    }
    out << '}';
  }
  out << (rows_.empty() ? "]\n" : "\n]\n");
}

}  // namespace qswap::cli
