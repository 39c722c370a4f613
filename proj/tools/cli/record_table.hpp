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

#ifndef QSWAP_CLI_RECORD_TABLE_HPP_
#define QSWAP_CLI_RECORD_TABLE_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qswap::cli {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// Flat records with a fixed column order. Numbers are written with 12
/// significant digits; CSV uses LF line endings and a header row, JSON is
/// an array of flat objects. Absent and non-finite numbers become an empty
/// CSV cell / JSON null.
class RecordTable {
 public:
  using Cell = std::variant<std::monostate, double, std::string, bool>;

  explicit RecordTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  /// Throws std::invalid_argument when the cell count differs from the
  /// column count.
  void add_row(std::vector<Cell> cells);

  void write(std::ostream& out, Format format) const;
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double value);

inline RecordTable::Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

}  // namespace qswap::cli

#endif  // QSWAP_CLI_RECORD_TABLE_HPP_
