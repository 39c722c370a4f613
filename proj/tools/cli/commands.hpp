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

#ifndef QSWAP_CLI_COMMANDS_HPP_
#define QSWAP_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/record_table.hpp"
#include "qswap/protocol.hpp"

namespace qswap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// "a:b:n" grid of n evenly spaced points from a to b, all inside [0, 1].
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

/// Throws std::invalid_argument on malformed or out-of-range grids.
GridSpec parse_grid(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<double> p;
  std::optional<GridSpec> p_grid;
  std::optional<double> eta;
  std::optional<GridSpec> eta_grid;
  std::optional<Detector> detector;
  bool all_patterns = false;
  Format format = Format::Csv;
  std::string out_path;  // empty: standard output
  std::uint64_t seed = 1;
  double alpha_scale = 1.0;
  unsigned threads = 0;
};

/// Raised when the output file cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int cmd_verify_table1(const RunConfig& config, std::ostream& out,
                      std::ostream& err);
int cmd_sweep_rate(const RunConfig& config, std::ostream& out,
                   std::ostream& err);
int cmd_sweep_loss(const RunConfig& config, std::ostream& out,
                   std::ostream& err);
int cmd_optimum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_crossover(const RunConfig& config, std::ostream& out,
                  std::ostream& err);
int cmd_audit_loss(const RunConfig& config, std::ostream& out,
                   std::ostream& err);
int cmd_check_dominance(const RunConfig& config, std::ostream& out,
                        std::ostream& err);

/// Dispatches on config.command. Usage and I/O errors map to kExitUsage.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses argv, configures logging from
/// QSWAP_LOG and runs the subcommand.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace qswap::cli

#endif  // QSWAP_CLI_COMMANDS_HPP_
