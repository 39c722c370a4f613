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

#include "cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "qswap/analysis.hpp"
#include "qswap/random_states.hpp"

namespace qswap::cli {

namespace {

constexpr double kTable1FidelityTolerance = 1e-9;
constexpr double kTable1ProbabilityTolerance = 1e-12;
constexpr std::size_t kDominanceTrials = 100;

void emit(const RunConfig& config, const RecordTable& table, std::ostream& out) {
  if (config.out_path.empty()) {
    table.write(out, config.format);
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open '" + config.out_path + "' for writing");
  table.write(file, config.format);
  file.flush();
  if (!file) throw OutputError("failed writing '" + config.out_path + "'");
  spdlog::info("wrote {} records to {}", table.rows(), config.out_path);
}

std::vector<double> grid_or_scalar(const std::optional<GridSpec>& grid,
                                   const std::optional<double>& scalar,
                                   const GridSpec& fallback) {
  if (scalar) return {*scalar};
  return (grid ? *grid : fallback).values();
}

std::string sign_string(const std::array<int, 3>& signs) {
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ',';
    out += signs[i] > 0 ? '+' : '-';
  }
  return out;
}

spdlog::level::level_enum log_level_from_env() {
  const char* env = std::getenv("QSWAP_LOG");
  if (!env || !*env) return spdlog::level::warn;
  return spdlog::level::from_str(env);
}

}  // namespace

std::vector<double> GridSpec::values() const {
  return linspace(start, stop, count);
}

GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  GridSpec g;
  char c1 = 0, c2 = 0;
  long long count = 0;
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> count) || c1 != ':' ||
      c2 != ':' || !(in >> std::ws).eof()) {
    throw std::invalid_argument("grid '" + text + "' is not of the form a:b:n");
  }
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (g.start < 0.0 || g.start > 1.0 || g.stop < 0.0 || g.stop > 1.0) {
    throw std::invalid_argument("grid '" + text + "' leaves [0, 1]");
  }
  g.count = static_cast<std::size_t>(count);
  return g;
}

int cmd_verify_table1(const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
  ProtocolParams params;
  params.p = config.p.value_or(0.5);
  params.alpha = alpha_balanced(params.p) * config.alpha_scale;
  params.detector = config.detector.value_or(Detector::Pnrd);
  params.validate();

  const Ensemble input = Ensemble::from_pure(prepare_initial(params));
  std::vector<HeraldedOutcome> outcomes;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& pattern : enumerate_patterns()) {
    outcomes.push_back(herald(input, pattern, params.detector));
    lo = std::min(lo, outcomes.back().probability);
    hi = std::max(hi, outcomes.back().probability);
  }
  const bool probabilities_equal = hi - lo <= kTable1ProbabilityTolerance;

  RecordTable table({"pattern", "signs", "probability", "fidelity",
                     "fidelity_canonical", "status"});
  int passed = 0;
  bool any_degenerate = false;
  std::vector<std::string> failures;
  for (const auto& o : outcomes) {
    std::string status;
    if (o.degenerate) {
      status = "degenerate";
      any_degenerate = true;
    } else if (o.fidelity_corrected >= 1.0 - kTable1FidelityTolerance) {
      status = "pass";
      ++passed;
    } else {
      status = "fail";
      failures.push_back(o.pattern.to_string());
    }
    table.add_row({o.pattern.to_string(), sign_string(heralded_signs(o.pattern)),
                   o.probability, o.fidelity_corrected, o.fidelity_canonical,
                   status});
  }
  emit(config, table, out);

  if (any_degenerate) {
    err << "verify-table1: degenerate, every pattern has zero probability at p="
        << format_number(params.p) << '\n';
    return kExitVerificationFailure;
  }
  for (const auto& name : failures) {
    err << "verify-table1: pattern " << name
        << " does not herald its listed state\n";
  }
  if (!probabilities_equal) {
    err << "verify-table1: pattern probabilities differ by "
        << format_number(hi - lo) << '\n';
  }
  err << "verify-table1: " << passed << "/" << outcomes.size()
      << " patterns pass\n";
  return failures.empty() && probabilities_equal ? kExitOk
                                                 : kExitVerificationFailure;
}

int cmd_sweep_rate(const RunConfig& config, std::ostream& out, std::ostream&) {
  SweepOptions options;
  options.p_grid = grid_or_scalar(config.p_grid, config.p, {0.01, 0.99, 99});
  options.all_patterns = config.all_patterns;
  options.threads = config.threads;
  const auto records = sweep(options);

  RecordTable table({"p", "P_s_qutrit", "rate_qutrit", "rate_type2",
                     "analytic_P_s", "abs_err"});
  for (const auto& r : records) {
    table.add_row({r.p, r.ps, r.rate, rate_type2(r.p, 1.0),
                   optional_cell(r.analytic_ps), optional_cell(r.abs_err)});
  }
  emit(config, table, out);
  return kExitOk;
}

int cmd_sweep_loss(const RunConfig& config, std::ostream& out, std::ostream&) {
  SweepOptions options;
  options.p_grid = grid_or_scalar(config.p_grid, config.p, {0.05, 0.95, 19});
  options.eta_grid = grid_or_scalar(config.eta_grid, config.eta, {0.5, 1.0, 11});
  options.detectors = config.detector
                          ? std::vector<Detector>{*config.detector}
                          : std::vector<Detector>{Detector::Pnrd,
                                                  Detector::Threshold};
  options.all_patterns = config.all_patterns;
  options.alpha_scale = config.alpha_scale;
  options.threads = config.threads;
  for (double eta : options.eta_grid) {
    if (!(eta > 0.0)) throw ValidationError("eta must lie in (0, 1]");
  }
  const auto records = sweep(options);

  RecordTable table({"p", "eta", "detector", "P_s", "fidelity_corrected",
                     "fidelity_canonical", "rate"});
  for (const auto& r : records) {
    table.add_row({r.p, r.eta, to_string(r.detector), r.ps,
                   r.fidelity_corrected, r.fidelity_canonical, r.rate});
  }
  emit(config, table, out);
  return kExitOk;
}

int cmd_optimum(const RunConfig& config, std::ostream& out, std::ostream&) {
  const OptimumResult r = optimal_p();
  RecordTable table({"p_star", "P_s_star", "P_s_closed_form",
                     "p_golden_section", "P_s_golden_section"});
  table.add_row({r.p_star, r.ps_star, r.ps_closed_form, r.p_search, r.ps_search});
  emit(config, table, out);
  return kExitOk;
}

int cmd_crossover(const RunConfig& config, std::ostream& out, std::ostream&) {
  const double p = crossover_p();
  RecordTable table({"p_crossover", "rate_qutrit", "rate_type2"});
  table.add_row({p, rate_qutrit(p), rate_type2(p, 1.0)});
  emit(config, table, out);
  return kExitOk;
}

int cmd_audit_loss(const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
  const double p = config.p.value_or(0.5);
  const double eta = config.eta.value_or(0.5);
  const double alpha = alpha_balanced(p) * config.alpha_scale;
  const auto entries = audit_loss_states(p, alpha, eta);

  RecordTable table({"factor", "element", "printed_formula", "p", "alpha",
                     "eta", "printed", "constructive", "abs_diff", "status"});
  int mismatches = 0;
  for (const auto& e : entries) {
    mismatches += !e.matches;
    table.add_row({e.factor, e.element, e.printed_formula, p, alpha, eta,
                   e.printed, e.constructive, e.abs_diff,
                   std::string(e.matches ? "match" : "mismatch")});
  }
  emit(config, table, out);
  err << "audit-loss: " << mismatches << " of " << entries.size()
      << " printed elements differ from the constructive channel\n";
  return kExitOk;
}

int cmd_check_dominance(const RunConfig& config, std::ostream& out,
                        std::ostream& err) {
  std::mt19937_64 rng(config.seed);
  RecordTable table({"pattern", "trials", "violations", "min_margin"});
  int total_violations = 0;
  for (const auto& pattern : enumerate_patterns()) {
    const auto& pnrd = measurement_operator(pattern, Detector::Pnrd);
    const auto& th = measurement_operator(pattern, Detector::Threshold);
    int violations = 0;
    double min_margin = INFINITY;
    for (std::size_t t = 0; t < kDominanceTrials; ++t) {
      const Ensemble rho =
          random_ensemble(rng, polarization_input_modes(), 3, 12);
      const double margin = th.expectation(rho) - pnrd.expectation(rho);
      min_margin = std::min(min_margin, margin);
      violations += margin < -1e-12;
    }
    total_violations += violations;
    table.add_row({pattern.to_string(), static_cast<double>(kDominanceTrials),
                   static_cast<double>(violations), min_margin});
  }
  emit(config, table, out);
  err << "check-dominance: " << total_violations << " violations\n";
  return total_violations ? kExitVerificationFailure : kExitOk;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string,
                        std::function<int(const RunConfig&, std::ostream&,
                                          std::ostream&)>>
      commands{{"verify-table1", cmd_verify_table1},
               {"sweep-rate", cmd_sweep_rate},
               {"sweep-loss", cmd_sweep_loss},
               {"optimum", cmd_optimum},
               {"crossover", cmd_crossover},
               {"audit-loss", cmd_audit_loss},
               {"check-dominance", cmd_check_dominance}};
  const auto it = commands.find(config.command);
  if (it == commands.end()) {
    err << "unknown command '" << config.command << "'\n";
    return kExitUsage;
  }
  try {
    return it->second(config, out, err);
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  auto logger = spdlog::get("qswap");
  if (!logger) logger = spdlog::stderr_logger_st("qswap");
  spdlog::set_default_logger(logger);
  spdlog::set_level(log_level_from_env());

  CLI::App app{"Qutrit entanglement-swapping simulator"};
  app.require_subcommand(1);

  RunConfig config;
  std::string p_grid, eta_grid, detector, format = "csv";
  app.add_option("--p", config.p, "photon generation probability")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--p-grid", p_grid, "p grid as a:b:n");
  app.add_option("--eta", config.eta, "channel transmittivity")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--eta-grid", eta_grid, "eta grid as a:b:n");
  app.add_option("--detector", detector, "pnrd or threshold")
      ->check(CLI::IsMember({"pnrd", "threshold"}));
  app.add_flag("--all-patterns", config.all_patterns,
               "herald all sixteen patterns instead of 16x the canonical one");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out_path, "output path (default stdout)");
  app.add_option("--seed", config.seed, "seed for randomized checks");
  app.add_option("--alpha-scale", config.alpha_scale,
                 "multiplier on the balanced auxiliary amplitude")
      ->check(CLI::Range(0.0, 10.0));
  app.add_option("--threads", config.threads, "sweep worker threads (0: auto)");

  const std::pair<const char*, const char*> subcommands[] = {
      {"verify-table1", "check every heralding pattern against its listed state"},
      {"sweep-rate", "ideal success probability and rate versus p"},
      {"sweep-loss", "success probability and fidelity versus p and eta"},
      {"optimum", "success-probability maximum"},
      {"crossover", "p where the qutrit and two-photon qubit rates cross"},
      {"audit-loss", "compare closed-form lossy states with the loss channel"},
      {"check-dominance", "randomized threshold-vs-PNRD operator check"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
    config.command = app.get_subcommands().front()->get_name();
    if (!p_grid.empty()) config.p_grid = parse_grid(p_grid);
    if (!eta_grid.empty()) config.eta_grid = parse_grid(eta_grid);
    if (!detector.empty()) config.detector = parse_detector(detector);
    config.format = parse_format(format);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  spdlog::debug("running {}", config.command);
  return run_command(config, out, err);
}

}  // namespace qswap::cli
