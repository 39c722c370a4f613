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

#ifndef QSWAP_ANALYSIS_HPP_
#define QSWAP_ANALYSIS_HPP_

// Closed-form success probabilities, baseline rates, the optimum and
// crossover solvers, and (p, eta, detector) sweeps of the simulator.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qswap/protocol.hpp"

namespace qswap {

/// Success probability of one heralding pattern, ideal case.
double analytic_ps_pattern(double p);
/// 3 p^2 (1-p)^2 / (5p^2 - 8p + 4).
double analytic_ps_total(double p);

/// log2(3) times the ideal total success probability.
double rate_qutrit(double p);
/// Two-photon (polarization) qubit swapping: eta^2 p^2 / 2.
double rate_type2(double p, double eta);
/// Single-photon qubit swapping: eta p / 2.
double rate_type1(double p, double eta);

struct OptimumResult {
  double p_star;         // (4 - 2 cbrt(2) + cbrt(4)) / 5
  double ps_star;        // analytic_ps_total(p_star)
  double ps_closed_form; // 3/125 (16 + 97 cbrt2 - 76 cbrt4)/(-2 + cbrt2 + 2 cbrt4)
  double p_search;       // golden-section maximizer of analytic_ps_total
  double ps_search;
};

inline constexpr double kGoldenSectionTolerance = 1e-9;

OptimumResult optimal_p();

/// Golden-section maximization on [lo, hi], carried out in extended
/// precision so the flat top of the objective still resolves to `tol`.
double golden_section_maximize(long double (*f)(long double), double lo,
                               double hi, double tol);

inline constexpr double kCrossoverLow = 0.62;
inline constexpr double kCrossoverHigh = 0.99;
inline constexpr double kCrossoverTolerance = 1e-6;

/// Root of rate_qutrit(p) - p^2/2 on (0.62, 0.99) by bisection.
double crossover_p();
/// Bisection on [lo, hi]; throws SolverError without a sign change.
double bisect(double (*f)(double), double lo, double hi, double tol);

/// Evenly spaced grid from a to b with n points (n = 1 gives {a}).
std::vector<double> linspace(double a, double b, std::size_t n);

struct SweepRecord {
  double p = 0.0;
  double eta = 1.0;
  Detector detector = Detector::Pnrd;
  double ps = 0.0;
  double fidelity_corrected = 0.0;
  double fidelity_canonical = 0.0;
  double entropy_bits = 0.0;
  double rate = 0.0;
  /// Max minus min single-pattern probability (0 in canonical mode).
  double pattern_spread = 0.0;
  /// Present on ideal rows (eta = 1, PNRD).
  std::optional<double> analytic_ps;
  std::optional<double> abs_err;
};

struct SweepOptions {
  std::vector<double> p_grid;
  std::vector<double> eta_grid{1.0};
  std::vector<Detector> detectors{Detector::Pnrd};
  /// Herald all sixteen patterns instead of sixteen times the canonical one.
  bool all_patterns = false;
  /// Multiplies the balanced auxiliary amplitude.
  double alpha_scale = 1.0;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// One record per (p, eta, detector), ordered p-major, then eta, then
/// detector in the order given.
std::vector<SweepRecord> sweep(const SweepOptions& options);

/// Single grid point of sweep().
SweepRecord evaluate_point(double p, double eta, Detector detector,
                           bool all_patterns, double alpha_scale = 1.0);

/// One density-matrix element of a lossy input factor, as given by the
/// closed-form lossy states quoted in the literature versus the Kraus
/// expansion actually applied by apply_loss().
struct LossAuditEntry {
  std::string factor;   // "source" or "aux"
  std::string element;  // e.g. "<1,H|rho|1,H>"
  std::string printed_formula;
  double printed = 0.0;
  double constructive = 0.0;
  double abs_diff = 0.0;
  bool matches = false;
};

inline constexpr double kAuditTolerance = 1e-12;

/// Compares populations, coherences and traces of the lossy source and
/// auxiliary states. The constructive channel is the reference.
std::vector<LossAuditEntry> audit_loss_states(double p, double alpha,
                                              double eta);

}  // namespace qswap

#endif  // QSWAP_ANALYSIS_HPP_
