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

#include "qswap/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace qswap {

namespace {

const double kLog2Of3 = std::log2(3.0);

long double ps_total_extended(long double p) {
  const long double q = 1.0L - p;
  return 3.0L * p * p * q * q / (5.0L * p * p - 8.0L * p + 4.0L);
}

double rate_gap(double p) { return rate_qutrit(p) - p * p / 2.0; }

}  // namespace

double analytic_ps_pattern(double p) { return analytic_ps_total(p) / 16.0; }

double analytic_ps_total(double p) {
  const double q = 1.0 - p;
  return 3.0 * p * p * q * q / (5.0 * p * p - 8.0 * p + 4.0);
}

double rate_qutrit(double p) { return kLog2Of3 * analytic_ps_total(p); }

double rate_type2(double p, double eta) { return eta * eta * p * p / 2.0; }

double rate_type1(double p, double eta) { return eta * p / 2.0; }

double golden_section_maximize(long double (*f)(long double), double lo,
                               double hi, double tol) {
  const long double inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double a = lo, b = hi;
  long double c = b - inv_phi * (b - a);
  long double d = a + inv_phi * (b - a);
  long double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return static_cast<double>((a + b) / 2.0L);
}

OptimumResult optimal_p() {
  const double c2 = std::cbrt(2.0);
  const double c4 = std::cbrt(4.0);
  OptimumResult r{};
  r.p_star = (4.0 - 2.0 * c2 + c4) / 5.0;
  r.ps_star = analytic_ps_total(r.p_star);
  r.ps_closed_form =
      3.0 / 125.0 * (16.0 + 97.0 * c2 - 76.0 * c4) / (-2.0 + c2 + 2.0 * c4);
  r.p_search = golden_section_maximize(&ps_total_extended, 0.0, 1.0,
                                       kGoldenSectionTolerance);
  r.ps_search = analytic_ps_total(r.p_search);
  return r;
}

double bisect(double (*f)(double), double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw SolverError("bisection interval does not bracket a root");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double crossover_p() {
  return bisect(&rate_gap, kCrossoverLow, kCrossoverHigh, kCrossoverTolerance);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) throw ValidationError("grid needs at least one point");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = b;
  return out;
}

SweepRecord evaluate_point(double p, double eta, Detector detector,
                           bool all_patterns, double alpha_scale) {
  ProtocolParams params;
  params.p = p;
  params.eta = eta;
  params.detector = detector;
  params.alpha = alpha_balanced(p) * alpha_scale;
  params.validate();

  const Ensemble input = prepare_initial_lossy(params);
  const HeraldedOutcome canonical =
      herald(input, canonical_pattern(), detector);

  SweepRecord r;
  r.p = p;
  r.eta = eta;
  r.detector = detector;
  r.fidelity_canonical = canonical.fidelity_canonical;

  if (all_patterns) {
    double weighted = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& pattern : enumerate_patterns()) {
      const HeraldedOutcome o = herald(input, pattern, detector);
      r.ps += o.probability;
      if (!o.degenerate) weighted += o.probability * o.fidelity_corrected;
      lo = std::min(lo, o.probability);
      hi = std::max(hi, o.probability);
    }
    r.pattern_spread = hi - lo;
    r.fidelity_corrected = r.ps >= kDegenerateProbability
                               ? weighted / r.ps
                               : std::numeric_limits<double>::quiet_NaN();
  } else {
    r.ps = 16.0 * canonical.probability;
    r.fidelity_corrected = canonical.fidelity_corrected;
  }

  r.entropy_bits = canonical.degenerate ? 0.0 : reduced_entropy(canonical.memory);
  r.rate = r.entropy_bits * r.ps;
  if (eta == 1.0 && detector == Detector::Pnrd) {
    r.analytic_ps = analytic_ps_total(p);
    r.abs_err = std::abs(r.ps - *r.analytic_ps);
  }
  return r;
}

std::vector<SweepRecord> sweep(const SweepOptions& options) {
  if (options.p_grid.empty() || options.eta_grid.empty() ||
      options.detectors.empty()) {
    throw ValidationError("sweep grids must be non-empty");
  }
  const std::size_t n_eta = options.eta_grid.size();
  const std::size_t n_det = options.detectors.size();
  const std::size_t total = options.p_grid.size() * n_eta * n_det;
  std::vector<SweepRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        const std::size_t ip = i / (n_eta * n_det);
        const std::size_t ie = (i / n_det) % n_eta;
        const std::size_t id = i % n_det;
        records[i] = evaluate_point(options.p_grid[ip], options.eta_grid[ie],
                                    options.detectors[id], options.all_patterns,
                                    options.alpha_scale);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace qswap

namespace qswap {

namespace {

JointBasisState polarization_term(int mem_a, std::initializer_list<std::size_t> photons) {
  JointBasisState t{MemoryLabel(mem_a), MemoryLabel(0),
                    OccupationVector(kBellModes)};
  for (std::size_t m : photons) t.photons.set(m, 1);
  return t;
}

}  // namespace

std::vector<LossAuditEntry> audit_loss_states(double p, double alpha,
                                              double eta) {
  ProtocolParams params;
  params.p = p;
  params.alpha = alpha;
  params.eta = eta;
  params.validate();

  const auto& modes = polarization_input_modes();
  const std::size_t h1 = modes->index_of("H1"), v1 = modes->index_of("V1");
  const std::size_t h3 = modes->index_of("H3"), v3 = modes->index_of("V3");
  const Ensemble source = apply_loss(prepare_source(p, Node::Alice),
                                     LossChannel(eta, {h1, v1}));
  const Ensemble aux = apply_loss(prepare_aux(alpha), LossChannel(eta, {h3, v3}));

  std::vector<LossAuditEntry> out;
  auto record = [&](std::string factor, std::string element,
                    std::string formula, double printed, double constructive) {
    LossAuditEntry e{std::move(factor), std::move(element), std::move(formula),
                     printed, constructive};
    e.abs_diff = std::abs(printed - constructive);
    e.matches = e.abs_diff <= kAuditTolerance;
    out.push_back(std::move(e));
  };
  auto element = [](const Ensemble& rho, const JointBasisState& bra,
                    const JointBasisState& ket) {
    return density_element(rho, bra, ket).real();
  };

  const auto vac0 = polarization_term(0, {});
  const auto one_h = polarization_term(1, {h1});
  const auto two_v = polarization_term(2, {v1});
  const auto one_vac = polarization_term(1, {});
  const auto two_vac = polarization_term(2, {});
  const double a2 = alpha * alpha;
  const double s_eta = std::sqrt(eta * (1.0 - eta));

  record("source", "<0,vac|rho|0,vac>", "1-p", 1.0 - p,
         element(source, vac0, vac0));
  record("source", "<1,H|rho|1,H>", "eta*p", eta * p,
         element(source, one_h, one_h));
  record("source", "<2,V|rho|2,V>", "eta*p", eta * p,
         element(source, two_v, two_v));
  record("source", "<0,vac|rho|1,H>", "sqrt((1-p)*eta*p)",
         std::sqrt((1.0 - p) * eta * p), element(source, vac0, one_h));
  record("source", "<1,vac|rho|1,vac>", "p/2*(1-eta)", p / 2.0 * (1.0 - eta),
         element(source, one_vac, one_vac));
  record("source", "<2,vac|rho|2,vac>", "p/2*(1-eta)", p / 2.0 * (1.0 - eta),
         element(source, two_vac, two_vac));
  record("source", "trace", "1+eta*p", 1.0 + eta * p, source.trace());

  const auto pair = polarization_term(0, {h3, v3});
  const auto h_only = polarization_term(0, {h3});
  const auto v_only = polarization_term(0, {v3});
  record("aux", "<vac|rho|vac>", "(1-alpha^2)+alpha^2*(1-eta)^2",
         (1.0 - a2) + a2 * (1.0 - eta) * (1.0 - eta), element(aux, vac0, vac0));
  record("aux", "<HV|rho|HV>", "alpha^2*eta^2", a2 * eta * eta,
         element(aux, pair, pair));
  record("aux", "<vac|rho|HV>", "sqrt(1-alpha^2)*alpha*eta",
         std::sqrt(1.0 - a2) * alpha * eta, element(aux, vac0, pair));
  record("aux", "<H0|rho|H0>", "alpha^2*sqrt(eta*(1-eta))", a2 * s_eta,
         element(aux, h_only, h_only));
  record("aux", "<0V|rho|0V>", "alpha^2*sqrt(eta*(1-eta))", a2 * s_eta,
         element(aux, v_only, v_only));
  record("aux", "trace",
         "(1-alpha^2)+alpha^2*eta^2+2*alpha^2*sqrt(eta*(1-eta))+alpha^2*(1-eta)^2",
         (1.0 - a2) + a2 * eta * eta + 2.0 * a2 * s_eta +
             a2 * (1.0 - eta) * (1.0 - eta),
         aux.trace());
  return out;
}

}  // namespace qswap
