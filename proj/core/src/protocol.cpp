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

#include "qswap/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace qswap {

namespace {

constexpr double kOperatorBoundTolerance = 1e-10;

// Polarization input mode indices.
constexpr std::size_t kH1 = 0, kH2 = 1, kH3 = 2, kV1 = 4, kV2 = 5, kV3 = 6;

const char* const kDetectorNames[] = {"H1'", "H2'", "H3'", "H4'",
                                      "V1'", "V2'", "V3'", "V4'"};

bool in_first_half(DetectorLabel d) {
  return d == DetectorLabel::H1p || d == DetectorLabel::H3p ||
         d == DetectorLabel::V1p || d == DetectorLabel::V3p;
}

std::size_t polarization_index(DetectorLabel d) {
  return static_cast<std::size_t>(d);
}

std::size_t path_index(DetectorLabel d) {
  const auto& map = path_output_to_polarization();
  const auto it = std::find(map.begin(), map.end(), polarization_index(d));
  return static_cast<std::size_t>(it - map.begin());
}

bool accepts(const OccupationVector& n, std::size_t click_a,
             std::size_t click_b, Detector detector, bool others_vacuum) {
  for (std::size_t m = 0; m < n.size(); ++m) {
    if (m == click_a || m == click_b) {
      if (detector == Detector::Pnrd ? n[m] != 1 : n[m] < 1) return false;
    } else if (others_vacuum && n[m] != 0) {
      return false;
    }
  }
  return true;
}

PureState pulled_back(const OccupationVector& detected) {
  static const ModeUnitary inverse = bell_interferometer_blockform().adjoint();
  const auto& to_pol = path_input_to_polarization();
  PureState at_detectors = PureState::basis(
      path_output_modes(),
      JointBasisState{MemoryLabel(0), MemoryLabel(0), detected});
  PureState at_inputs = apply_mode_unitary(at_detectors, inverse);
  return relabel_modes(at_inputs, polarization_input_modes(),
                       std::span<const std::size_t>(to_pol.data(), to_pol.size()));
}

HeraldedOutcome make_outcome(const DetectionPattern& pattern,
                             const MemoryDensity& unnormalized) {
  HeraldedOutcome out{.pattern = pattern, .memory = {}, .target = {}};
  out.target = expected_heralded_state(pattern);
  out.probability = std::max(unnormalized.trace(), 0.0);
  if (out.probability < kDegenerateProbability) {
    out.degenerate = true;
    out.fidelity_corrected = std::numeric_limits<double>::quiet_NaN();
    out.fidelity_canonical = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.memory = unnormalized.normalized();
  out.fidelity_corrected = out.memory.fidelity(out.target);
  out.fidelity_canonical = out.memory.fidelity(bell_state());
  return out;
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

std::string to_string(Detector detector) {
  return detector == Detector::Pnrd ? "pnrd" : "threshold";
}

Detector parse_detector(const std::string& name) {
  if (name == "pnrd") return Detector::Pnrd;
  if (name == "threshold") return Detector::Threshold;
  throw ValidationError("unknown detector model '" + name + "'");
}

double alpha_balanced(double p) {
  require_unit_interval(p, "p");
  return p / std::sqrt(5.0 * p * p - 8.0 * p + 4.0);
}

double ProtocolParams::resolved_alpha() const {
  return alpha ? *alpha : alpha_balanced(p);
}

void ProtocolParams::validate() const {
  require_unit_interval(p, "p");
  if (alpha) require_unit_interval(*alpha, "alpha");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ValidationError("eta must lie in (0, 1]");
  }
}

std::string to_string(DetectorLabel label) {
  return kDetectorNames[static_cast<int>(label)];
}

DetectorLabel parse_detector_label(const std::string& name) {
  for (int i = 0; i < 8; ++i) {
    if (name == kDetectorNames[i]) return static_cast<DetectorLabel>(i);
  }
  throw ValidationError("unknown detector '" + name + "'");
}

DetectionPattern::DetectionPattern(DetectorLabel first, DetectorLabel second)
    : first_(first), second_(second) {
  if (!in_first_half(first) || in_first_half(second)) {
    throw ValidationError("pattern needs one click in each half, got (" +
                          qswap::to_string(first) + ", " +
                          qswap::to_string(second) + ")");
  }
}

std::string DetectionPattern::to_string() const {
  return "(" + qswap::to_string(first_) + "," + qswap::to_string(second_) + ")";
}

const std::vector<DetectionPattern>& enumerate_patterns() {
  using D = DetectorLabel;
  static const std::vector<DetectionPattern> patterns = [] {
    std::vector<DetectionPattern> out;
    const D firsts[2][2] = {{D::H1p, D::V1p}, {D::H3p, D::V3p}};
    const D seconds[2][2] = {{D::H2p, D::V2p}, {D::H4p, D::V4p}};
    for (const auto& f : firsts) {
      for (const auto& s : seconds) {
        for (D a : f) {
          for (D b : s) out.emplace_back(a, b);
        }
      }
    }
    return out;
  }();
  return patterns;
}

DetectionPattern canonical_pattern() {
  return DetectionPattern(DetectorLabel::H1p, DetectorLabel::H2p);
}

MemoryVector bell_state() {
  return expected_heralded_state(canonical_pattern());
}

std::array<int, 3> heralded_signs(const DetectionPattern& pattern) {
  // Rows in enumerate_patterns() order; components |00>, |12>, |21>.
  static const int table[16][3] = {
      {+1, +1, +1}, {-1, +1, +1}, {-1, +1, +1}, {+1, +1, +1},
      {+1, +1, -1}, {+1, -1, +1}, {+1, -1, +1}, {+1, +1, -1},
      {+1, -1, +1}, {+1, +1, -1}, {+1, +1, -1}, {+1, -1, +1},
      {-1, +1, +1}, {+1, +1, +1}, {+1, +1, +1}, {-1, +1, +1},
  };
  const auto& patterns = enumerate_patterns();
  const auto it = std::find(patterns.begin(), patterns.end(), pattern);
  if (it == patterns.end()) {
    throw ValidationError("unknown detection pattern " + pattern.to_string());
  }
  const auto* row = table[it - patterns.begin()];
  return {row[0], row[1], row[2]};
}

MemoryVector expected_heralded_state(const DetectionPattern& pattern) {
  const auto signs = heralded_signs(pattern);
  const double s = 1.0 / std::sqrt(3.0);
  MemoryVector v = MemoryVector::Zero();
  v(0) = signs[0] * s;  // |00>
  v(5) = signs[1] * s;  // |12>
  v(7) = signs[2] * s;  // |21>
  return v;
}

PureState prepare_source(double p, Node node) {
  require_unit_interval(p, "p");
  const RegistryPtr& modes = polarization_input_modes();
  const bool alice = node == Node::Alice;
  const std::size_t h = alice ? kH1 : kH2;
  const std::size_t v = alice ? kV1 : kV2;

  auto term = [&](int memory, int photon_mode) {
    JointBasisState t{MemoryLabel(0), MemoryLabel(0),
                      OccupationVector(modes->size())};
    (alice ? t.mem_a : t.mem_b) = MemoryLabel(memory);
    if (photon_mode >= 0) t.photons.set(static_cast<std::size_t>(photon_mode), 1);
    return t;
  };

  PureState state(modes);
  state.add(term(0, -1), std::sqrt(1.0 - p));
  state.add(term(1, static_cast<int>(h)), std::sqrt(p / 2.0));
  state.add(term(2, static_cast<int>(v)), std::sqrt(p / 2.0));
  state.prune();
  return state;
}

PureState prepare_aux(double alpha) {
  require_unit_interval(alpha, "alpha");
  const RegistryPtr& modes = polarization_input_modes();
  JointBasisState pair{MemoryLabel(0), MemoryLabel(0),
                       OccupationVector(modes->size())};
  pair.photons.set(kH3, 1);
  pair.photons.set(kV3, 1);

  PureState state = PureState::vacuum(modes).scaled(std::sqrt(1.0 - alpha * alpha));
  state.add(pair, alpha);
  state.prune();
  return state;
}

PureState prepare_initial(const ProtocolParams& params) {
  params.validate();
  return tensor_product(tensor_product(prepare_source(params.p, Node::Alice),
                                       prepare_source(params.p, Node::Bob)),
                        prepare_aux(params.resolved_alpha()));
}

Ensemble prepare_initial_lossy(const ProtocolParams& params) {
  params.validate();
  const double eta = params.eta;
  Ensemble alice = apply_loss(prepare_source(params.p, Node::Alice),
                              LossChannel(eta, {kH1, kV1}));
  Ensemble bob = apply_loss(prepare_source(params.p, Node::Bob),
                            LossChannel(eta, {kH2, kV2}));
  Ensemble aux = apply_loss(prepare_aux(params.resolved_alpha()),
                            LossChannel(eta, {kH3, kV3}));
  return tensor_product(tensor_product(alice, bob), aux);
}

// --- MeasurementOperator --------------------------------------------------

MeasurementOperator::MeasurementOperator(std::vector<Term> terms)
    : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.weight < 0.0) throw ValidationError("negative measurement weight");
    if (!same_registry(t.vector.registry(), polarization_input_modes())) {
      throw RegistryError("measurement vectors must live on the input modes");
    }
  }
  const auto [lo, hi] = eigenvalue_range();
  if (lo < -kOperatorBoundTolerance || hi > 1.0 + kOperatorBoundTolerance) {
    throw ValidationError("measurement operator is not bounded by 0 and 1");
  }
}

Complex MeasurementOperator::matrix_element(const OccupationVector& bra,
                                            const OccupationVector& ket) const {
  const JointBasisState b{MemoryLabel(0), MemoryLabel(0), bra};
  const JointBasisState k{MemoryLabel(0), MemoryLabel(0), ket};
  Complex sum{};
  for (const auto& t : terms_) {
    sum += t.weight * t.vector.amplitude(b) * std::conj(t.vector.amplitude(k));
  }
  return sum;
}

std::pair<double, double> MeasurementOperator::eigenvalue_range() const {
  const auto n = static_cast<Eigen::Index>(terms_.size());
  if (n == 0) return {0.0, 0.0};
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& ti = terms_[static_cast<std::size_t>(i)];
      const auto& tj = terms_[static_cast<std::size_t>(j)];
      a(i, j) = std::sqrt(ti.weight * tj.weight) *
                inner_product(ti.vector, tj.vector);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      a, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

MemoryDensity MeasurementOperator::apply(const PureState& psi) const {
  MemoryMatrix rho = MemoryMatrix::Zero();
  for (const auto& t : terms_) {
    const MemoryVector v = project_photons(t.vector, psi);
    rho += t.weight * v * v.adjoint();
  }
  return MemoryDensity(rho);
}

MemoryDensity MeasurementOperator::apply(const Ensemble& rho) const {
  MemoryMatrix out = MemoryMatrix::Zero();
  for (const auto& b : rho.branches()) out += b.weight * apply(b.state).matrix();
  return MemoryDensity(out);
}

double MeasurementOperator::expectation(const Ensemble& rho) const {
  return apply(rho).trace();
}

MeasurementOperator pnrd_projector(const OccupationVector& detected) {
  if (detected.size() != kBellModes) {
    throw RegistryError("detector occupation must cover the eight detectors");
  }
  return MeasurementOperator({{1.0, detected, pulled_back(detected)}});
}

MeasurementOperator measurement_operator(const DetectionPattern& pattern,
                                         Detector detector,
                                         bool others_vacuum) {
  using Key = std::tuple<int, int, int, bool>;
  static std::mutex mutex;
  static std::map<Key, MeasurementOperator> cache;
  const Key key{static_cast<int>(pattern.first()),
                static_cast<int>(pattern.second()), static_cast<int>(detector),
                others_vacuum};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const std::size_t a = path_index(pattern.first());
  const std::size_t b = path_index(pattern.second());
  std::vector<MeasurementOperator::Term> terms;
  for (const auto& n :
       all_occupations(kBellModes, path_output_modes()->photon_cap())) {
    if (accepts(n, a, b, detector, others_vacuum)) {
      terms.push_back({1.0, n, pulled_back(n)});
    }
  }
  MeasurementOperator op(std::move(terms));

  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(op)).first->second;
}

// --- heralding ------------------------------------------------------------

HeraldedOutcome herald(const Ensemble& input, const DetectionPattern& pattern,
                       Detector detector) {
  if (!same_registry(input.registry(), polarization_input_modes())) {
    throw RegistryError("herald expects a state on the polarization inputs");
  }
  return make_outcome(pattern,
                      measurement_operator(pattern, detector).apply(input));
}

HeraldedOutcome herald(const PureState& input, const DetectionPattern& pattern,
                       Detector detector) {
  return herald(Ensemble::from_pure(input), pattern, detector);
}

HeraldedOutcome herald_direct(const Ensemble& input,
                              const DetectionPattern& pattern,
                              Detector detector, const ModeUnitary& network) {
  if (!same_registry(network.output(), polarization_output_modes())) {
    throw RegistryError("herald_direct needs a network ending on the detectors");
  }
  const std::size_t a = polarization_index(pattern.first());
  const std::size_t b = polarization_index(pattern.second());
  MemoryMatrix rho = MemoryMatrix::Zero();
  for (const auto& branch : input.branches()) {
    const PureState out = apply_mode_unitary(branch.state, network);
    std::map<OccupationVector, MemoryVector> kept;
    for (const auto& [term, amp] : out.amplitudes()) {
      if (!accepts(term.photons, a, b, detector, true)) continue;
      auto [it, inserted] = kept.try_emplace(term.photons, MemoryVector::Zero());
      it->second(term.memory_index()) += amp;
    }
    for (const auto& [n, v] : kept) rho += branch.weight * v * v.adjoint();
  }
  return make_outcome(pattern, MemoryDensity(rho));
}

SuccessSummary total_success(const ProtocolParams& params) {
  const Ensemble input = prepare_initial_lossy(params);
  SuccessSummary summary;
  summary.min_pattern = std::numeric_limits<double>::infinity();
  summary.max_pattern = -std::numeric_limits<double>::infinity();
  for (const auto& pattern : enumerate_patterns()) {
    HeraldedOutcome outcome = herald(input, pattern, params.detector);
    summary.total += outcome.probability;
    summary.min_pattern = std::min(summary.min_pattern, outcome.probability);
    summary.max_pattern = std::max(summary.max_pattern, outcome.probability);
    summary.outcomes.push_back(std::move(outcome));
  }
  return summary;
}

}  // namespace qswap
