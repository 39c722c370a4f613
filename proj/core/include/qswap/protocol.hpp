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

#ifndef QSWAP_PROTOCOL_HPP_
#define QSWAP_PROTOCOL_HPP_

// Qutrit entanglement swapping: source and auxiliary states, heralding
// patterns, detector measurement operators and heralded outcomes.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qswap/fock.hpp"
#include "qswap/optics.hpp"

namespace qswap {

enum class Detector { Pnrd, Threshold };
enum class Node { Alice, Bob };

std::string to_string(Detector detector);
/// Accepts "pnrd" and "threshold"; throws ValidationError otherwise.
Detector parse_detector(const std::string& name);

/// Auxiliary amplitude that equalizes the three heralded coefficients:
/// p / sqrt(5p^2 - 8p + 4).
double alpha_balanced(double p);

struct ProtocolParams {
  double p = 0.5;
  /// Balanced value when absent.
  std::optional<double> alpha;
  double eta = 1.0;
  Detector detector = Detector::Pnrd;

  double resolved_alpha() const;
  /// Throws ValidationError for out-of-range values.
  void validate() const;
};

/// Detector names follow the polarization output registry.
enum class DetectorLabel { H1p, H2p, H3p, H4p, V1p, V2p, V3p, V4p };

std::string to_string(DetectorLabel label);
DetectorLabel parse_detector_label(const std::string& name);

/// One click in each half of the interferometer: `first` is one of
/// H1', H3', V1', V3' and `second` one of H2', H4', V2', V4'.
class DetectionPattern {
 public:
  DetectionPattern(DetectorLabel first, DetectorLabel second);

  DetectorLabel first() const { return first_; }
  DetectorLabel second() const { return second_; }
  std::string to_string() const;

  friend bool operator==(const DetectionPattern&,
                         const DetectionPattern&) = default;

 private:
  DetectorLabel first_;
  DetectorLabel second_;
};

/// The sixteen heralding patterns in table order, canonical (H1', H2') first.
const std::vector<DetectionPattern>& enumerate_patterns();
DetectionPattern canonical_pattern();

/// (|00> + |12> + |21>)/sqrt(3).
MemoryVector bell_state();

/// Signs of the |00>, |12>, |21> components heralded by `pattern`.
std::array<int, 3> heralded_signs(const DetectionPattern& pattern);
/// Signed superposition (s0|00> + s1|12> + s2|21>)/sqrt(3).
MemoryVector expected_heralded_state(const DetectionPattern& pattern);

/// Source of one node: sqrt(1-p)|0,vac> + sqrt(p/2)(|1,H> + |2,V>), with
/// Alice on path 1 and Bob on path 2.
PureState prepare_source(double p, Node node);
/// sqrt(1-alpha^2)|vac> + alpha|1_H3, 1_V3>.
PureState prepare_aux(double alpha);
PureState prepare_initial(const ProtocolParams& params);
/// Source and auxiliary photons each pass a loss channel of transmittivity
/// eta before the interferometer.
Ensemble prepare_initial_lossy(const ProtocolParams& params);

/// Sum_t w_t |v_t><v_t| on the polarization input modes, where
/// |v_t> = U^dag |detected_t> is a detector occupation pulled back through
/// the interferometer.
class MeasurementOperator {
 public:
  struct Term {
    double weight;
    OccupationVector detected;  // on the path output modes
    PureState vector;           // photon-only, polarization input modes
  };

  MeasurementOperator() = default;
  explicit MeasurementOperator(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  /// <bra|M|ket> for photon-number basis states on the input modes.
  Complex matrix_element(const OccupationVector& bra,
                         const OccupationVector& ket) const;

  /// Largest and smallest nonzero eigenvalue of the represented operator,
  /// computed from the weighted Gram matrix of the term vectors.
  std::pair<double, double> eigenvalue_range() const;

  /// Unnormalized Tr_photons[M rho] on the memories.
  MemoryDensity apply(const Ensemble& rho) const;
  MemoryDensity apply(const PureState& psi) const;

  double expectation(const Ensemble& rho) const;

 private:
  std::vector<Term> terms_;
};

/// Projector onto one detector occupation (path output modes), pulled back
/// to the polarization input modes.
MeasurementOperator pnrd_projector(const OccupationVector& detected);

/// PNRD: exactly one photon on each clicked detector. Threshold: one or
/// more on each clicked detector, up to the photon cap. Non-clicked
/// detectors are constrained to vacuum unless `others_vacuum` is false.
MeasurementOperator measurement_operator(const DetectionPattern& pattern,
                                         Detector detector,
                                         bool others_vacuum = true);

struct HeraldedOutcome {
  DetectionPattern pattern;
  double probability = 0.0;
  /// Set when the pattern has (numerically) zero probability; `memory` is
  /// then the zero matrix and fidelities are NaN.
  bool degenerate = false;
  MemoryDensity memory;  // normalized
  MemoryVector target;
  /// Fidelity against the pattern's signed heralded state.
  double fidelity_corrected = 0.0;
  /// Fidelity against (|00> + |12> + |21>)/sqrt(3).
  double fidelity_canonical = 0.0;
};

inline constexpr double kDegenerateProbability = 1e-15;

HeraldedOutcome herald(const Ensemble& input, const DetectionPattern& pattern,
                       Detector detector);
HeraldedOutcome herald(const PureState& input, const DetectionPattern& pattern,
                       Detector detector);

/// Heralding through an explicit interferometer: the state is propagated to
/// the detectors and projected there. Independent of the pulled-back
/// measurement operators.
HeraldedOutcome herald_direct(const Ensemble& input,
                              const DetectionPattern& pattern,
                              Detector detector, const ModeUnitary& network);

struct SuccessSummary {
  double total = 0.0;
  double min_pattern = 0.0;
  double max_pattern = 0.0;
  std::vector<HeraldedOutcome> outcomes;
};

/// Heralds every pattern on the (lossy when eta < 1) initial state.
SuccessSummary total_success(const ProtocolParams& params);

}  // namespace qswap

#endif  // QSWAP_PROTOCOL_HPP_
