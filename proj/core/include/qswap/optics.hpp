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

#ifndef QSWAP_OPTICS_HPP_
#define QSWAP_OPTICS_HPP_

// Optical elements of the qutrit Bell-measurement setup, the composed
// eight-mode interferometer in polarization and path (block-Hadamard)
// labelling, and the photon-loss channel.

#include <array>
#include <cstddef>
#include <vector>

#include "qswap/fock.hpp"
#include "qswap/mode_unitary.hpp"

namespace qswap {

inline constexpr std::size_t kBellModes = 8;

/// Input modes H1..H4, V1..V4 (path index 1..4, two polarizations).
const RegistryPtr& polarization_input_modes();
/// Detector modes H1'..H4', V1'..V4'.
const RegistryPtr& polarization_output_modes();
/// Relabelled input modes a1..a8 of the block-Hadamard form.
const RegistryPtr& path_input_modes();
/// Relabelled detector modes b1'..b8'.
const RegistryPtr& path_output_modes();

/// Polarization index of each path input mode a1..a8:
/// (H3, H4, V1, V2, H1, H2, V3, V4).
const std::array<std::size_t, kBellModes>& path_input_to_polarization();
/// Polarization index of each path detector b1'..b8':
/// (H1', H3', V1', V3', H2', H4', V2', V4').
const std::array<std::size_t, kBellModes>& path_output_to_polarization();

/// 50:50 beamsplitter [[1, 1], [1, -1]]/sqrt(2) on modes (i, j).
ModeUnitary beamsplitter(const RegistryPtr& modes, std::size_t i,
                         std::size_t j);

/// Polarizing beamsplitter: horizontal modes of the two ports are
/// exchanged, vertical modes pass.
ModeUnitary pbs(const RegistryPtr& modes, std::size_t h_i, std::size_t h_j,
                std::size_t v_i, std::size_t v_j);

/// Half-wave plate at 22.5 degrees: Hadamard on (H_i, V_i).
ModeUnitary hwp(const RegistryPtr& modes, std::size_t h_i, std::size_t v_i);

/// The 8x8 polarization-basis interferometer written out entrywise
/// (entries in {0, +-1/2}).
ModeUnitary bell_interferometer_polarization();

/// Same interferometer assembled from its elements: beamsplitters mixing
/// paths (1,2) and (3,4), polarizing beamsplitters on (1,3) and (2,4),
/// half-wave plates on every path, then the detector naming that calls
/// the outputs of physical paths 1, 3, 2, 4 detectors 1', 2', 3', 4'.
ModeUnitary bell_interferometer_composed();

/// diag(H4, H4)/2 on the path-relabelled modes.
ModeUnitary bell_interferometer_blockform();

/// Block form mapped back through the two mode permutations onto the
/// polarization registries.
ModeUnitary blockform_in_polarization_basis();

/// Pure-loss channel of transmittivity eta acting on a subset of modes.
class LossChannel {
 public:
  LossChannel(double eta, std::vector<std::size_t> modes);

  double eta() const { return eta_; }
  const std::vector<std::size_t>& modes() const { return modes_; }

 private:
  double eta_;
  std::vector<std::size_t> modes_;
};

/// Dropped branch mass above this is an error.
inline constexpr double kMaxDroppedLossWeight = 1e-12;

/// Kraus expansion K_k|n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k> on every
/// affected mode; one branch per joint loss pattern.
Ensemble apply_loss(const PureState& state, const LossChannel& channel);
Ensemble apply_loss(const Ensemble& ensemble, const LossChannel& channel);

}  // namespace qswap

#endif  // QSWAP_OPTICS_HPP_
