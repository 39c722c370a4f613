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

#include "qswap/optics.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qswap {

namespace {

using Eigen::MatrixXcd;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

MatrixXcd identity_of(const RegistryPtr& modes) {
  const auto n = static_cast<Eigen::Index>(modes->size());
  return MatrixXcd::Identity(n, n);
}

void check_modes(const RegistryPtr& modes,
                 std::initializer_list<std::size_t> indices) {
  for (std::size_t i : indices) {
    if (i >= modes->size()) {
      throw RegistryError("optical element mode index " + std::to_string(i) +
                          " out of range");
    }
  }
}

ModeUnitary hadamard_block(const RegistryPtr& modes, std::size_t i,
                           std::size_t j) {
  check_modes(modes, {i, j});
  if (i == j) throw ValidationError("two-mode element needs distinct modes");
  MatrixXcd m = identity_of(modes);
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  m(a, a) = kInvSqrt2;
  m(a, b) = kInvSqrt2;
  m(b, a) = kInvSqrt2;
  m(b, b) = -kInvSqrt2;
  return ModeUnitary(std::move(m), modes);
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

const RegistryPtr& polarization_input_modes() {
  static const RegistryPtr modes =
      make_registry({"H1", "H2", "H3", "H4", "V1", "V2", "V3", "V4"});
  return modes;
}

const RegistryPtr& polarization_output_modes() {
  static const RegistryPtr modes = make_registry(
      {"H1'", "H2'", "H3'", "H4'", "V1'", "V2'", "V3'", "V4'"});
  return modes;
}

const RegistryPtr& path_input_modes() {
  static const RegistryPtr modes =
      make_registry({"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"});
  return modes;
}

const RegistryPtr& path_output_modes() {
  static const RegistryPtr modes = make_registry(
      {"b1'", "b2'", "b3'", "b4'", "b5'", "b6'", "b7'", "b8'"});
  return modes;
}

const std::array<std::size_t, kBellModes>& path_input_to_polarization() {
  static const std::array<std::size_t, kBellModes> map{2, 3, 4, 5, 0, 1, 6, 7};
  return map;
}

const std::array<std::size_t, kBellModes>& path_output_to_polarization() {
  static const std::array<std::size_t, kBellModes> map{0, 2, 4, 6, 1, 3, 5, 7};
  return map;
}

ModeUnitary beamsplitter(const RegistryPtr& modes, std::size_t i,
                         std::size_t j) {
  return hadamard_block(modes, i, j);
}

ModeUnitary pbs(const RegistryPtr& modes, std::size_t h_i, std::size_t h_j,
                std::size_t v_i, std::size_t v_j) {
  check_modes(modes, {h_i, h_j, v_i, v_j});
  if (h_i == h_j || v_i == v_j || h_i == v_i || h_i == v_j || h_j == v_i ||
      h_j == v_j) {
    throw ValidationError("pbs needs four distinct modes");
  }
  MatrixXcd m = identity_of(modes);
  const auto a = static_cast<Eigen::Index>(h_i);
  const auto b = static_cast<Eigen::Index>(h_j);
  m(a, a) = 0.0;
  m(b, b) = 0.0;
  m(a, b) = 1.0;
  m(b, a) = 1.0;
  return ModeUnitary(std::move(m), modes);
}

ModeUnitary hwp(const RegistryPtr& modes, std::size_t h_i, std::size_t v_i) {
  return hadamard_block(modes, h_i, v_i);
}

ModeUnitary bell_interferometer_polarization() {
  // Rows: H1'..H4', V1'..V4'. Columns: H1..H4, V1..V4.
  static const int entries[kBellModes][kBellModes] = {
      {0, 0, 1, 1, 1, 1, 0, 0},   {1, 1, 0, 0, 0, 0, 1, 1},
      {0, 0, 1, -1, 1, -1, 0, 0}, {1, -1, 0, 0, 0, 0, 1, -1},
      {0, 0, 1, 1, -1, -1, 0, 0}, {1, 1, 0, 0, 0, 0, -1, -1},
      {0, 0, 1, -1, -1, 1, 0, 0}, {1, -1, 0, 0, 0, 0, -1, 1},
  };
  MatrixXcd m(kBellModes, kBellModes);
  for (std::size_t r = 0; r < kBellModes; ++r) {
    for (std::size_t c = 0; c < kBellModes; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          0.5 * entries[r][c];
    }
  }
  return ModeUnitary(std::move(m), polarization_input_modes(),
                     polarization_output_modes());
}

ModeUnitary bell_interferometer_composed() {
  const RegistryPtr& in = polarization_input_modes();
  auto h = [&](int path) { return in->index_of("H" + std::to_string(path)); };
  auto v = [&](int path) { return in->index_of("V" + std::to_string(path)); };

  ModeUnitary circuit = beamsplitter(in, h(1), h(2))
                            .then(beamsplitter(in, v(1), v(2)))
                            .then(beamsplitter(in, h(3), h(4)))
                            .then(beamsplitter(in, v(3), v(4)))
                            .then(pbs(in, h(1), h(3), v(1), v(3)))
                            .then(pbs(in, h(2), h(4), v(2), v(4)));
  for (int path = 1; path <= 4; ++path) {
    circuit = circuit.then(hwp(in, h(path), v(path)));
  }

  const RegistryPtr& out = polarization_output_modes();
  const int detector_of_path[5] = {0, 1, 3, 2, 4};
  MatrixXcd naming = MatrixXcd::Zero(kBellModes, kBellModes);
  for (int path = 1; path <= 4; ++path) {
    const std::string d = std::to_string(detector_of_path[path]) + "'";
    naming(static_cast<Eigen::Index>(out->index_of("H" + d)),
           static_cast<Eigen::Index>(h(path))) = 1.0;
    naming(static_cast<Eigen::Index>(out->index_of("V" + d)),
           static_cast<Eigen::Index>(v(path))) = 1.0;
  }
  return circuit.then(ModeUnitary(std::move(naming), in, out));
}

ModeUnitary bell_interferometer_blockform() {
  static const int h4[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  MatrixXcd m = MatrixXcd::Zero(kBellModes, kBellModes);
  for (int block = 0; block < 2; ++block) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) m(4 * block + r, 4 * block + c) = 0.5 * h4[r][c];
    }
  }
  return ModeUnitary(std::move(m), path_input_modes(), path_output_modes());
}

ModeUnitary blockform_in_polarization_basis() {
  const ModeUnitary blockform = bell_interferometer_blockform();
  const MatrixXcd& block = blockform.matrix();
  const auto& in = path_input_to_polarization();
  const auto& out = path_output_to_polarization();
  MatrixXcd m = MatrixXcd::Zero(kBellModes, kBellModes);
  for (std::size_t r = 0; r < kBellModes; ++r) {
    for (std::size_t c = 0; c < kBellModes; ++c) {
      m(static_cast<Eigen::Index>(out[r]), static_cast<Eigen::Index>(in[c])) =
          block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return ModeUnitary(std::move(m), polarization_input_modes(),
                     polarization_output_modes());
}

LossChannel::LossChannel(double eta, std::vector<std::size_t> modes)
    : eta_(eta), modes_(std::move(modes)) {
  if (!(eta_ >= 0.0 && eta_ <= 1.0)) {
    throw ValidationError("transmittivity must lie in [0, 1]");
  }
}

Ensemble apply_loss(const PureState& state, const LossChannel& channel) {
  const auto& modes = channel.modes();
  const std::size_t n_modes = state.registry()->size();
  for (std::size_t m : modes) {
    if (m >= n_modes) throw RegistryError("loss channel mode out of range");
  }
  const double eta = channel.eta();

  // Largest occupation of each affected mode bounds its Kraus index.
  std::vector<int> max_lost(modes.size(), 0);
  for (const auto& [term, amp] : state.amplitudes()) {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      max_lost[i] = std::max(max_lost[i], term.photons[modes[i]]);
    }
  }

  Ensemble out(state.registry());
  std::vector<int> lost(modes.size(), 0);
  while (true) {
    PureState branch(state.registry());
    for (const auto& [term, amp] : state.amplitudes()) {
      double factor = 1.0;
      JointBasisState after = term;
      for (std::size_t i = 0; i < modes.size() && factor != 0.0; ++i) {
        const int n = term.photons[modes[i]];
        const int k = lost[i];
        if (k > n) {
          factor = 0.0;
          break;
        }
        factor *= std::sqrt(binomial(n, k) * std::pow(eta, n - k) *
                            std::pow(1.0 - eta, k));
        after.photons.set(modes[i], n - k);
      }
      if (factor != 0.0) branch.add(after, amp * factor);
    }
    branch.prune();
    out.add(1.0, branch);

    std::size_t i = 0;
    while (i < lost.size() && lost[i] == max_lost[i]) lost[i++] = 0;
    if (i == lost.size()) break;
    ++lost[i];
  }

  if (out.dropped_weight() > kMaxDroppedLossWeight) {
    throw TruncationError("loss channel dropped branch weight " +
                          std::to_string(out.dropped_weight()));
  }
  return out;
}

Ensemble apply_loss(const Ensemble& ensemble, const LossChannel& channel) {
  Ensemble out(ensemble.registry());
  for (const auto& b : ensemble.branches()) {
    const Ensemble branch_out = apply_loss(b.state, channel);
    for (const auto& lossy : branch_out.branches()) {
      out.add(b.weight * lossy.weight, lossy.state);
    }
  }
  if (out.dropped_weight() > kMaxDroppedLossWeight) {
    throw TruncationError("loss channel dropped branch weight " +
                          std::to_string(out.dropped_weight()));
  }
  return out;
}

}  // namespace qswap
