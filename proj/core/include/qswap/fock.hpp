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

#ifndef QSWAP_FOCK_HPP_
#define QSWAP_FOCK_HPP_

// Sparse Fock-space states of a set of optical modes joined with two
// memory qutrits (Alice's and Bob's), plus the primitive algebra on them.

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qswap/errors.hpp"

namespace qswap {

using Complex = std::complex<double>;

inline constexpr int kDefaultPhotonCap = 4;
inline constexpr std::size_t kMaxModes = 16;

/// Amplitudes with squared magnitude below this are dropped after every
/// operation.
inline constexpr double kPruneThreshold = 1e-14;

/// Ordered optical mode labels together with the photon-number cap of the
/// truncated Fock space. Two registries are compatible iff they compare
/// equal.
class ModeRegistry {
 public:
  explicit ModeRegistry(std::vector<std::string> labels,
                        int photon_cap = kDefaultPhotonCap);

  std::size_t size() const { return labels_.size(); }
  int photon_cap() const { return photon_cap_; }
  const std::string& label(std::size_t mode) const { return labels_.at(mode); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Throws RegistryError for unknown labels.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const ModeRegistry&) const = default;

 private:
  std::vector<std::string> labels_;
  int photon_cap_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

RegistryPtr make_registry(std::vector<std::string> labels,
                          int photon_cap = kDefaultPhotonCap);

bool same_registry(const RegistryPtr& a, const RegistryPtr& b);

/// Photon counts per mode.
class OccupationVector {
 public:
  OccupationVector() = default;
  explicit OccupationVector(std::size_t modes);
  OccupationVector(std::initializer_list<int> counts);

  std::size_t size() const { return size_; }
  int operator[](std::size_t mode) const { return counts_[mode]; }
  void set(std::size_t mode, int count);
  int total() const;

  std::string to_string() const;

  friend auto operator<=>(const OccupationVector&,
                          const OccupationVector&) = default;
  friend bool operator==(const OccupationVector&,
                         const OccupationVector&) = default;

 private:
  std::uint8_t size_ = 0;
  std::array<std::uint8_t, kMaxModes> counts_{};
};

/// Level of a memory qutrit: 0, 1 or 2.
class MemoryLabel {
 public:
  constexpr MemoryLabel() = default;
  constexpr explicit MemoryLabel(int value) : value_(value) {
    if (value < 0 || value > 2) {
      throw ValidationError("memory label must be 0, 1 or 2");
    }
  }
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(MemoryLabel, MemoryLabel) = default;

 private:
  int value_ = 0;
};

struct JointBasisState {
  MemoryLabel mem_a;
  MemoryLabel mem_b;
  OccupationVector photons;

  /// Row of the 9-dimensional memory basis {|n m>}, n for Alice.
  int memory_index() const { return 3 * mem_a.value() + mem_b.value(); }

  friend auto operator<=>(const JointBasisState&,
                          const JointBasisState&) = default;
  friend bool operator==(const JointBasisState&,
                         const JointBasisState&) = default;
};

/// Sparse amplitude map over joint memory/photon basis states. Heralded
/// branches are allowed to be sub-normalized.
class PureState {
 public:
  using AmplitudeMap = std::map<JointBasisState, Complex>;

  explicit PureState(RegistryPtr registry);

  static PureState vacuum(RegistryPtr registry);
  static PureState basis(RegistryPtr registry, JointBasisState term,
                         Complex amplitude = 1.0);

  const RegistryPtr& registry() const { return registry_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }

  Complex amplitude(const JointBasisState& term) const;

  /// Accumulates `amplitude` onto `term`. Validates length and photon cap.
  void add(const JointBasisState& term, Complex amplitude);

  double norm_squared() const;
  PureState scaled(Complex factor) const;
  /// Throws ValidationError on the zero vector.
  PureState normalized() const;

  /// Drops amplitudes below kPruneThreshold; returns the removed squared
  /// norm.
  double prune();

 private:
  RegistryPtr registry_;
  AmplitudeMap amplitudes_;
};

PureState operator+(const PureState& a, const PureState& b);

/// Weighted list of unit-norm pure states, rho = sum_k w_k |psi_k><psi_k|.
/// Branches are not required to be orthogonal.
class Ensemble {
 public:
  struct Branch {
    double weight;
    PureState state;
  };

  explicit Ensemble(RegistryPtr registry);
  static Ensemble from_pure(const PureState& state);

  const RegistryPtr& registry() const { return registry_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

  /// Adds w |psi><psi| for an arbitrary (possibly sub-normalized) psi: the
  /// stored weight is w * |psi|^2 and the stored state is psi normalized.
  /// Branches below kPruneThreshold are dropped and counted in
  /// dropped_weight().
  void add(double weight, const PureState& state);

  double trace() const;
  double dropped_weight() const { return dropped_weight_; }

 private:
  RegistryPtr registry_;
  std::vector<Branch> branches_;
  double dropped_weight_ = 0.0;
};

using MemoryVector = Eigen::Matrix<Complex, 9, 1>;
using MemoryMatrix = Eigen::Matrix<Complex, 9, 9>;

/// Two-qutrit memory density operator in the basis |n m>, index 3n+m.
class MemoryDensity {
 public:
  MemoryDensity() : matrix_(MemoryMatrix::Zero()) {}
  explicit MemoryDensity(const MemoryMatrix& matrix) : matrix_(matrix) {}

  const MemoryMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

  double hermiticity_error() const;
  double min_eigenvalue() const;

  /// <t|rho|t> / Tr rho for a unit target t.
  double fidelity(const MemoryVector& target) const;
  MemoryDensity normalized() const;

  /// Alice's 3x3 reduced density matrix.
  Eigen::Matrix3cd reduced_alice() const;

 private:
  MemoryMatrix matrix_;
};

Complex inner_product(const PureState& a, const PureState& b);

PureState apply_creation(const PureState& state, std::size_t mode);
PureState apply_annihilation(const PureState& state, std::size_t mode);

/// Product state of factors acting on disjoint modes and memories. A factor
/// whose every term carries label 0 on a memory is treated as not owning
/// that memory.
PureState tensor_product(const PureState& a, const PureState& b);
Ensemble tensor_product(const Ensemble& a, const Ensemble& b);

/// Moves mode `i` of `state` to mode `source_to_target[i]` of `target`.
PureState relabel_modes(const PureState& state, RegistryPtr target,
                        std::span<const std::size_t> source_to_target);

MemoryDensity partial_trace_to_memory(const PureState& state);
MemoryDensity partial_trace_to_memory(const Ensemble& ensemble);

/// Memory-valued overlap sum_ph conj(bra(ph)) psi(m, ph). `photonic_bra`
/// must carry memory labels 0 only.
MemoryVector project_photons(const PureState& photonic_bra,
                             const PureState& state);

/// <bra|rho|ket> for basis states.
Complex density_element(const Ensemble& ensemble, const JointBasisState& bra,
                        const JointBasisState& ket);

/// Amplitudes of a state whose photonic part is a single occupation.
MemoryVector memory_amplitudes(const PureState& state);

/// Every occupation of `modes` modes with at most `max_total` photons, in
/// lexicographic order.
std::vector<OccupationVector> all_occupations(std::size_t modes, int max_total);

/// Von Neumann entropy (bits) of Alice's reduced state.
double entanglement_entropy(const MemoryVector& state);
double entanglement_entropy(const PureState& state);
double reduced_entropy(const MemoryDensity& density);

}  // namespace qswap

#endif  // QSWAP_FOCK_HPP_
