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

#include "qswap/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

namespace qswap {

ModeRegistry::ModeRegistry(std::vector<std::string> labels, int photon_cap)
    : labels_(std::move(labels)), photon_cap_(photon_cap) {
  if (labels_.empty() || labels_.size() > kMaxModes) {
    throw RegistryError("mode registry must hold between 1 and " +
                        std::to_string(kMaxModes) + " modes");
  }
  if (photon_cap_ < 0 || photon_cap_ > 255) {
    throw RegistryError("photon cap out of range");
  }
}

std::size_t ModeRegistry::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw RegistryError("unknown mode label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

RegistryPtr make_registry(std::vector<std::string> labels, int photon_cap) {
  return std::make_shared<const ModeRegistry>(std::move(labels), photon_cap);
}

bool same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  return a == b || (a && b && *a == *b);
}

// --- OccupationVector -----------------------------------------------------

OccupationVector::OccupationVector(std::size_t modes) {
  if (modes > kMaxModes) throw RegistryError("too many modes");
  size_ = static_cast<std::uint8_t>(modes);
}

OccupationVector::OccupationVector(std::initializer_list<int> counts)
    : OccupationVector(counts.size()) {
  std::size_t i = 0;
  for (int c : counts) set(i++, c);
}

void OccupationVector::set(std::size_t mode, int count) {
  if (mode >= size_) throw RegistryError("mode index out of range");
  if (count < 0 || count > 255) {
    throw ValidationError("photon count out of range");
  }
  counts_[mode] = static_cast<std::uint8_t>(count);
}

int OccupationVector::total() const {
  return std::accumulate(counts_.begin(), counts_.begin() + size_, 0);
}

std::string OccupationVector::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << static_cast<int>(counts_[i]);
  }
  os << ']';
  return os.str();
}

// --- PureState ------------------------------------------------------------

PureState::PureState(RegistryPtr registry) : registry_(std::move(registry)) {
  if (!registry_) throw RegistryError("null mode registry");
}

PureState PureState::vacuum(RegistryPtr registry) {
  JointBasisState term{MemoryLabel(0), MemoryLabel(0),
                       OccupationVector(registry->size())};
  return basis(std::move(registry), term);
}

PureState PureState::basis(RegistryPtr registry, JointBasisState term,
                           Complex amplitude) {
  PureState state(std::move(registry));
  state.add(term, amplitude);
  return state;
}

Complex PureState::amplitude(const JointBasisState& term) const {
  auto it = amplitudes_.find(term);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

void PureState::add(const JointBasisState& term, Complex amplitude) {
  if (term.photons.size() != registry_->size()) {
    throw RegistryError("occupation length " +
                        std::to_string(term.photons.size()) +
                        " does not match registry size " +
                        std::to_string(registry_->size()));
  }
  if (term.photons.total() > registry_->photon_cap()) {
    throw TruncationError("basis term " + term.photons.to_string() +
                          " exceeds photon cap " +
                          std::to_string(registry_->photon_cap()));
  }
  amplitudes_[term] += amplitude;
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const auto& [term, amp] : amplitudes_) total += std::norm(amp);
  return total;
}

PureState PureState::scaled(Complex factor) const {
  PureState out(registry_);
  for (const auto& [term, amp] : amplitudes_) {
    out.amplitudes_.emplace_hint(out.amplitudes_.end(), term, amp * factor);
  }
  out.prune();
  return out;
}

PureState PureState::normalized() const {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw ValidationError("cannot normalize the zero vector");
  return scaled(1.0 / std::sqrt(n2));
}

double PureState::prune() {
  double removed = 0.0;
  std::erase_if(amplitudes_, [&removed](const auto& kv) {
    const double n = std::norm(kv.second);
    if (n < kPruneThreshold) {
      removed += n;
      return true;
    }
    return false;
  });
  return removed;
}

PureState operator+(const PureState& a, const PureState& b) {
  if (!same_registry(a.registry(), b.registry())) {
    throw RegistryError("cannot add states on different registries");
  }
  PureState out = a;
  for (const auto& [term, amp] : b.amplitudes()) out.add(term, amp);
  out.prune();
  return out;
}

// --- Ensemble -------------------------------------------------------------

Ensemble::Ensemble(RegistryPtr registry) : registry_(std::move(registry)) {
  if (!registry_) throw RegistryError("null mode registry");
}

Ensemble Ensemble::from_pure(const PureState& state) {
  Ensemble out(state.registry());
  out.add(1.0, state);
  return out;
}

void Ensemble::add(double weight, const PureState& state) {
  if (weight < 0.0) throw ValidationError("negative branch weight");
  if (!same_registry(registry_, state.registry())) {
    throw RegistryError("branch registry does not match ensemble");
  }
  const double mass = weight * state.norm_squared();
  if (mass < kPruneThreshold) {
    dropped_weight_ += mass;
    return;
  }
  branches_.push_back({mass, state.normalized()});
}

double Ensemble::trace() const {
  double total = 0.0;
  for (const auto& b : branches_) total += b.weight;
  return total;
}

// --- MemoryDensity --------------------------------------------------------

double MemoryDensity::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double MemoryDensity::min_eigenvalue() const {
  MemoryMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<MemoryMatrix> solver(h,
                                                     Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double MemoryDensity::fidelity(const MemoryVector& target) const {
  const double tr = trace();
  if (tr <= 0.0) throw ValidationError("fidelity of a zero density matrix");
  return (target.adjoint() * matrix_ * target)(0, 0).real() / tr;
}

MemoryDensity MemoryDensity::normalized() const {
  const double tr = trace();
  if (tr <= 0.0) throw ValidationError("cannot normalize a zero density");
  return MemoryDensity(matrix_ / tr);
}

Eigen::Matrix3cd MemoryDensity::reduced_alice() const {
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int a2 = 0; a2 < 3; ++a2) {
      for (int b = 0; b < 3; ++b) rho(a, a2) += matrix_(3 * a + b, 3 * a2 + b);
    }
  }
  return rho;
}

// --- operations -----------------------------------------------------------

namespace {

void require_same(const PureState& a, const PureState& b, const char* what) {
  if (!same_registry(a.registry(), b.registry())) {
    throw RegistryError(std::string(what) + ": mode registries differ");
  }
}

void require_mode(const PureState& state, std::size_t mode) {
  if (mode >= state.registry()->size()) {
    throw RegistryError("mode index " + std::to_string(mode) +
                        " out of range");
  }
}

int owner_label(int a, int b, const char* which) {
  if (a != 0 && b != 0) {
    throw RegistryError(std::string("both factors carry memory ") + which);
  }
  return a + b;
}

double entropy_bits(const Eigen::Matrix3cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(
      0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > 1e-15) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

}  // namespace

Complex inner_product(const PureState& a, const PureState& b) {
  require_same(a, b, "inner_product");
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Complex sum{};
  for (const auto& [term, amp] : small.amplitudes()) {
    const Complex other = large.amplitude(term);
    sum += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return sum;
}

PureState apply_creation(const PureState& state, std::size_t mode) {
  require_mode(state, mode);
  PureState out(state.registry());
  for (const auto& [term, amp] : state.amplitudes()) {
    JointBasisState raised = term;
    const int n = term.photons[mode];
    raised.photons.set(mode, n + 1);
    out.add(raised, amp * std::sqrt(static_cast<double>(n + 1)));
  }
  out.prune();
  return out;
}

PureState apply_annihilation(const PureState& state, std::size_t mode) {
  require_mode(state, mode);
  PureState out(state.registry());
  for (const auto& [term, amp] : state.amplitudes()) {
    const int n = term.photons[mode];
    if (n == 0) continue;
    JointBasisState lowered = term;
    lowered.photons.set(mode, n - 1);
    out.add(lowered, amp * std::sqrt(static_cast<double>(n)));
  }
  out.prune();
  return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  require_same(a, b, "tensor_product");
  const std::size_t modes = a.registry()->size();
  PureState out(a.registry());
  for (const auto& [ta, xa] : a.amplitudes()) {
    for (const auto& [tb, xb] : b.amplitudes()) {
      JointBasisState term{
          MemoryLabel(owner_label(ta.mem_a.value(), tb.mem_a.value(), "A")),
          MemoryLabel(owner_label(ta.mem_b.value(), tb.mem_b.value(), "B")),
          OccupationVector(modes)};
      for (std::size_t m = 0; m < modes; ++m) {
        if (ta.photons[m] != 0 && tb.photons[m] != 0) {
          throw RegistryError("tensor_product factors share mode " +
                              a.registry()->label(m));
        }
        term.photons.set(m, ta.photons[m] + tb.photons[m]);
      }
      out.add(term, xa * xb);
    }
  }
  out.prune();
  return out;
}

Ensemble tensor_product(const Ensemble& a, const Ensemble& b) {
  if (!same_registry(a.registry(), b.registry())) {
    throw RegistryError("tensor_product: mode registries differ");
  }
  Ensemble out(a.registry());
  for (const auto& ba : a.branches()) {
    for (const auto& bb : b.branches()) {
      out.add(ba.weight * bb.weight, tensor_product(ba.state, bb.state));
    }
  }
  return out;
}

PureState relabel_modes(const PureState& state, RegistryPtr target,
                        std::span<const std::size_t> source_to_target) {
  const std::size_t modes = state.registry()->size();
  if (source_to_target.size() != modes || target->size() != modes) {
    throw RegistryError("relabel_modes: permutation size mismatch");
  }
  std::vector<bool> seen(modes, false);
  for (std::size_t t : source_to_target) {
    if (t >= modes || seen[t]) {
      throw RegistryError("relabel_modes: not a permutation");
    }
    seen[t] = true;
  }
  PureState out(std::move(target));
  for (const auto& [term, amp] : state.amplitudes()) {
    JointBasisState moved{term.mem_a, term.mem_b, OccupationVector(modes)};
    for (std::size_t m = 0; m < modes; ++m) {
      moved.photons.set(source_to_target[m], term.photons[m]);
    }
    out.add(moved, amp);
  }
  return out;
}

MemoryDensity partial_trace_to_memory(const PureState& state) {
  // Group by photonic configuration; each group contributes |v><v|.
  std::map<OccupationVector, MemoryVector> groups;
  for (const auto& [term, amp] : state.amplitudes()) {
    auto [it, inserted] = groups.try_emplace(term.photons, MemoryVector::Zero());
    it->second(term.memory_index()) += amp;
  }
  MemoryMatrix rho = MemoryMatrix::Zero();
  for (const auto& [photons, v] : groups) rho += v * v.adjoint();
  return MemoryDensity(rho);
}

MemoryDensity partial_trace_to_memory(const Ensemble& ensemble) {
  MemoryMatrix rho = MemoryMatrix::Zero();
  for (const auto& branch : ensemble.branches()) {
    rho += branch.weight * partial_trace_to_memory(branch.state).matrix();
  }
  return MemoryDensity(rho);
}

MemoryVector project_photons(const PureState& photonic_bra,
                             const PureState& state) {
  require_same(photonic_bra, state, "project_photons");
  std::map<OccupationVector, Complex> bra;
  for (const auto& [term, amp] : photonic_bra.amplitudes()) {
    if (term.mem_a.value() != 0 || term.mem_b.value() != 0) {
      throw ValidationError("project_photons: bra carries memory labels");
    }
    bra.emplace(term.photons, std::conj(amp));
  }
  MemoryVector v = MemoryVector::Zero();
  for (const auto& [term, amp] : state.amplitudes()) {
    auto it = bra.find(term.photons);
    if (it != bra.end()) v(term.memory_index()) += it->second * amp;
  }
  return v;
}

Complex density_element(const Ensemble& ensemble, const JointBasisState& bra,
                        const JointBasisState& ket) {
  Complex sum{};
  for (const auto& branch : ensemble.branches()) {
    sum += branch.weight * branch.state.amplitude(bra) *
           std::conj(branch.state.amplitude(ket));
  }
  return sum;
}

MemoryVector memory_amplitudes(const PureState& state) {
  MemoryVector v = MemoryVector::Zero();
  const OccupationVector* photons = nullptr;
  for (const auto& [term, amp] : state.amplitudes()) {
    if (photons && !(*photons == term.photons)) {
      throw ValidationError(
          "state is entangled with photons; memory amplitudes undefined");
    }
    photons = &term.photons;
    v(term.memory_index()) += amp;
  }
  return v;
}

std::vector<OccupationVector> all_occupations(std::size_t modes,
                                              int max_total) {
  std::vector<OccupationVector> out;
  OccupationVector current(modes);
  auto fill = [&](auto&& self, std::size_t mode, int remaining) -> void {
    if (mode == modes) {
      out.push_back(current);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      current.set(mode, n);
      self(self, mode + 1, remaining - n);
    }
    current.set(mode, 0);
  };
  fill(fill, 0, max_total);
  return out;
}

double entanglement_entropy(const MemoryVector& state) {
  if (std::abs(state.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("entanglement_entropy requires a normalized state");
  }
  Eigen::Matrix3cd psi;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) psi(a, b) = state(3 * a + b);
  }
  return entropy_bits(psi * psi.adjoint());
}

double entanglement_entropy(const PureState& state) {
  return entanglement_entropy(memory_amplitudes(state));
}

double reduced_entropy(const MemoryDensity& density) {
  return entropy_bits(density.normalized().reduced_alice());
}

}  // namespace qswap
