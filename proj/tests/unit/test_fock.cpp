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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qswap/fock.hpp"
#include "qswap/random_states.hpp"

namespace qswap {
namespace {

RegistryPtr three_modes() { return make_registry({"a", "b", "c"}); }

PureState fock(const RegistryPtr& r, OccupationVector occ, int ma = 0,
               int mb = 0) {
  return PureState::basis(r, {MemoryLabel(ma), MemoryLabel(mb), occ});
}

TEST(ModeRegistry, LooksUpLabels) {
  const auto r = three_modes();
  EXPECT_EQ(r->size(), 3u);
  EXPECT_EQ(r->index_of("c"), 2u);
  EXPECT_EQ(r->label(1), "b");
  EXPECT_THROW(r->index_of("d"), RegistryError);
}

TEST(ModeRegistry, RejectsBadShapes) {
  EXPECT_THROW(ModeRegistry({}), RegistryError);
  EXPECT_THROW(ModeRegistry(std::vector<std::string>(17, "x")), RegistryError);
  EXPECT_THROW(ModeRegistry({"a"}, -1), RegistryError);
}

TEST(OccupationVector, TotalsAndFormats) {
  OccupationVector v{1, 0, 2};
  EXPECT_EQ(v.total(), 3);
  EXPECT_EQ(v.to_string(), "[1,0,2]");
  v.set(1, 1);
  EXPECT_EQ(v[1], 1);
  EXPECT_THROW(v.set(5, 1), RegistryError);
}

TEST(MemoryLabel, RejectsOutOfRange) {
  EXPECT_THROW(MemoryLabel(3), ValidationError);
  EXPECT_THROW(MemoryLabel(-1), ValidationError);
  EXPECT_EQ(MemoryLabel(2).value(), 2);
}

TEST(PureState, PhotonCapRaisesTruncation) {
  const auto r = make_registry({"a", "b"}, 2);
  PureState s(r);
  EXPECT_THROW(s.add({{}, {}, OccupationVector{2, 1}}, 1.0), TruncationError);
  EXPECT_THROW(s.add({{}, {}, OccupationVector{1}}, 1.0), RegistryError);
  EXPECT_THROW(apply_creation(fock(r, {2, 0}), 1), TruncationError);
}

TEST(PureState, PrunesTinyAmplitudes) {
  PureState s(three_modes());
  s.add({{}, {}, OccupationVector{1, 0, 0}}, 1.0);
  s.add({{}, {}, OccupationVector{0, 1, 0}}, 1e-9);
  s.prune();
  EXPECT_EQ(s.size(), 1u);
}

TEST(PureState, NormalizeZeroThrows) {
  EXPECT_THROW(PureState(three_modes()).normalized(), ValidationError);
}

TEST(Ladder, CreationAndAnnihilationFactors) {
  const auto r = three_modes();
  const auto s = apply_creation(fock(r, {1, 0, 0}), 0);
  EXPECT_NEAR(std::abs(s.amplitude({{}, {}, OccupationVector{2, 0, 0}})),
              std::sqrt(2.0), 1e-15);
  const auto d = apply_annihilation(fock(r, {0, 3, 0}), 1);
  EXPECT_NEAR(std::abs(d.amplitude({{}, {}, OccupationVector{0, 2, 0}})),
              std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(apply_annihilation(fock(r, {0, 0, 0}), 2).empty());
}

TEST(Ladder, CommutatorIsIdentityOnRandomStates) {
  std::mt19937_64 rng(7);
  const auto r = make_registry({"a", "b", "c"}, 4);
  for (int trial = 0; trial < 20; ++trial) {
    PureState psi(r);
    // stay below the cap so a^dag never truncates
    for (const auto& occ : all_occupations(3, 3)) {
      psi.add({{}, {}, occ}, Complex(std::normal_distribution<>()(rng),
                                     std::normal_distribution<>()(rng)));
    }
    for (std::size_t m = 0; m < 3; ++m) {
      const auto lhs = apply_annihilation(apply_creation(psi, m), m);
      const auto rhs = apply_creation(apply_annihilation(psi, m), m);
      const auto diff = lhs + rhs.scaled(-1.0) + psi.scaled(-1.0);
      EXPECT_LT(diff.norm_squared(), 1e-20);
    }
  }
}

TEST(Ladder, NumberOperatorCountsPhotons) {
  const auto r = three_modes();
  const auto s = fock(r, {0, 0, 3});
  const auto n = apply_creation(apply_annihilation(s, 2), 2);
  EXPECT_NEAR(std::abs(inner_product(s, n) - Complex(3.0)), 0.0, 1e-14);
}

TEST(InnerProduct, RandomStatesAreNormalized) {
  std::mt19937_64 rng(11);
  const auto r = three_modes();
  for (int t = 0; t < 10; ++t) {
    const auto s = random_pure_state(rng, r, 6);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner_product(s, s) - Complex(1.0)), 0.0, 1e-12);
  }
}

TEST(TensorProduct, CombinesDisjointModes) {
  const auto joint = three_modes();
  const auto prod =
      tensor_product(fock(joint, {0, 1, 0}, 1, 0), fock(joint, {1, 0, 0}, 0, 2));
  EXPECT_NEAR(std::abs(prod.amplitude(
                  {MemoryLabel(1), MemoryLabel(2), OccupationVector{1, 1, 0}})),
              1.0, 1e-15);
  EXPECT_EQ(prod.size(), 1u);
}

TEST(RelabelModes, MovesPhotonsToTargetModes) {
  const auto r = three_modes();
  const auto moved = relabel_modes(fock(r, {2, 0, 1}, 1), r,
                                   std::vector<std::size_t>{1, 2, 0});
  EXPECT_NEAR(std::abs(moved.amplitude(
                  {MemoryLabel(1), MemoryLabel(0), OccupationVector{1, 2, 0}})),
              1.0, 1e-15);
}

TEST(TensorProduct, RejectsSharedModesAndMemories) {
  const auto r = three_modes();
  EXPECT_THROW(tensor_product(fock(r, {1, 0, 0}), fock(r, {1, 0, 0})),
               RegistryError);
  EXPECT_THROW(tensor_product(fock(r, {1, 0, 0}, 1), fock(r, {0, 1, 0}, 2)),
               RegistryError);
}

TEST(RelabelModes, RejectsNonPermutation) {
  const auto r = three_modes();
  EXPECT_THROW(relabel_modes(fock(r, {1, 0, 0}), r,
                             std::vector<std::size_t>{0, 0, 1}),
               RegistryError);
  EXPECT_THROW(relabel_modes(fock(r, {1, 0, 0}), r,
                             std::vector<std::size_t>{0, 1}),
               RegistryError);
}

TEST(Ensemble, TracksWeightsAndTrace) {
  const auto r = three_modes();
  Ensemble e(r);
  e.add(0.25, fock(r, {1, 0, 0}));
  e.add(0.75, fock(r, {0, 1, 0}).scaled(2.0));
  EXPECT_NEAR(e.trace(), 0.25 + 0.75 * 4.0, 1e-15);
  EXPECT_THROW(e.add(-0.1, fock(r, {1, 0, 0})), ValidationError);
  EXPECT_THROW(e.add(0.1, fock(make_registry({"q"}), {1})), RegistryError);
}

TEST(PartialTrace, BellPairIsMaximallyMixedLocally) {
  const auto r = make_registry({"a"});
  PureState s(r);
  for (int k = 0; k < 3; ++k) {
    s.add({MemoryLabel(k), MemoryLabel((3 - k) % 3), OccupationVector{k % 2}},
          1.0 / std::sqrt(3.0));
  }
  const auto rho = partial_trace_to_memory(s);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-14);
  EXPECT_LT(rho.hermiticity_error(), 1e-15);
  EXPECT_GE(rho.min_eigenvalue(), -1e-14);
  EXPECT_NEAR(reduced_entropy(rho), std::log2(3.0), 1e-12);
}

TEST(Entropy, ProductStateIsZeroAndBellIsLog3) {
  MemoryVector prod = MemoryVector::Zero();
  prod(4) = 1.0;
  EXPECT_NEAR(entanglement_entropy(prod), 0.0, 1e-12);
  MemoryVector bell = MemoryVector::Zero();
  bell(0) = bell(5) = bell(7) = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(entanglement_entropy(bell), std::log2(3.0), 1e-12);
  EXPECT_THROW(entanglement_entropy(MemoryVector(2.0 * bell)), ValidationError);
}

TEST(MemoryDensity, FidelityOfPureStateWithItself) {
  MemoryVector v = MemoryVector::Zero();
  v(0) = Complex(0.6, 0.0);
  v(8) = Complex(0.0, 0.8);
  const MemoryDensity rho(v * v.adjoint());
  EXPECT_NEAR(rho.fidelity(v), 1.0, 1e-14);
  EXPECT_THROW(MemoryDensity().fidelity(v), ValidationError);
  EXPECT_THROW(MemoryDensity().normalized(), ValidationError);
}

TEST(ProjectPhotons, ExtractsMemoryAmplitudes) {
  const auto r = make_registry({"a", "b"});
  PureState s(r);
  s.add({MemoryLabel(1), MemoryLabel(0), OccupationVector{1, 0}}, 0.6);
  s.add({MemoryLabel(2), MemoryLabel(0), OccupationVector{1, 0}}, 0.8);
  s.add({MemoryLabel(0), MemoryLabel(0), OccupationVector{0, 1}}, 1.0);
  const auto v = project_photons(fock(r, {1, 0}), s);
  EXPECT_NEAR(std::abs(v(3) - Complex(0.6)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(6) - Complex(0.8)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(0)), 0.0, 1e-15);
  EXPECT_THROW(project_photons(fock(r, {1, 0}, 1), s), ValidationError);
  EXPECT_THROW(memory_amplitudes(s), ValidationError);
}

TEST(AllOccupations, CountsStarsAndBars) {
  EXPECT_EQ(all_occupations(8, 4).size(), 495u);
  EXPECT_EQ(all_occupations(3, 0).size(), 1u);
  EXPECT_EQ(all_occupations(2, 2).size(), 6u);
}

}  // namespace
}  // namespace qswap
