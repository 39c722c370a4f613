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

#ifndef QSWAP_RANDOM_STATES_HPP_
#define QSWAP_RANDOM_STATES_HPP_

#include <cstddef>
#include <random>

#include "qswap/fock.hpp"

namespace qswap {

/// Random unit state on `registry` with `terms` basis terms drawn uniformly
/// from all memory labels and occupations up to the photon cap; complex
/// Gaussian amplitudes.
PureState random_pure_state(std::mt19937_64& rng, const RegistryPtr& registry,
                            std::size_t terms);

/// Random ensemble of `branches` random pure states with Dirichlet-like
/// weights summing to one.
Ensemble random_ensemble(std::mt19937_64& rng, const RegistryPtr& registry,
                         std::size_t branches, std::size_t terms_per_branch);

/// Haar-random n x n unitary (QR of a complex Ginibre matrix).
Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, std::size_t n);

}  // namespace qswap

#endif  // QSWAP_RANDOM_STATES_HPP_
