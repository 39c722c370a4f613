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

#include "qswap/random_states.hpp"

#include <Eigen/QR>

namespace qswap {

PureState random_pure_state(std::mt19937_64& rng, const RegistryPtr& registry,
                            std::size_t terms) {
  const auto occupations = all_occupations(registry->size(), registry->photon_cap());
  std::uniform_int_distribution<std::size_t> pick(0, occupations.size() - 1);
  std::uniform_int_distribution<int> label(0, 2);
  std::normal_distribution<double> gauss;

  PureState state(registry);
  while (state.size() < terms) {
    state.add({MemoryLabel(label(rng)), MemoryLabel(label(rng)),
               occupations[pick(rng)]},
              Complex(gauss(rng), gauss(rng)));
    state.prune();
  }
  return state.normalized();
}

Ensemble random_ensemble(std::mt19937_64& rng, const RegistryPtr& registry,
                         std::size_t branches, std::size_t terms_per_branch) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> weights(branches);
  double total = 0.0;
  for (auto& w : weights) total += (w = draw(rng));

  Ensemble out(registry);
  for (double w : weights) {
    out.add(w / total, random_pure_state(rng, registry, terms_per_branch));
  }
  return out;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qswap
