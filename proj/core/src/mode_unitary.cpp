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

#include "qswap/mode_unitary.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qswap {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, RegistryPtr input,
                         RegistryPtr output)
    : matrix_(std::move(matrix)),
      input_(std::move(input)),
      output_(std::move(output)) {
  if (!input_ || !output_) throw RegistryError("null mode registry");
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("mode unitary must be square");
  }
  if (static_cast<std::size_t>(matrix_.rows()) != input_->size() ||
      input_->size() != output_->size()) {
    throw ValidationError("mode unitary dimension does not match registry");
  }
  if (const double err = unitarity_error(); !(err <= kUnitarityTolerance)) {
    throw ValidationError("matrix is not unitary (max |UU^dag - I| = " +
                          std::to_string(err) + ")");
  }
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, RegistryPtr modes)
    : ModeUnitary(std::move(matrix), modes, modes) {}

ModeUnitary ModeUnitary::identity(RegistryPtr modes) {
  const auto n = static_cast<Eigen::Index>(modes->size());
  return ModeUnitary(Eigen::MatrixXcd::Identity(n, n), std::move(modes));
}

double ModeUnitary::unitarity_error() const {
  const auto n = matrix_.rows();
  return (matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

ModeUnitary ModeUnitary::adjoint() const {
  return ModeUnitary(matrix_.adjoint(), output_, input_);
}

ModeUnitary ModeUnitary::then(const ModeUnitary& next) const {
  if (!same_registry(output_, next.input_)) {
    throw RegistryError("cannot compose: output modes of the first stage "
                        "differ from input modes of the second");
  }
  return ModeUnitary(next.matrix_ * matrix_, input_, next.output_);
}

PureState apply_mode_unitary(const PureState& state, const ModeUnitary& u) {
  if (!same_registry(state.registry(), u.input())) {
    throw RegistryError("apply_mode_unitary: state registry does not match "
                        "the unitary's input modes");
  }
  const std::size_t modes = u.size();
  const auto& m = u.matrix();

  // Keyed by input occupation, so repeated photonic configurations (with
  // different memory labels) are expanded once.
  std::map<OccupationVector, std::map<OccupationVector, Complex>> cache;

  auto expand = [&](const OccupationVector& in) {
    // Monomial exponents of output creation operators -> coefficient.
    std::map<OccupationVector, Complex> poly;
    double norm = 1.0;
    for (std::size_t j = 0; j < modes; ++j) norm *= std::sqrt(factorial(in[j]));
    poly.emplace(OccupationVector(modes), Complex(1.0 / norm));
    for (std::size_t j = 0; j < modes; ++j) {
      for (int copy = 0; copy < in[j]; ++copy) {
        std::map<OccupationVector, Complex> next;
        for (const auto& [mono, coeff] : poly) {
          for (std::size_t k = 0; k < modes; ++k) {
            const Complex ukj = m(static_cast<Eigen::Index>(k),
                                  static_cast<Eigen::Index>(j));
            if (ukj == Complex{}) continue;
            OccupationVector raised = mono;
            raised.set(k, mono[k] + 1);
            next[raised] += coeff * ukj;
          }
        }
        poly = std::move(next);
      }
    }
    // prod_k (b_k^dag)^{m_k} |0> = prod_k sqrt(m_k!) |m>.
    for (auto& [mono, coeff] : poly) {
      double f = 1.0;
      for (std::size_t k = 0; k < modes; ++k) f *= std::sqrt(factorial(mono[k]));
      coeff *= f;
    }
    return poly;
  };

  PureState out(u.output());
  for (const auto& [term, amp] : state.amplitudes()) {
    auto it = cache.find(term.photons);
    if (it == cache.end()) it = cache.emplace(term.photons, expand(term.photons)).first;
    for (const auto& [photons, coeff] : it->second) {
      out.add(JointBasisState{term.mem_a, term.mem_b, photons}, amp * coeff);
    }
  }
  out.prune();
  return out;
}

}  // namespace qswap
