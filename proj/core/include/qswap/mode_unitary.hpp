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

#ifndef QSWAP_MODE_UNITARY_HPP_
#define QSWAP_MODE_UNITARY_HPP_

#include <Eigen/Dense>

#include "qswap/fock.hpp"

namespace qswap {

inline constexpr double kUnitarityTolerance = 1e-10;

/// Passive linear-optical transformation. Column j holds the image of the
/// input creation operator: a_j^dag -> sum_k U(k, j) b_k^dag, with a_j on
/// `input()` and b_k on `output()`.
class ModeUnitary {
 public:
  /// Throws ValidationError unless the matrix is square, matches both
  /// registries and is unitary within kUnitarityTolerance.
  ModeUnitary(Eigen::MatrixXcd matrix, RegistryPtr input, RegistryPtr output);
  ModeUnitary(Eigen::MatrixXcd matrix, RegistryPtr modes);

  static ModeUnitary identity(RegistryPtr modes);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const RegistryPtr& input() const { return input_; }
  const RegistryPtr& output() const { return output_; }
  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }

  double unitarity_error() const;
  ModeUnitary adjoint() const;

  /// `*this` followed by `next`.
  ModeUnitary then(const ModeUnitary& next) const;

 private:
  Eigen::MatrixXcd matrix_;
  RegistryPtr input_;
  RegistryPtr output_;
};

/// Schroedinger-picture action on a sparse state: every basis term
/// prod_j (a_j^dag)^{n_j} / sqrt(n_j!) |0> is expanded multinomially.
PureState apply_mode_unitary(const PureState& state, const ModeUnitary& u);

}  // namespace qswap

#endif  // QSWAP_MODE_UNITARY_HPP_
