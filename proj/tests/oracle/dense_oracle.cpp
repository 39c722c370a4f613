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

#include "oracle/dense_oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Basis of one emitter: memory m (0..2) times photon bits (nH, nV).
int emitter_index(int memory, int n_h, int n_v) {
  return memory * 4 + n_h * 2 + n_v;
}

Eigen::MatrixXcd kraus_on_bit(const Eigen::Matrix2cd& k, int dim, int stride) {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int bit = (i / stride) % 2;
    const int base = i - bit * stride;
    for (int out = 0; out < 2; ++out) {
      full(base + out * stride, i) += k(out, bit);
    }
  }
  return full;
}

Eigen::MatrixXcd lossy(const Eigen::MatrixXcd& rho, double eta,
                       const std::vector<int>& strides) {
  Eigen::Matrix2cd k0, k1;
  k0 << 1.0, 0.0, 0.0, std::sqrt(eta);
  k1 << 0.0, std::sqrt(1.0 - eta), 0.0, 0.0;
  Eigen::MatrixXcd out = rho;
  const int dim = static_cast<int>(rho.rows());
  for (int stride : strides) {
    const Eigen::MatrixXcd a = kraus_on_bit(k0, dim, stride);
    const Eigen::MatrixXcd b = kraus_on_bit(k1, dim, stride);
    out = (a * out * a.adjoint() + b * out * b.adjoint()).eval();
  }
  return out;
}

Eigen::MatrixXcd emitter_density(double p, double eta) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(12);
  psi(emitter_index(0, 0, 0)) = std::sqrt(1.0 - p);
  psi(emitter_index(1, 1, 0)) = std::sqrt(p / 2.0);
  psi(emitter_index(2, 0, 1)) = std::sqrt(p / 2.0);
  return lossy(psi * psi.adjoint(), eta, {2, 1});
}

Eigen::MatrixXcd aux_density(double alpha, double eta) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = std::sqrt(1.0 - alpha * alpha);
  psi(3) = alpha;
  return lossy(psi * psi.adjoint(), eta, {2, 1});
}

// Photon bits of (Alice, Bob, aux) onto H1..H4, V1..V4.
Occupation input_occupation(int photons_a, int photons_b, int photons_aux) {
  Occupation occ(8, 0);
  occ[0] = photons_a / 2;
  occ[4] = photons_a % 2;
  occ[1] = photons_b / 2;
  occ[5] = photons_b % 2;
  occ[2] = photons_aux / 2;
  occ[6] = photons_aux % 2;
  return occ;
}

}  // namespace

Eigen::MatrixXcd interferometer() {
  Eigen::MatrixXcd m(8, 8);
  m << 0, 0, 1, 1, 1, 1, 0, 0,
       1, 1, 0, 0, 0, 0, 1, 1,
       0, 0, 1, -1, 1, -1, 0, 0,
       1, -1, 0, 0, 0, 0, 1, -1,
       0, 0, 1, 1, -1, -1, 0, 0,
       1, 1, 0, 0, 0, 0, -1, -1,
       0, 0, 1, -1, -1, 1, 0, 0,
       1, -1, 0, 0, 0, 0, -1, 1;
  return m / 2.0;
}

std::vector<Occupation> occupations(int modes, int max_total) {
  std::vector<Occupation> out;
  Occupation current(modes, 0);
  std::function<void(int, int)> fill = [&](int mode, int left) {
    if (mode == modes) {
      out.push_back(current);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      current[mode] = n;
      fill(mode + 1, left - n);
    }
    current[mode] = 0;
  };
  fill(0, max_total);
  return out;
}

cd permanent(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  if (n == 0) return 1.0;
  cd sum = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (m(0, col) == cd(0.0)) continue;
    Eigen::MatrixXcd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, k = 0; c < n; ++c) {
        if (c != col) minor(r - 1, k++) = m(r, c);
      }
    }
    sum += m(0, col) * permanent(minor);
  }
  return sum;
}

cd transition_amplitude(const Eigen::MatrixXcd& u, const Occupation& out,
                        const Occupation& in) {
  std::vector<int> rows, cols;
  double norm = 1.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (int i = 0; i < out[k]; ++i) rows.push_back(static_cast<int>(k));
    norm *= factorial(out[k]);
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    for (int i = 0; i < in[j]; ++i) cols.push_back(static_cast<int>(j));
    norm *= factorial(in[j]);
  }
  if (rows.size() != cols.size()) return 0.0;
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
  }
  return permanent(sub) / std::sqrt(norm);
}

Eigen::MatrixXcd fock_matrix(const Eigen::MatrixXcd& u,
                             const std::vector<Occupation>& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      out(r, c) = transition_amplitude(u, basis[r], basis[c]);
    }
  }
  return out;
}

double total_success_closed_form(double p) {
  return 3.0 * p * p * (1.0 - p) * (1.0 - p) / (5.0 * p * p - 8.0 * p + 4.0);
}

double pattern_success_closed_form(double p) {
  return 3.0 / 16.0 * p * p * (1.0 - p) * (1.0 - p) /
         (5.0 * p * p - 8.0 * p + 4.0);
}

double balanced_alpha(double p) {
  return p / std::sqrt(5.0 * p * p - 8.0 * p + 4.0);
}

std::vector<std::string> listed_patterns() {
  return {"(H1',H2')", "(H1',V2')", "(V1',H2')", "(V1',V2')",
          "(H1',H4')", "(H1',V4')", "(V1',H4')", "(V1',V4')",
          "(H3',H2')", "(H3',V2')", "(V3',H2')", "(V3',V2')",
          "(H3',H4')", "(H3',V4')", "(V3',H4')", "(V3',V4')"};
}

std::array<int, 3> listed_signs(const std::string& pattern) {
  static const std::vector<std::array<int, 3>> signs = {
      {1, 1, 1},  {-1, 1, 1}, {-1, 1, 1}, {1, 1, 1},
      {1, 1, -1}, {1, -1, 1}, {1, -1, 1}, {1, 1, -1},
      {1, -1, 1}, {1, 1, -1}, {1, 1, -1}, {1, -1, 1},
      {-1, 1, 1}, {1, 1, 1},  {1, 1, 1},  {-1, 1, 1}};
  const auto names = listed_patterns();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == pattern) return signs[i];
  }
  throw std::invalid_argument("unknown pattern " + pattern);
}

Heralded herald(double p, double alpha, double eta, int click1, int click2,
                bool threshold) {
  const Eigen::MatrixXcd u = interferometer();
  std::vector<Occupation> outcomes;
  for (const auto& occ : occupations(8, 4)) {
    bool accept = true;
    for (int k = 0; k < 8; ++k) {
      const bool clicked = k == click1 || k == click2;
      if (!clicked && occ[k] != 0) accept = false;
      if (clicked && (threshold ? occ[k] < 1 : occ[k] != 1)) accept = false;
    }
    if (accept) outcomes.push_back(occ);
  }

  // photon configuration x = (a, b, aux), each a two-bit (nH, nV) value.
  Eigen::MatrixXcd amp(static_cast<Eigen::Index>(outcomes.size()), 64);
  for (int x = 0; x < 64; ++x) {
    const Occupation in = input_occupation(x / 16, (x / 4) % 4, x % 4);
    for (std::size_t m = 0; m < outcomes.size(); ++m) {
      amp(static_cast<Eigen::Index>(m), x) =
          transition_amplitude(u, outcomes[m], in);
    }
  }
  const Eigen::MatrixXcd measure = amp.adjoint() * amp;

  const Eigen::MatrixXcd ra = emitter_density(p, eta);
  const Eigen::MatrixXcd rb = emitter_density(p, eta);
  const Eigen::MatrixXcd rx = aux_density(alpha, eta);

  Heralded out;
  out.memory.setZero();
  for (int ia = 0; ia < 12; ++ia) for (int ja = 0; ja < 12; ++ja) {
    if (ra(ia, ja) == cd(0.0)) continue;
    for (int ib = 0; ib < 12; ++ib) for (int jb = 0; jb < 12; ++jb) {
      const cd ab = ra(ia, ja) * rb(ib, jb);
      if (ab == cd(0.0)) continue;
      for (int ix = 0; ix < 4; ++ix) for (int jx = 0; jx < 4; ++jx) {
        const int x = (ia % 4) * 16 + (ib % 4) * 4 + ix;
        const int y = (ja % 4) * 16 + (jb % 4) * 4 + jx;
        out.memory(3 * (ia / 4) + ib / 4, 3 * (ja / 4) + jb / 4) +=
            ab * rx(ix, jx) * measure(y, x);
      }
    }
  }
  out.probability = out.memory.trace().real();
  return out;
}

Eigen::MatrixXcd single_mode_loss(const Eigen::MatrixXcd& rho, double eta) {
  const auto dim = rho.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::MatrixXcd kraus = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = k; n < dim; ++n) {
      const int ni = static_cast<int>(n), ki = static_cast<int>(k);
      kraus(n - k, n) = std::sqrt(binomial(ni, ki) * std::pow(eta, ni - ki) *
                                  std::pow(1.0 - eta, ki));
    }
    out += kraus * rho * kraus.adjoint();
  }
  return out;
}

double fidelity(const Memory& normalized, const std::array<int, 3>& signs) {
  Eigen::Matrix<cd, 9, 1> v = Eigen::Matrix<cd, 9, 1>::Zero();
  v(0) = signs[0];
  v(5) = signs[1];
  v(7) = signs[2];
  v /= std::sqrt(3.0);
  return (v.adjoint() * normalized * v)(0, 0).real();
}

}  // namespace oracle
