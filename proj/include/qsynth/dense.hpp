// Copyright 2026 The qsynth authors
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

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qsynth/circuit.hpp"
#include "qsynth/pauli.hpp"

namespace qsynth {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Dense verification is capped; QSYNTH_ORACLE_LIMIT overrides the default.
inline int oracle_limit() {
  if (const char* env = std::getenv("QSYNTH_ORACLE_LIMIT")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 14;
}

inline void check_oracle_size(int num_qubits) {
  if (num_qubits > oracle_limit()) {
    throw std::runtime_error("instance too large for dense verification (" +
                             std::to_string(num_qubits) + " qubits, limit " +
                             std::to_string(oracle_limit()) + ")");
  }
}

// Qubit q is bit q of the basis index (qubit 0 least significant).
inline void apply_gate(Vec& v, const Gate& g) {
  const std::ptrdiff_t dim = v.size();
  const complexd im(0, 1);
  switch (g.kind) {
    case GateKind::H: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      const double inv_sqrt2 = 0.70710678118654752440;
      for (std::ptrdiff_t i = 0; i < dim; ++i) {
        if (i & qa) continue;
        complexd lo = v[i], hi = v[i | qa];
        v[i] = inv_sqrt2 * (lo + hi);
        v[i | qa] = inv_sqrt2 * (lo - hi);
      }
      break;
    }
    case GateKind::S: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      for (std::ptrdiff_t i = 0; i < dim; ++i)
        if (i & qa) v[i] *= im;
      break;
    }
    case GateKind::Sdg: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      for (std::ptrdiff_t i = 0; i < dim; ++i)
        if (i & qa) v[i] *= -im;
      break;
    }
    case GateKind::RotZ: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      const complexd lo = std::exp(-im * (g.theta / 2));
      const complexd hi = std::exp(im * (g.theta / 2));
      for (std::ptrdiff_t i = 0; i < dim; ++i) v[i] *= (i & qa) ? hi : lo;
      break;
    }
    case GateKind::CNOT: {
      const std::ptrdiff_t qc = std::ptrdiff_t(1) << g.a;
      const std::ptrdiff_t qt = std::ptrdiff_t(1) << g.b;
      for (std::ptrdiff_t i = 0; i < dim; ++i)
        if ((i & qc) && !(i & qt)) std::swap(v[i], v[i | qt]);
      break;
    }
    case GateKind::CPhase: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      const std::ptrdiff_t qb = std::ptrdiff_t(1) << g.b;
      const complexd ph = std::exp(im * g.theta);
      for (std::ptrdiff_t i = 0; i < dim; ++i)
        if ((i & qa) && (i & qb)) v[i] *= ph;
      break;
    }
    case GateKind::Swap: {
      const std::ptrdiff_t qa = std::ptrdiff_t(1) << g.a;
      const std::ptrdiff_t qb = std::ptrdiff_t(1) << g.b;
      for (std::ptrdiff_t i = 0; i < dim; ++i)
        if ((i & qa) && !(i & qb)) std::swap(v[i], v[(i ^ qa) | qb]);
      break;
    }
  }
}

inline void apply_circuit(Vec& v, const Circuit& c) {
  if (v.size() != (std::ptrdiff_t(1) << c.num_qubits()))
    throw std::invalid_argument("state dimension mismatch");
  for (const Gate& g : c.gates()) apply_gate(v, g);
}

inline Mat circuit_matrix(const Circuit& c) {
  check_oracle_size(c.num_qubits());
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << c.num_qubits();
  Mat m(dim, dim);
  Vec col(dim);
  for (std::ptrdiff_t k = 0; k < dim; ++k) {
    col.setZero();
    col[k] = 1.0;
    apply_circuit(col, c);
    m.col(k) = col;
  }
  return m;
}

inline Mat pauli_string_matrix(const PauliString& p, int num_qubits) {
  check_oracle_size(num_qubits);
  if (p.num_qubits() > num_qubits)
    throw std::invalid_argument("string wider than register");
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << num_qubits;
  std::ptrdiff_t xmask = 0;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [q, l] : p.letters())
    if (l != Letter::Z) xmask |= std::ptrdiff_t(1) << q;
  const complexd im(0, 1);
  for (std::ptrdiff_t k = 0; k < dim; ++k) {
    complexd amp = p.phase();
    for (const auto& [q, l] : p.letters()) {
      bool bit = (k >> q) & 1;
      if (l == Letter::Z && bit) amp = -amp;
      if (l == Letter::Y) amp *= bit ? -im : im;
    }
    m(k ^ xmask, k) += amp;
  }
  return m;
}

inline Mat pauli_sum_matrix(const PauliSum& s, int num_qubits) {
  check_oracle_size(num_qubits);
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << num_qubits;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [c, p] : s.terms()) m += c * pauli_string_matrix(p, num_qubits);
  return m;
}

// exp(-i t H) for Hermitian H, via spectral decomposition.
inline Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  const complexd im(0, 1);
  Vec phases(es.eigenvalues().size());
  for (std::ptrdiff_t i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(-im * (t * es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

inline Eigen::VectorXd eigenvalues_sorted(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  return es.eigenvalues();
}

// Largest singular value.
inline double spectral_norm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0 ? std::sqrt(top) : 0.0;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline double unitarity_defect(const Mat& m) {
  return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols()));
}

// Single-register centered DFT: W[k][n] = e^{i p_k x_n} / sqrt(Lambda) on the
// symmetric grids x_n = dx (n - (Lambda-1)/2), p_k = dp (k - (Lambda-1)/2)
// with dx dp = 2 pi / Lambda; the entries depend only on Q.
inline Mat centered_dft_single(int Q) {
  const std::ptrdiff_t lambda = std::ptrdiff_t(1) << Q;
  const double c = (static_cast<double>(lambda) - 1.0) / 2.0;
  const double w = 2.0 * M_PI / static_cast<double>(lambda);
  const double norm = 1.0 / std::sqrt(static_cast<double>(lambda));
  const complexd im(0, 1);
  Mat m(lambda, lambda);
  for (std::ptrdiff_t k = 0; k < lambda; ++k)
    for (std::ptrdiff_t n = 0; n < lambda; ++n)
      m(k, n) = norm * std::exp(im * (w * (k - c) * (n - c)));
  return m;
}

// Full-register transform: the centered DFT on each boson block
// [b*Q, (b+1)*Q), identity on the remaining qubits.
inline Mat centered_dft_dense(int num_qubits, int num_bosons, int Q) {
  check_oracle_size(num_qubits);
  if (num_bosons * Q > num_qubits)
    throw std::invalid_argument("boson block wider than register");
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << num_qubits;
  if (num_bosons == 0 || Q == 0) return Mat::Identity(dim, dim);
  Mat w = centered_dft_single(Q);
  const int nb_bits = num_bosons * Q;
  const std::ptrdiff_t bmask = (std::ptrdiff_t(1) << nb_bits) - 1;
  const std::ptrdiff_t qmask = (std::ptrdiff_t(1) << Q) - 1;
  Mat m = Mat::Zero(dim, dim);
  for (std::ptrdiff_t col = 0; col < dim; ++col) {
    const std::ptrdiff_t rest = col & ~bmask;
    for (std::ptrdiff_t brow = 0; brow <= bmask; ++brow) {
      complexd f = 1.0;
      for (int b = 0; b < num_bosons; ++b)
        f *= w((brow >> (b * Q)) & qmask, (col >> (b * Q)) & qmask);
      m(rest | brow, col) = f;
    }
  }
  return m;
}

}  // namespace qsynth
