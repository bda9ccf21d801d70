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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/pauli.hpp"

namespace qsynth {

// Truncated bosons: each mode lives on Q qubits spanning Lambda = 2^Q grid
// points.  The position grid is symmetric, x in {+-dx/2, +-3dx/2, ...,
// +-(Lambda-1)dx/2} with dx = 2R/Lambda; the momentum grid uses dp = pi/R,
// so dx*dp = 2*pi/Lambda.
struct BosonRegister {
  int num_bosons = 0;
  int Q = 0;
  double R = 1.0;

  int lambda() const { return 1 << Q; }
  double dx() const { return 2.0 * R / static_cast<double>(lambda()); }
  double dp() const { return M_PI / R; }
  int qubits() const { return num_bosons * Q; }
  int qubit(int boson, int j) const { return boson * Q + j; }

  void check(int boson) const {
    if (boson < 0 || boson >= num_bosons)
      throw std::invalid_argument("boson index out of range");
  }
};

namespace detail {
// -(step) * sum_j 2^j Z_j / 2 on the block of boson b; basis state n maps to
// eigenvalue step * (n - (Lambda-1)/2), i.e. the symmetric grid in ascending
// order of n.
inline PauliSum grid_operator(const BosonRegister& reg, int boson, double step) {
  reg.check(boson);
  PauliSum s;
  for (int j = 0; j < reg.Q; ++j) {
    double c = -step * static_cast<double>(1 << j) / 2.0;
    s.add(c, PauliString::single(reg.qubit(boson, j), Letter::Z));
  }
  s.canonicalize();
  return s;
}
}  // namespace detail

inline PauliSum position_operator(const BosonRegister& reg, int boson) {
  return detail::grid_operator(reg, boson, reg.dx());
}

// Diagonal in the momentum basis; compose with the centered Fourier
// transform when acting alongside coordinate-basis operators.
inline PauliSum momentum_operator(const BosonRegister& reg, int boson) {
  return detail::grid_operator(reg, boson, reg.dp());
}

// Product of diagonal (Z/identity) sums; letters cancel pairwise and no
// phases can appear.
inline PauliSum diagonal_product(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  for (const auto& [ca, pa] : a.terms())
    for (const auto& [cb, pb] : b.terms()) out.add(ca * cb, mul(pa, pb));
  out.canonicalize();
  return out;
}

// coeff * prod_k x_{bosons[k]}; repeated indices give powers.
inline PauliSum expand_monomial(const BosonRegister& reg, double coeff,
                                const std::vector<int>& bosons) {
  PauliSum acc;
  acc.add(coeff, PauliString::identity());
  for (int b : bosons) acc = diagonal_product(acc, position_operator(reg, b));
  acc.canonicalize();
  return acc;
}

// sum_b p_b^2 / 2, expanded in the momentum basis (identity offset included).
inline PauliSum kinetic_operator(const BosonRegister& reg) {
  PauliSum acc;
  for (int b = 0; b < reg.num_bosons; ++b) {
    PauliSum p = momentum_operator(reg, b);
    PauliSum p2 = diagonal_product(p, p);
    p2.scale(0.5);
    acc.add(p2);
  }
  acc.canonicalize();
  return acc;
}

inline std::vector<double> position_grid(const BosonRegister& reg) {
  std::vector<double> xs(static_cast<std::size_t>(reg.lambda()));
  double c = (reg.lambda() - 1) / 2.0;
  for (int n = 0; n < reg.lambda(); ++n) xs[n] = reg.dx() * (n - c);
  return xs;
}

// Centered Fourier transform on every boson block:
//   F[k][n] = e^{i p_k x_n} / sqrt(Lambda)  per boson.
//
// Realized as diagonal phase rotations around the standard QFT,
//   F = e^{i pi (Lambda-1)^2 / (2 Lambda)} * D * QFT * D,
// with D = diag(w^{-c n}), w = e^{2 pi i / Lambda}, c = (Lambda-1)/2.  The D
// stages are emitted as RotZ, and the phases they owe are repaid exactly by
// one terminal global-phase block, so the circuit matrix equals the centered
// DFT including its global phase.
inline Circuit centered_qft_circuit(const BosonRegister& reg,
                                    int total_qubits = -1) {
  if (total_qubits < 0) total_qubits = reg.qubits();
  if (total_qubits < reg.qubits())
    throw std::invalid_argument("register narrower than boson block");
  Circuit c(total_qubits, Partition{reg.qubits(), total_qubits - reg.qubits(),
                                    0, 0});
  const double lambda = static_cast<double>(reg.lambda());
  double owed = 0.0;
  for (int b = 0; b < reg.num_bosons; ++b) {
    auto diag_stage = [&] {
      for (int j = 0; j < reg.Q; ++j) {
        double phi = -M_PI * (lambda - 1.0) * static_cast<double>(1 << j) / lambda;
        c.rz(phi, reg.qubit(b, j));
        owed += phi / 2.0;
      }
    };
    diag_stage();
    // Standard QFT, most significant qubit first, terminal swaps.
    for (int i = reg.Q - 1; i >= 0; --i) {
      c.h(reg.qubit(b, i));
      for (int j = i - 1; j >= 0; --j)
        c.cphase(M_PI / static_cast<double>(1 << (i - j)), reg.qubit(b, j),
                 reg.qubit(b, i));
    }
    for (int i = 0; 2 * i < reg.Q - 1; ++i)
      c.swap(reg.qubit(b, i), reg.qubit(b, reg.Q - 1 - i));
    diag_stage();
    owed += M_PI * (lambda - 1.0) * (lambda - 1.0) / (2.0 * lambda);
  }
  append_global_phase(c, owed);
  return c;
}

}  // namespace qsynth
