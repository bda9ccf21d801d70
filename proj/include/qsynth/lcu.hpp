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

#ifndef QSYNTH_LCU_HPP_
#define QSYNTH_LCU_HPP_

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsynth/dense.hpp"
#include "qsynth/jw.hpp"
#include "qsynth/synth.hpp"
#include "qsynth/verify.hpp"

namespace qsynth {

// One unitary of the sum: alpha > 0, sign folded into the string's -1 phase.
struct LcuTerm {
  double alpha = 0.0;
  PauliString pi;
};

// H = sum_i alpha_i Pi_i  +  F^dag (sum_j alpha~_j Pi~_j) F, all alpha > 0.
// Kinetic terms are the Fourier-conjugated ones; membership is the flag.
struct LcuForm {
  std::vector<LcuTerm> potential;
  std::vector<LcuTerm> kinetic;
  double lambda = 0.0;

  std::size_t term_count() const { return potential.size() + kinetic.size(); }

  int ancilla_width() const {
    std::size_t n = term_count();
    int w = 0;
    while ((std::size_t{1} << w) < n) ++w;
    return w;
  }

  int max_pauli_weight() const {
    int w = 0;
    for (const auto& t : potential) w = std::max(w, t.pi.weight());
    for (const auto& t : kinetic) w = std::max(w, t.pi.weight());
    return w;
  }
};

// Folds every canonical coefficient into a positive weight on a phased
// Pauli unitary.  Identity strings are kept (they are valid unitaries).
inline LcuForm normalize_lcu(const CompiledModel& cm) {
  LcuForm out;
  auto fold = [](const PauliSum& s, std::vector<LcuTerm>& dst) {
    for (const auto& [c, p] : s.terms()) {
      LcuTerm t;
      t.alpha = std::abs(c);
      t.pi = p;
      if (c < 0) t.pi.multiply_phase_exp(2);
      dst.push_back(std::move(t));
    }
  };
  fold(cm.potential, out.potential);
  fold(cm.kinetic, out.kinetic);
  if (out.term_count() == 0)
    throw std::invalid_argument("cannot block-encode an empty Hamiltonian");
  for (const auto& t : out.potential) out.lambda += t.alpha;
  for (const auto& t : out.kinetic) out.lambda += t.alpha;
  return out;
}

namespace detail {

// Phase -1 on the all-ones subspace of qs (a multi-controlled Z), decomposed
// into 2^k - 1 Z-string rotations of angle pi/2^k plus one global phase.
inline void mc_phase_pi(Circuit& c, const std::vector<int>& qs) {
  int k = static_cast<int>(qs.size());
  if (k == 0) {
    append_global_phase(c, M_PI);
    return;
  }
  if (k > 16)
    throw std::invalid_argument("select synthesis too wide (" +
                                std::to_string(k) + " controls)");
  double unit = M_PI / std::ldexp(1.0, k);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    PauliString z;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) z.set(qs[static_cast<std::size_t>(b)], Letter::Z);
    double theta = (std::popcount(mask) % 2 == 1) ? unit : -unit;
    pauli_rotation(c, theta, z, ChainStrategy::PivotLadder);
  }
  append_global_phase(c, unit);
}

// Applies the phased Pauli string p on the ancilla branch `pattern`, identity
// elsewhere.  Per letter: basis change to Z, then a multi-controlled Z across
// the ancilla register and that qubit.
inline void mc_pauli(Circuit& c, const std::vector<int>& anc, unsigned pattern,
                     const PauliString& p) {
  if (p.phase_exp() % 2 != 0)
    throw std::invalid_argument("select needs Hermitian-phase strings");
  auto toggle_offs = [&]() {
    for (std::size_t b = 0; b < anc.size(); ++b)
      if (!(pattern & (1u << b))) c.x(anc[b]);
  };
  toggle_offs();
  if (p.phase_exp() == 2) mc_phase_pi(c, anc);
  for (const auto& [q, letter] : p.letters()) {
    if (letter == Letter::X) {
      c.h(q);
    } else if (letter == Letter::Y) {
      c.sdg(q);
      c.h(q);
    }
    std::vector<int> qs = anc;
    qs.push_back(q);
    mc_phase_pi(c, qs);
    if (letter == Letter::X) {
      c.h(q);
    } else if (letter == Letter::Y) {
      c.h(q);
      c.s(q);
    }
  }
  toggle_offs();
}

// RotY(theta) = exp(-i theta Y/2) on `target`, controlled on the listed
// qubits matching `pattern`; phase-polynomial decomposition over Z-strings.
inline void mc_roty(Circuit& c, const std::vector<int>& controls,
                    unsigned pattern, int target, double theta) {
  int k = static_cast<int>(controls.size());
  if (k > 16) throw std::invalid_argument("prepare synthesis too wide");
  for (std::size_t b = 0; b < controls.size(); ++b)
    if (!(pattern & (1u << b))) c.x(controls[b]);
  c.sdg(target);
  c.h(target);
  double unit = theta / std::ldexp(1.0, k + 1);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    PauliString z;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b))
        z.set(controls[static_cast<std::size_t>(b)], Letter::Z);
    z.set(target, Letter::Z);
    double angle = (std::popcount(mask) % 2 == 0) ? unit : -unit;
    pauli_rotation(c, angle, z, ChainStrategy::PivotLadder);
  }
  c.h(target);
  c.s(target);
  for (std::size_t b = 0; b < controls.size(); ++b)
    if (!(pattern & (1u << b))) c.x(controls[b]);
}

}  // namespace detail

struct BlockEncoding {
  LcuForm lcu;
  CompiledModel model;
  int ancilla_width = 0;
  int total_qubits = 0;
  // Exact target amplitudes: |g_i|^2 = alpha_i / lambda, zero-padded.
  Eigen::VectorXd prepare_vector;
  // Select composed with the Fourier dressing: U_pot, F, U_kin, F^dag.
  Circuit select;
  // Amplitude loading |0..0> -> sum_i g_i |i> on the ancilla register.
  Circuit prepare;
};

inline BlockEncoding assemble(const LcuForm& lcu, const CompiledModel& cm) {
  BlockEncoding be;
  be.lcu = lcu;
  be.model = cm;
  be.ancilla_width = lcu.ancilla_width();
  be.total_qubits = cm.num_qubits + be.ancilla_width;

  Partition part = cm.partition;
  part.ancilla = be.ancilla_width;
  std::vector<int> anc;
  for (int b = 0; b < be.ancilla_width; ++b) anc.push_back(cm.num_qubits + b);

  be.prepare_vector = Eigen::VectorXd::Zero(1 << be.ancilla_width);
  Eigen::Index slot = 0;
  for (const auto& t : lcu.potential)
    be.prepare_vector(slot++) = std::sqrt(t.alpha / lcu.lambda);
  for (const auto& t : lcu.kinetic)
    be.prepare_vector(slot++) = std::sqrt(t.alpha / lcu.lambda);

  be.select = Circuit(be.total_qubits, part);
  unsigned idx = 0;
  for (const auto& t : lcu.potential)
    detail::mc_pauli(be.select, anc, idx++, t.pi);
  if (!lcu.kinetic.empty() && cm.bosons.num_bosons > 0) {
    Circuit f = centered_qft_circuit(cm.bosons, be.total_qubits);
    be.select.append(f);
    for (const auto& t : lcu.kinetic)
      detail::mc_pauli(be.select, anc, idx++, t.pi);
    be.select.append(f.inverse());
  } else {
    for (const auto& t : lcu.kinetic)
      detail::mc_pauli(be.select, anc, idx++, t.pi);
  }

  be.prepare = Circuit(be.total_qubits, part);
  int w = be.ancilla_width;
  for (int t = w - 1; t >= 0; --t) {
    int hb = w - 1 - t;
    for (unsigned p = 0; p < (1u << hb); ++p) {
      double w0 = 0, w1 = 0;
      for (Eigen::Index i = 0; i < be.prepare_vector.size(); ++i) {
        if ((static_cast<unsigned>(i) >> (t + 1)) != p) continue;
        double a2 = be.prepare_vector(i) * be.prepare_vector(i);
        if ((i >> t) & 1)
          w1 += a2;
        else
          w0 += a2;
      }
      if (w0 + w1 < 1e-30) continue;
      double theta = 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0));
      if (std::abs(theta) < 1e-15) continue;
      std::vector<int> controls;
      for (int b = 0; b < hb; ++b)
        controls.push_back(cm.num_qubits + t + 1 + b);
      detail::mc_roty(be.prepare, controls, p, cm.num_qubits + t, theta);
    }
  }
  return be;
}

inline BlockEncoding assemble(const CompiledModel& cm) {
  return assemble(normalize_lcu(cm), cm);
}

// Per-ancilla-value system unitaries of U = F~^dag S_kin F~ S_pot.  The
// conjugation leaves U block-diagonal: Pi_i on potential branches,
// F^dag Pi~_j F on kinetic branches, identity on padding.
inline std::vector<Mat> select_blocks(const BlockEncoding& be) {
  check_oracle_size(be.model.num_qubits);
  int n = be.model.num_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Mat> blocks;
  for (const auto& t : be.lcu.potential)
    blocks.push_back(pauli_string_matrix(t.pi, n));
  if (!be.lcu.kinetic.empty()) {
    Mat f = be.model.bosons.num_bosons > 0
                ? centered_dft_dense(n, be.model.bosons.num_bosons,
                                     be.model.bosons.Q)
                : Mat::Identity(dim, dim);
    for (const auto& t : be.lcu.kinetic)
      blocks.push_back(f.adjoint() * pauli_string_matrix(t.pi, n) * f);
  }
  while (blocks.size() < (std::size_t{1} << be.ancilla_width))
    blocks.push_back(Mat::Identity(dim, dim));
  return blocks;
}

// (<G| (x) I) U (|G> (x) I) with the exact prepare vector.
inline Mat block_matrix(const BlockEncoding& be) {
  auto blocks = select_blocks(be);
  const Eigen::Index dim = Eigen::Index{1} << be.model.num_qubits;
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    double g = be.prepare_vector(static_cast<Eigen::Index>(a));
    out += (g * g) * blocks[a];
  }
  return out;
}

// Max-abs deviation of the encoded block from H / lambda.
inline double verify_block(const BlockEncoding& be) {
  Mat target = hamiltonian_dense(be.model) / be.lcu.lambda;
  return max_abs(block_matrix(be) - target);
}

// Worst per-block deviation from unitarity of U.
inline double select_unitarity(const BlockEncoding& be) {
  double worst = 0;
  for (const Mat& u : select_blocks(be)) {
    Mat d = u * u.adjoint() - Mat::Identity(u.rows(), u.cols());
    worst = std::max(worst, max_abs(d));
  }
  return worst;
}

}  // namespace qsynth

#endif  // QSYNTH_LCU_HPP_
