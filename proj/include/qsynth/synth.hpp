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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "qsynth/boson.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/jw.hpp"
#include "qsynth/pauli.hpp"

namespace qsynth {

enum class ChainStrategy { PivotLadder, ChainLadder, BalancedTree };
enum class SynthPolicy { Naive, Fused };

namespace detail {

// CNOT schedule accumulating the parity of every qubit in `seq` onto its
// last element.  PivotLadder targets the pivot directly (depth n-1),
// ChainLadder walks a path, BalancedTree halves the survivor set per round
// (n-1 gates, depth ceil(log2 n)).
inline std::vector<std::pair<int, int>> parity_schedule(
    const std::vector<int>& seq, ChainStrategy strategy) {
  std::vector<std::pair<int, int>> cnots;
  const int n = static_cast<int>(seq.size());
  if (n < 2) return cnots;
  switch (strategy) {
    case ChainStrategy::PivotLadder:
      for (int i = 0; i < n - 1; ++i) cnots.emplace_back(seq[i], seq.back());
      break;
    case ChainStrategy::ChainLadder:
      for (int i = 0; i < n - 1; ++i) cnots.emplace_back(seq[i], seq[i + 1]);
      break;
    case ChainStrategy::BalancedTree: {
      std::vector<int> live = seq;
      while (live.size() > 1) {
        std::vector<int> next;
        std::size_t i = 0;
        for (; i + 1 < live.size(); i += 2) {
          cnots.emplace_back(live[i], live[i + 1]);
          next.push_back(live[i + 1]);
        }
        if (i < live.size()) next.push_back(live[i]);
        live = std::move(next);
      }
      break;
    }
  }
  return cnots;
}

inline PauliString strip_letters(const PauliString& p,
                                 const std::vector<int>& drop) {
  PauliString out;
  for (const auto& [q, l] : p.letters())
    if (!std::binary_search(drop.begin(), drop.end(), q)) out.set(q, l);
  out.multiply_phase_exp(p.phase_exp());
  return out;
}

}  // namespace detail

// Appends gates implementing exp(-i theta P).  P must be Hermitian (phase
// +1 or -1; a -1 prefix folds into the angle).  X and Y letters are rotated
// into Z by basis changes, parities are accumulated onto the pivot by the
// chosen schedule, and the core is a single RotZ(2 theta).  `pivot` forces
// the accumulation target (it must carry a letter); -1 picks the highest
// active qubit.
inline void pauli_rotation(Circuit& c, double theta, const PauliString& p,
                           ChainStrategy strategy = ChainStrategy::BalancedTree,
                           int pivot = -1) {
  int k = p.phase_exp();
  if (k == 1 || k == 3)
    throw std::invalid_argument("rotation of a non-Hermitian string");
  if (k == 2) theta = -theta;
  if (p.weight() == 0) {
    append_global_phase(c, -theta);
    return;
  }
  std::vector<int> actives;
  for (const auto& [q, l] : p.letters()) actives.push_back(q);
  if (pivot < 0)
    pivot = actives.back();
  else if (!p.has(pivot))
    throw std::logic_error("forced pivot carries no letter");

  for (const auto& [q, l] : p.letters()) {
    if (l == Letter::X) {
      c.h(q);
    } else if (l == Letter::Y) {
      c.sdg(q);
      c.h(q);
    }
  }
  std::vector<int> seq;
  for (int q : actives)
    if (q != pivot) seq.push_back(q);
  seq.push_back(pivot);
  auto cnots = detail::parity_schedule(seq, strategy);
  for (const auto& [a, b] : cnots) c.cnot(a, b);
  c.rz(2 * theta, pivot);
  if (strategy == ChainStrategy::PivotLadder) {
    for (const auto& [a, b] : cnots) c.cnot(a, b);
  } else {
    for (auto it = cnots.rbegin(); it != cnots.rend(); ++it)
      c.cnot(it->first, it->second);
  }
  for (const auto& [q, l] : p.letters()) {
    if (l == Letter::X) {
      c.h(q);
    } else if (l == Letter::Y) {
      c.h(q);
      c.s(q);
    }
  }
}

struct TrotterOptions {
  SynthPolicy policy = SynthPolicy::Fused;
  ChainStrategy strategy = ChainStrategy::BalancedTree;
};

namespace detail {

inline void emit_plain(Circuit& c, double eps, const ChainUnit& unit,
                       ChainStrategy strategy) {
  for (const auto& t : unit.terms)
    pauli_rotation(c, eps * t.coeff, t.string, strategy);
}

// Emits one fusable group.  All units whose interior contains the group
// pivot share CNOT parity chains into the pivot: the chain for unit i is
// S_i = interior_i \ {pivot}, consecutive chains are reconciled by emitting
// only the symmetric difference, and each rotation inside the chain acts on
// the stripped core (which retains Z on the pivot).  Conjugation by the
// chain multiplies the interior parity string back in:
// C(q,p) Z_p C(q,p) = Z_q Z_p.
inline void emit_fused_group(Circuit& c, double eps, const TermGroup& g,
                             ChainStrategy strategy) {
  std::map<int, int> freq;
  for (const auto& u : g.units)
    for (int q : u.interior) freq[q]++;
  int pivot = -1, best = 0;
  for (const auto& [q, n] : freq) {
    if (n > best) {
      best = n;
      pivot = q;
    }
  }
  if (pivot < 0) {
    for (const auto& u : g.units) emit_plain(c, eps, u, strategy);
    return;
  }
  std::set<int> chain;
  auto reconcile = [&](const std::set<int>& target) {
    std::vector<int> toggle;
    for (int q : chain)
      if (!target.count(q)) toggle.push_back(q);
    for (int q : target)
      if (!chain.count(q)) toggle.push_back(q);
    std::sort(toggle.begin(), toggle.end());
    for (int q : toggle) c.cnot(q, pivot);
    chain = target;
  };
  for (const auto& u : g.units) {
    bool on_chain =
        std::find(u.interior.begin(), u.interior.end(), pivot) != u.interior.end();
    if (!on_chain) {
      reconcile({});
      emit_plain(c, eps, u, strategy);
      continue;
    }
    std::vector<int> s;
    for (int q : u.interior)
      if (q != pivot) s.push_back(q);
    reconcile(std::set<int>(s.begin(), s.end()));
    for (const auto& t : u.terms)
      pauli_rotation(c, eps * t.coeff, detail::strip_letters(t.string, s),
                     strategy, pivot);
  }
  reconcile({});
}

}  // namespace detail

// First-order Trotter step for H = potential + F^dag kinetic F: emits the
// potential-side rotations, the centered Fourier block, the kinetic
// rotations, and the inverse Fourier block, then repays the identity
// coefficient as an exact global phase.
inline Circuit trotter_step(const CompiledModel& cm, double eps,
                            const TrotterOptions& opt = {}) {
  Circuit c(cm.num_qubits, cm.partition);
  for (const auto& g : cm.groups) {
    if (opt.policy == SynthPolicy::Fused && g.fusable) {
      detail::emit_fused_group(c, eps, g, opt.strategy);
    } else {
      for (const auto& u : g.units) detail::emit_plain(c, eps, u, opt.strategy);
    }
  }
  if (cm.bosons.num_bosons > 0 && !cm.kinetic_rotations.empty()) {
    Circuit f = centered_qft_circuit(cm.bosons, cm.num_qubits);
    c.append(f);
    for (const auto& t : cm.kinetic_rotations)
      pauli_rotation(c, eps * t.coeff, t.string, opt.strategy);
    c.append(f.inverse());
  }
  double c0 = cm.potential.identity_coeff() + cm.kinetic.identity_coeff();
  if (std::abs(eps * c0) > 0) append_global_phase(c, -eps * c0);
  return c;
}

// ---------------------------------------------------------------------------
// Peephole cancellation

namespace detail {

inline bool disjoint(const Gate& a, const Gate& b) {
  auto on = [](const Gate& g, int q) { return g.a == q || (g.two_qubit() && g.b == q); };
  if (on(b, a.a)) return false;
  if (a.two_qubit() && on(b, a.b)) return false;
  return true;
}

// May a CNOT slide past g without changing the unitary?  Only rules with a
// direct algebraic justification are used: disjoint supports, diagonal
// single-qubit gates on the control, shared control, shared target.
inline bool cnot_commutes_past(const Gate& cn, const Gate& g) {
  if (disjoint(cn, g)) return true;
  if ((g.kind == GateKind::RotZ || g.kind == GateKind::S ||
       g.kind == GateKind::Sdg) &&
      g.a == cn.a)
    return true;
  if (g.kind == GateKind::CNOT) {
    if (g.a == cn.a && g.b != cn.b) return true;
    if (g.b == cn.b && g.a != cn.a) return true;
  }
  return false;
}

}  // namespace detail

// Deletes zero-angle rotations and CNOT pairs that become adjacent under
// the sound commutation rules above, sweeping to a fixpoint.  The unitary
// is preserved exactly.
inline Circuit peephole_cancel(const Circuit& c, double tol = 1e-15) {
  std::vector<Gate> g = c.gates();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> kept;
    kept.reserve(g.size());
    for (const Gate& gate : g) {
      if ((gate.kind == GateKind::RotZ || gate.kind == GateKind::CPhase) &&
          std::abs(gate.theta) < tol) {
        changed = true;
        continue;
      }
      kept.push_back(gate);
    }
    g = std::move(kept);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].kind != GateKind::CNOT) continue;
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[j].kind == GateKind::CNOT && g[j].a == g[i].a && g[j].b == g[i].b) {
          g.erase(g.begin() + static_cast<long>(j));
          g.erase(g.begin() + static_cast<long>(i));
          changed = true;
          if (i > 0) --i;
          break;
        }
        if (!detail::cnot_commutes_past(g[i], g[j])) break;
      }
    }
  }
  Circuit out(c.num_qubits(), c.partition());
  for (const Gate& gate : g) out.append(gate);
  return out;
}

}  // namespace qsynth
