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
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/lattice.hpp"
#include "qsynth/pauli.hpp"

namespace qsynth {

// Fermionic modes live on qubits above the boson block, one qubit per
// complex mode, in site order.  Each site block holds `matter_modes`
// physical modes followed by `aux_modes` auxiliary modes.
struct JwMapping {
  int boson_qubits = 0;
  int sites = 0;
  int matter_modes = 0;
  int aux_modes = 0;

  int modes_per_site() const { return matter_modes + aux_modes; }
  int total_modes() const { return sites * modes_per_site(); }
  int total_qubits() const { return boson_qubits + total_modes(); }

  // 1-based global complex-mode index.
  int matter_mode(int site, int a) const {
    return (site - 1) * modes_per_site() + a;
  }
  int aux_mode(int site, int k) const {
    return (site - 1) * modes_per_site() + matter_modes + k;
  }
  int mode_qubit(int mode) const { return boson_qubits + mode - 1; }
};

// Majorana operator hat-psi_k (1-based, two per complex mode), normalized to
// {psi_j, psi_k} = 2 delta_jk: X or Y on the mode's qubit behind a Z string.
inline PauliString majorana_string(const JwMapping& m, int k) {
  if (k < 1 || k > 2 * m.total_modes())
    throw std::invalid_argument("majorana index out of range");
  int mode = (k + 1) / 2;
  PauliString s = PauliString::single(m.mode_qubit(mode),
                                      (k % 2 == 1) ? Letter::X : Letter::Y);
  for (int j = 1; j < mode; ++j) s.set(m.mode_qubit(j), Letter::Z);
  return s;
}

// Psi_j = psi_{2j-1} + i psi_{2j} (annihilation); dagger flips the sign of
// the imaginary part.  Normalized so {Psi_j, Psi_j^dag} = 4.
inline CSum mode_op(const JwMapping& m, int mode, bool dagger) {
  CSum out;
  out.emplace_back(complexd(1.0, 0.0), majorana_string(m, 2 * mode - 1));
  out.emplace_back(complexd(0.0, dagger ? -1.0 : 1.0),
                   majorana_string(m, 2 * mode));
  return out;
}

struct RotationTerm {
  double coeff = 0.0;
  PauliString string;
};

// Terms sharing one Jordan-Wigner interval.  `interior` lists the qubits
// that carry a parity Z in every term (endpoints excluded), ascending.
struct ChainUnit {
  std::vector<int> interior;
  std::vector<RotationTerm> terms;
};

// A batch of units emitted together.  For fusable groups the synthesizer may
// share parity chains between consecutive units; exp(-i eps c P) factors for
// distinct P commute only within the scheduling assumptions of each group,
// so unit order inside a group is part of the compiled artifact.
struct TermGroup {
  int axis = 0;  // 0: boson potential or on-site
  bool wrap = false;
  int slab = 0;   // coordinate along `axis` of the lower end (0 for wrap)
  int upper = 0;  // flattened coordinates above `axis`
  bool fusable = false;
  std::vector<ChainUnit> units;

  std::string label() const {
    if (axis == 0) return "local";
    std::string s = "axis" + std::to_string(axis);
    if (wrap)
      s += "-wrap";
    else
      s += "-slab" + std::to_string(slab);
    if (upper > 0) s += "-u" + std::to_string(upper);
    return s;
  }
};

struct CompiledModel {
  BosonRegister bosons;
  LatticeGeometry geometry;
  JwMapping mapping;
  int num_qubits = 0;
  Partition partition;
  // Coordinate-basis block: boson potential plus all compiled hopping
  // strings, identity included.
  PauliSum potential;
  // Momentum-basis block, diagonal after the centered Fourier transform.
  PauliSum kinetic;
  std::vector<RotationTerm> kinetic_rotations;
  std::vector<TermGroup> groups;
};

// Optional multiplicative dressing applied to a hopping bilinear on a given
// link before Hermitization (used by the aux-Majorana transform).
using LinkDressing = std::function<CSum(const JwMapping&, const Link&)>;

struct CompileOptions {
  int aux_per_site = 0;
  LinkDressing dress;
};

namespace detail {

struct PendingUnit {
  long sort_key = 0;
  int order = 0;
  ChainUnit unit;
};

inline void push_rotations(const PauliSum& s, ChainUnit& unit) {
  for (const auto& [c, p] : s.terms())
    if (p.weight() > 0) unit.terms.push_back({c, p});
}

}  // namespace detail

// Maps every term of the model onto Pauli rotations and assembles the
// emission plan: boson potential first, then on-site terms, then link
// classes ordered by (axis, wrap, slab, upper coordinates).  Units inside a
// link group are ordered by the lower endpoint's site index, which makes
// consecutive Jordan-Wigner intervals differ by O(1) qubits for both
// orderings and enables chain sharing along axes >= 2.
inline CompiledModel compile_model(const HamiltonianModel& model,
                                   const CompileOptions& opt = {}) {
  model.validate();
  CompiledModel out;
  out.bosons = model.bosons;
  out.geometry = model.geometry;
  out.mapping = JwMapping{model.bosons.qubits(), model.geometry.num_sites(),
                          model.modes_per_site, opt.aux_per_site};
  out.num_qubits = out.mapping.total_qubits();
  out.partition = Partition{model.bosons.qubits(),
                            out.mapping.sites * out.mapping.matter_modes,
                            out.mapping.sites * out.mapping.aux_modes, 0};

  // Boson-diagonal part.
  PauliSum boson_pot;
  for (const auto& t : model.potential)
    boson_pot.add(expand_monomial(model.bosons, t.coeff, t.bosons));
  boson_pot.canonicalize();
  out.potential.add(boson_pot);
  if (boson_pot.size() > 0) {
    TermGroup g;
    g.axis = 0;
    ChainUnit u;
    detail::push_rotations(boson_pot, u);
    if (!u.terms.empty()) g.units.push_back(std::move(u));
    if (!g.units.empty()) out.groups.push_back(std::move(g));
  }

  out.kinetic = kinetic_operator(model.bosons);
  for (const auto& [c, p] : out.kinetic.terms())
    if (p.weight() > 0) out.kinetic_rotations.push_back({c, p});

  // Hopping terms, bucketed by link class.
  TermGroup onsite;
  onsite.axis = 0;
  using Key = std::tuple<int, int, int, int>;  // axis, wrap, slab, upper
  std::map<Key, std::vector<detail::PendingUnit>> buckets;
  int order = 0;
  const int L = model.geometry.extent;
  for (const auto& t : model.hopping) {
    int g1 = out.mapping.matter_mode(t.n, t.a);
    int g2 = out.mapping.matter_mode(t.nprime, t.b);
    CSum raw = csum_mul(mode_op(out.mapping, g1, t.dagger_n),
                        mode_op(out.mapping, g2, t.dagger_nprime));
    csum_scale(raw, t.coeff);
    if (!t.monomial.empty()) {
      std::vector<int> powers;
      for (const auto& f : t.monomial)
        for (int r = 0; r < f.power; ++r) powers.push_back(f.boson);
      raw = csum_mul(raw, csum_from(expand_monomial(model.bosons, 1.0, powers)));
    }

    std::optional<Link> link;
    if (t.n != t.nprime) link = link_between(model.geometry, t.n, t.nprime);
    if (link && opt.dress) raw = csum_mul(raw, opt.dress(out.mapping, *link));

    PauliSum herm = hermitize(raw);
    if (herm.size() == 0) continue;
    out.potential.add(herm);

    ChainUnit unit;
    if (!opt.dress) {
      int qlo = out.mapping.mode_qubit(std::min(g1, g2));
      int qhi = out.mapping.mode_qubit(std::max(g1, g2));
      for (int q = qlo + 1; q < qhi; ++q) unit.interior.push_back(q);
    }
    detail::push_rotations(herm, unit);
    if (unit.terms.empty()) continue;

    if (!link) {
      onsite.units.push_back(std::move(unit));
      continue;
    }
    auto c = site_coords(model.geometry, link->from);
    int slab = link->wrap ? 0 : c[link->axis - 1];
    int upper = 0, stride = 1;
    for (int i = link->axis; i < model.geometry.dims; ++i) {
      upper += (c[i] - 1) * stride;
      stride *= L;
    }
    Key key{link->axis, link->wrap ? 1 : 0, slab, upper};
    buckets[key].push_back(
        {static_cast<long>(link->from), order++, std::move(unit)});
  }

  if (!onsite.units.empty()) out.groups.push_back(std::move(onsite));
  for (auto& [key, pending] : buckets) {
    std::stable_sort(pending.begin(), pending.end(),
                     [](const auto& a, const auto& b) {
                       if (a.sort_key != b.sort_key) return a.sort_key < b.sort_key;
                       return a.order < b.order;
                     });
    TermGroup g;
    g.axis = std::get<0>(key);
    g.wrap = std::get<1>(key) != 0;
    g.slab = std::get<2>(key);
    g.upper = std::get<3>(key);
    g.fusable = !opt.dress && g.axis >= 2;
    for (auto& p : pending) g.units.push_back(std::move(p.unit));
    out.groups.push_back(std::move(g));
  }

  out.potential.canonicalize();
  return out;
}

inline CompiledModel compile_jw(const HamiltonianModel& model) {
  return compile_model(model);
}

}  // namespace qsynth
