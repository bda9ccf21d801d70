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
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsynth/dense.hpp"
#include "qsynth/jw.hpp"
#include "qsynth/lattice.hpp"

namespace qsynth {

// i * psi_a * psi_b for distinct Majoranas: Hermitian, squares to I.
inline PauliString majorana_pair(const JwMapping& m, int a, int b) {
  PauliString p = mul(majorana_string(m, a), majorana_string(m, b));
  p.multiply_phase_exp(1);
  if (!p.is_hermitian())
    throw std::logic_error("majorana pair is not Hermitian");
  return p;
}

// One auxiliary Majorana pair (rho_n, chi_n) per site and transverse axis:
// axis 2 uses the first aux mode of each site block, axis 3 the second.
inline int vc_rho(const JwMapping& m, int site, int axis) {
  return 2 * m.aux_mode(site, axis - 1) - 1;
}
inline int vc_chi(const JwMapping& m, int site, int axis) {
  return 2 * m.aux_mode(site, axis - 1);
}

struct VcAugmentation {
  int aux_pairs_per_site = 0;
  // Dressing operator i rho_lo chi_hi for every transverse link.
  std::vector<std::pair<Link, PauliString>> paired_links;
};

struct StabilizerSet {
  // One i rho chi per transverse link; strings may span many site blocks.
  std::vector<PauliString> full_set;
  // Short generating set: the snake-turn stabilizer of each slab pair plus
  // adjacent-link products (rho rho)(chi chi).
  std::vector<PauliString> local_generators;
  // Pairings of the boundary Majoranas no link consumes; together with
  // full_set they pin the auxiliary sector completely.
  std::vector<PauliString> pins;
};

namespace detail {

inline int upper_coord_key(const LatticeGeometry& g, const std::vector<int>& c,
                           int axis) {
  int key = 0, stride = 1;
  for (int i = axis; i < g.dims; ++i) {
    key += (c[i] - 1) * stride;
    stride *= g.extent;
  }
  return key;
}

}  // namespace detail

// Builds the link stabilizers, their short generators, and the boundary
// pins for every transverse axis.
inline StabilizerSet build_stabilizer_set(const LatticeGeometry& g,
                                          const JwMapping& m,
                                          VcAugmentation* aug = nullptr) {
  StabilizerSet out;
  for (int axis = 2; axis <= g.dims; ++axis) {
    // key = (slab along axis, flattened coordinates above axis)
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> slabs;
    std::vector<bool> rho_used(g.num_sites() + 1, false);
    std::vector<bool> chi_used(g.num_sites() + 1, false);
    for (const Link& l : classify_links(g)) {
      if (l.axis != axis) continue;
      int lo = std::min(l.from, l.to);
      int hi = std::max(l.from, l.to);
      PauliString s = majorana_pair(m, vc_rho(m, lo, axis), vc_chi(m, hi, axis));
      out.full_set.push_back(s);
      rho_used[lo] = true;
      chi_used[hi] = true;
      if (aug) aug->paired_links.emplace_back(l, s);
      auto c = site_coords(g, l.from);
      slabs[{c[axis - 1], detail::upper_coord_key(g, c, axis)}].emplace_back(lo,
                                                                             hi);
    }
    for (auto& [key, links] : slabs) {
      std::sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
        return a.second - a.first < b.second - b.first;
      });
      auto stab = [&](const std::pair<int, int>& l) {
        return majorana_pair(m, vc_rho(m, l.first, axis),
                             vc_chi(m, l.second, axis));
      };
      out.local_generators.push_back(stab(links[0]));
      for (std::size_t k = 0; k + 1 < links.size(); ++k)
        out.local_generators.push_back(mul(stab(links[k + 1]), stab(links[k])));
    }
    // Each link consumes one rho and one chi; the Majoranas left over sit on
    // boundary slabs (which slab holds which flavour depends on the snake
    // direction).  Pin them pairwise so the auxiliary sector is fully fixed.
    std::vector<int> chi_sites, rho_sites;
    for (int n = 1; n <= g.num_sites(); ++n) {
      if (!chi_used[n]) chi_sites.push_back(n);
      if (!rho_used[n]) rho_sites.push_back(n);
    }
    for (std::size_t i = 0; i + 1 < chi_sites.size(); i += 2)
      out.pins.push_back(majorana_pair(m, vc_chi(m, chi_sites[i], axis),
                                       vc_chi(m, chi_sites[i + 1], axis)));
    for (std::size_t i = 0; i + 1 < rho_sites.size(); i += 2)
      out.pins.push_back(majorana_pair(m, vc_rho(m, rho_sites[i], axis),
                                       vc_rho(m, rho_sites[i + 1], axis)));
    if (chi_sites.size() % 2 == 1)
      out.pins.push_back(majorana_pair(m, vc_chi(m, chi_sites.back(), axis),
                                       vc_rho(m, rho_sites.back(), axis)));
  }
  return out;
}

struct VcResult {
  CompiledModel compiled;
  StabilizerSet stabilizers;
  VcAugmentation augmentation;
};

// Compiles the model with one auxiliary mode per site per transverse axis;
// transverse hopping terms are multiplied by their link's i rho chi before
// Hermitization, which cancels the intervening parity chains and leaves
// every compiled string supported on the two endpoint site blocks.
inline VcResult vc_transform(const HamiltonianModel& model) {
  if (model.geometry.ordering != Ordering::Snake)
    throw std::invalid_argument(
        "aux-pair transform requires the snake site ordering");
  if (model.geometry.boundary != Boundary::Open)
    throw std::invalid_argument(
        "aux-pair transform requires open boundary conditions");
  VcResult out;
  out.augmentation.aux_pairs_per_site = model.geometry.dims - 1;
  CompileOptions opt;
  opt.aux_per_site = model.geometry.dims - 1;
  opt.dress = [](const JwMapping& m, const Link& l) -> CSum {
    if (l.axis < 2)
      return {{complexd(1.0, 0.0), PauliString::identity()}};
    int lo = std::min(l.from, l.to);
    int hi = std::max(l.from, l.to);
    PauliString s = majorana_pair(m, vc_rho(m, lo, l.axis), vc_chi(m, hi, l.axis));
    return {{complexd(1.0, 0.0), s}};
  };
  out.compiled = compile_model(model, opt);
  out.stabilizers =
      build_stabilizer_set(model.geometry, out.compiled.mapping,
                           &out.augmentation);
  return out;
}

// -g * sum of the short generators; any g > 0 gaps the physical sector.
inline PauliSum penalty_hamiltonian(const StabilizerSet& stab, double g) {
  if (!(g > 0)) throw std::invalid_argument("penalty strength must be > 0");
  PauliSum out;
  for (const auto& s : stab.local_generators) out.add(-g, s);
  out.canonicalize();
  return out;
}

// Projector onto the joint +1 eigenspace of all link stabilizers and pins;
// its rank is 2^(matter qubits).
inline Mat physical_projector(const StabilizerSet& stab, int num_qubits) {
  check_oracle_size(num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Mat pi = Mat::Identity(dim, dim);
  auto fold = [&](const PauliString& s) {
    pi = 0.5 * (pi + pi * pauli_string_matrix(s, num_qubits));
  };
  for (const auto& s : stab.full_set) fold(s);
  for (const auto& s : stab.pins) fold(s);
  return pi;
}

}  // namespace qsynth
