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

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsynth/boson.hpp"
#include "qsynth/pauli.hpp"

namespace qsynth {

enum class Boundary { Open, Periodic };
enum class Ordering { RowMajorLex, Snake };

// Hypercubic lattice of extent L in each of `dims` directions.  Sites are
// identified by their 1-based position in the chosen linear ordering.
struct LatticeGeometry {
  int dims = 1;
  int extent = 2;
  Boundary boundary = Boundary::Open;
  Ordering ordering = Ordering::RowMajorLex;

  int num_sites() const {
    int n = 1;
    for (int i = 0; i < dims; ++i) n *= extent;
    return n;
  }

  void check() const {
    if (dims < 1 || dims > 3) throw std::invalid_argument("dims must be 1..3");
    if (extent < 2) throw std::invalid_argument("extent must be >= 2");
  }
};

// Coordinates are 1-based, coords[0] along the first (fastest) axis.
inline int site_index(const LatticeGeometry& g, const std::vector<int>& coords) {
  g.check();
  if (static_cast<int>(coords.size()) != g.dims)
    throw std::invalid_argument("coordinate rank mismatch");
  for (int c : coords)
    if (c < 1 || c > g.extent)
      throw std::invalid_argument("coordinate out of range");
  const int L = g.extent;
  if (g.ordering == Ordering::RowMajorLex) {
    int idx = 0, stride = 1;
    for (int i = 0; i < g.dims; ++i) {
      idx += (coords[i] - 1) * stride;
      stride *= L;
    }
    return idx + 1;
  }
  // Snake: each level of the recursion reverses every other slab, so that
  // consecutive indices are always nearest neighbours.
  int idx = coords[0];  // 1-based within the first axis
  int block = L;
  for (int i = 1; i < g.dims; ++i) {
    int c = coords[i];
    int inner = (c % 2 == 1) ? idx : block + 1 - idx;
    idx = (c - 1) * block + inner;
    block *= L;
  }
  return idx;
}

inline std::vector<int> site_coords(const LatticeGeometry& g, int index) {
  g.check();
  if (index < 1 || index > g.num_sites())
    throw std::invalid_argument("site index out of range");
  const int L = g.extent;
  std::vector<int> coords(static_cast<std::size_t>(g.dims));
  if (g.ordering == Ordering::RowMajorLex) {
    int rem = index - 1;
    for (int i = 0; i < g.dims; ++i) {
      coords[i] = rem % L + 1;
      rem /= L;
    }
    return coords;
  }
  int block = g.num_sites() / L;
  int rem = index;
  for (int i = g.dims - 1; i >= 1; --i) {
    int c = (rem - 1) / block + 1;
    int inner = rem - (c - 1) * block;
    if (c % 2 == 0) inner = block + 1 - inner;
    coords[i] = c;
    rem = inner;
    block /= L;
  }
  coords[0] = rem;
  return coords;
}

// A lattice link along `axis` (1-based).  `from` sits at the lower
// coordinate (coordinate L for wrap links), `to` at the higher (1 for wrap).
struct Link {
  int axis = 1;
  bool wrap = false;
  int from = 0;
  int to = 0;
};

// Enumerates links axis by axis, interior before wrap, ascending from-site.
inline std::vector<Link> classify_links(const LatticeGeometry& g) {
  g.check();
  std::vector<Link> links;
  const int L = g.extent;
  for (int axis = 1; axis <= g.dims; ++axis) {
    for (int wrap = 0; wrap <= 1; ++wrap) {
      if (wrap && g.boundary == Boundary::Open) continue;
      for (int n = 1; n <= g.num_sites(); ++n) {
        std::vector<int> c = site_coords(g, n);
        if (!wrap && c[axis - 1] >= L) continue;
        if (wrap && c[axis - 1] != L) continue;
        std::vector<int> cc = c;
        cc[axis - 1] = wrap ? 1 : c[axis - 1] + 1;
        links.push_back(Link{axis, wrap != 0, n, site_index(g, cc)});
      }
    }
  }
  return links;
}

// Classification of an explicit site pair; nullopt when not a lattice edge.
inline std::optional<Link> link_between(const LatticeGeometry& g, int n,
                                        int nprime) {
  std::vector<int> a = site_coords(g, n);
  std::vector<int> b = site_coords(g, nprime);
  int axis = 0;
  bool wrap = false, swapped = false;
  for (int i = 0; i < g.dims; ++i) {
    if (a[i] == b[i]) continue;
    if (axis != 0) return std::nullopt;  // differs along two axes
    axis = i + 1;
    if (b[i] - a[i] == 1) {
    } else if (a[i] - b[i] == 1) {
      swapped = true;
    } else if (g.boundary == Boundary::Periodic && a[i] == g.extent && b[i] == 1) {
      wrap = true;
    } else if (g.boundary == Boundary::Periodic && b[i] == g.extent && a[i] == 1) {
      wrap = true;
      swapped = true;
    } else {
      return std::nullopt;
    }
  }
  if (axis == 0) return std::nullopt;  // same site
  return Link{axis, wrap, swapped ? nprime : n, swapped ? n : nprime};
}

struct BosonMonomialFactor {
  int boson = 0;
  int power = 1;
};

// coeff * Psi(^dag)_{n,a} Psi(^dag)_{n',b} * prod x_{boson}^{power}; the
// Hermitian conjugate is inserted at compile time when the term is not
// already self-adjoint.
struct HoppingTerm {
  int n = 1, nprime = 1;
  int a = 1, b = 1;
  bool dagger_n = true, dagger_nprime = false;
  complexd coeff = 1.0;
  std::vector<BosonMonomialFactor> monomial;
};

// coeff * prod_k x_{bosons[k]}, diagonal in the coordinate basis.
struct PotentialTerm {
  double coeff = 0.0;
  std::vector<int> bosons;
};

struct HamiltonianModel {
  LatticeGeometry geometry;
  BosonRegister bosons;
  int modes_per_site = 0;
  std::vector<PotentialTerm> potential;
  std::vector<HoppingTerm> hopping;
  // Cap on the total boson-monomial degree a hopping term may carry.
  int max_monomial_degree = 4;

  void validate() const {
    geometry.check();
    if (bosons.num_bosons < 0 || (bosons.num_bosons > 0 && bosons.Q < 1))
      throw std::invalid_argument("boson register needs Q >= 1");
    if (bosons.num_bosons > 0 && !(bosons.R > 0))
      throw std::invalid_argument("boson register needs R > 0");
    if (modes_per_site < 0)
      throw std::invalid_argument("negative modes_per_site");
    for (const auto& t : potential) {
      for (int b : t.bosons) bosons.check(b);
    }
    for (const auto& t : hopping) {
      if (t.n < 1 || t.n > geometry.num_sites() || t.nprime < 1 ||
          t.nprime > geometry.num_sites())
        throw std::invalid_argument("hopping site out of range");
      if (t.a < 1 || t.a > modes_per_site || t.b < 1 || t.b > modes_per_site)
        throw std::invalid_argument("hopping mode out of range");
      if (t.n != t.nprime && !link_between(geometry, t.n, t.nprime))
        throw std::invalid_argument("hopping pair is not a lattice edge");
      int degree = 0;
      for (const auto& f : t.monomial) {
        bosons.check(f.boson);
        if (f.power < 1) throw std::invalid_argument("monomial power < 1");
        degree += f.power;
      }
      if (degree > max_monomial_degree)
        throw std::invalid_argument("hopping boson monomial degree " +
                                    std::to_string(degree) + " exceeds cap " +
                                    std::to_string(max_monomial_degree));
    }
  }
};

// ---------------------------------------------------------------------------
// Presets

// Coupled oscillators on a 1D chain: sum_i [p_i^2/2 + omega^2 x_i^2 / 2]
// + kappa * sum_<ij> x_i x_j.  Bosons only.
inline HamiltonianModel preset_harmonic_chain(int L, int Q, double R,
                                              double omega, double kappa,
                                              Boundary boundary) {
  HamiltonianModel m;
  m.geometry = LatticeGeometry{1, L, boundary, Ordering::RowMajorLex};
  m.bosons = BosonRegister{L, Q, R};
  m.modes_per_site = 0;
  for (int i = 0; i < L; ++i)
    m.potential.push_back({omega * omega / 2.0, {i, i}});
  if (kappa != 0.0) {
    for (const Link& l : classify_links(m.geometry))
      m.potential.push_back({kappa, {l.from - 1, l.to - 1}});
  }
  m.validate();
  return m;
}

// Single anharmonic mode: p^2/2 + mu2 x^2 / 2 + lambda x^4.
inline HamiltonianModel preset_quartic_oscillator(int Q, double R, double mu2,
                                                  double lambda) {
  HamiltonianModel m;
  m.geometry = LatticeGeometry{1, 2, Boundary::Open, Ordering::RowMajorLex};
  m.bosons = BosonRegister{1, Q, R};
  m.modes_per_site = 0;
  m.potential.push_back({mu2 / 2.0, {0, 0}});
  if (lambda != 0.0) m.potential.push_back({lambda, {0, 0, 0, 0}});
  m.validate();
  return m;
}

// One fermion mode and one boson per site; nearest-neighbour hopping
// t * Psi^dag_n Psi_n' x_n + h.c., on-site omega^2 x^2 / 2 wells, free boson
// kinetic term.  The workhorse for synthesis and Trotter tests.
inline HamiltonianModel preset_hopping_toy(int dims, int L, Boundary boundary,
                                           Ordering ordering, int Q, double R,
                                           double t, double omega) {
  HamiltonianModel m;
  m.geometry = LatticeGeometry{dims, L, boundary, ordering};
  m.bosons = BosonRegister{m.geometry.num_sites(), Q, R};
  m.modes_per_site = 1;
  for (int i = 0; i < m.geometry.num_sites(); ++i)
    if (omega != 0.0) m.potential.push_back({omega * omega / 2.0, {i, i}});
  for (const Link& l : classify_links(m.geometry)) {
    HoppingTerm h;
    h.n = l.from;
    h.nprime = l.to;
    h.a = h.b = 1;
    h.dagger_n = true;
    h.dagger_nprime = false;
    h.coeff = t;
    h.monomial = {{l.from - 1, 1}};
    m.hopping.push_back(h);
  }
  m.validate();
  return m;
}

// Same geometry and couplings, bosons removed: pure fermion hopping.
inline HamiltonianModel preset_fermion_hopping(int dims, int L,
                                               Boundary boundary,
                                               Ordering ordering, double t) {
  HamiltonianModel m;
  m.geometry = LatticeGeometry{dims, L, boundary, ordering};
  m.bosons = BosonRegister{0, 0, 1.0};
  m.modes_per_site = 1;
  for (const Link& l : classify_links(m.geometry)) {
    HoppingTerm h;
    h.n = l.from;
    h.nprime = l.to;
    h.coeff = t;
    m.hopping.push_back(h);
  }
  m.validate();
  return m;
}

// Gauge-theory layout: 8*Nc*Nf Majorana (4*Nc*Nf complex) matter modes per
// site and 2*d*Nc^2 bosonic link components per site.  Hopping structure
// only (diagonal internal pairs, unit couplings); used by the resource
// estimator, which synthesizes a unit cell and scales the leading term.
inline HamiltonianModel preset_qcd_layout(int Nc, int Nf, int dims, int L,
                                          Boundary boundary, Ordering ordering,
                                          int Q, double R) {
  if (Nc < 1 || Nf < 1) throw std::invalid_argument("Nc, Nf must be >= 1");
  HamiltonianModel m;
  m.geometry = LatticeGeometry{dims, L, boundary, ordering};
  const int sites = m.geometry.num_sites();
  const int bosons_per_site = 2 * dims * Nc * Nc;
  m.bosons = BosonRegister{sites * bosons_per_site, Q, R};
  m.modes_per_site = 4 * Nc * Nf;
  for (const Link& l : classify_links(m.geometry)) {
    for (int a = 1; a <= m.modes_per_site; ++a) {
      HoppingTerm h;
      h.n = l.from;
      h.nprime = l.to;
      h.a = h.b = a;
      h.coeff = 1.0;
      h.monomial = {{(l.from - 1) * bosons_per_site + (l.axis - 1) * Nc * Nc, 1}};
      m.hopping.push_back(h);
    }
  }
  m.validate();
  return m;
}

inline int qcd_real_modes_per_site(int Nc, int Nf) { return 8 * Nc * Nf; }
inline int qcd_fermion_qubits_per_site(int Nc, int Nf) { return 4 * Nc * Nf; }

}  // namespace qsynth
