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

#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qsynth/vc.hpp"
#include "qsynth/verify.hpp"

using namespace qsynth;

namespace {

HamiltonianModel l2_model(double t = 0.8) {
  auto m = preset_fermion_hopping(2, 2, Boundary::Open, Ordering::Snake, t);
  HoppingTerm num;
  num.n = num.nprime = 2;
  num.a = num.b = 1;
  num.coeff = 0.35;
  m.hopping.push_back(num);
  return m;
}

// Site block of a fermionic qubit (1-based site) for m matter + aux modes.
int block_of(const JwMapping& m, int qubit) {
  return (qubit - m.boson_qubits) / m.modes_per_site() + 1;
}

}  // namespace

TEST_CASE("transform rejects unsupported geometry") {
  auto periodic =
      preset_fermion_hopping(2, 2, Boundary::Periodic, Ordering::Snake, 1.0);
  CHECK_THROWS_AS(vc_transform(periodic), std::invalid_argument);
  auto rowmajor =
      preset_fermion_hopping(2, 2, Boundary::Open, Ordering::RowMajorLex, 1.0);
  CHECK_THROWS_AS(vc_transform(rowmajor), std::invalid_argument);
}

TEST_CASE("augmented register adds one qubit per site in d=2") {
  auto vc = vc_transform(l2_model());
  CHECK(vc.compiled.num_qubits == 8);
  CHECK(vc.compiled.partition.fermion == 4);
  CHECK(vc.compiled.partition.aux == 4);
  CHECK(vc.augmentation.aux_pairs_per_site == 1);
  REQUIRE(vc.augmentation.paired_links.size() == 2);
  for (const auto& [link, s] : vc.augmentation.paired_links) {
    CHECK(link.axis == 2);
    CHECK(s.is_hermitian());
    CHECK(mul(s, s).str() == "+I");
  }
}

TEST_CASE("dressed vertical terms live on the endpoint blocks only") {
  auto vc = vc_transform(l2_model());
  const auto& m = vc.compiled.mapping;
  // Snake L=2 vertical links: (1,4) and (2,3).
  int long_checked = 0;
  for (const auto& g : vc.compiled.groups) {
    if (g.axis != 2) continue;
    for (const auto& u : g.units) {
      CHECK(u.interior.empty());
      std::set<int> blocks;
      for (const auto& t : u.terms)
        for (const auto& [q, l] : t.string.letters()) blocks.insert(block_of(m, q));
      REQUIRE(blocks.size() == 2);
      int lo = *blocks.begin(), hi = *blocks.rbegin();
      CHECK(((lo == 1 && hi == 4) || (lo == 2 && hi == 3)));
      ++long_checked;
    }
  }
  CHECK(long_checked == 2);
}

TEST_CASE("axis-1 terms agree with plain JW on the matter qubits") {
  auto model = preset_fermion_hopping(2, 2, Boundary::Open, Ordering::Snake, 0.8);
  auto vc = vc_transform(model);
  auto jw = compile_jw(model);
  PauliSum vc_axis1, jw_axis1;
  for (const auto& g : vc.compiled.groups)
    if (g.axis == 1)
      for (const auto& u : g.units)
        for (const auto& t : u.terms) {
          // Matter qubits sit at even positions; aux qubits may carry only
          // the parity Z of the crossed auxiliary mode.
          PauliString matter_part;
          for (const auto& [q, l] : t.string.letters()) {
            if (q % 2 == 0) {
              matter_part.set(q / 2, l);
            } else {
              CHECK(l == Letter::Z);
            }
          }
          vc_axis1.add(t.coeff, matter_part);
        }
  for (const auto& g : jw.groups)
    if (g.axis == 1)
      for (const auto& u : g.units)
        for (const auto& t : u.terms) jw_axis1.add(t.coeff, t.string);
  vc_axis1.canonicalize();
  jw_axis1.canonicalize();
  CHECK(vc_axis1.str() == jw_axis1.str());
}

TEST_CASE("stabilizers match the snake-turn construction at L=2") {
  auto vc = vc_transform(l2_model());
  const auto& m = vc.compiled.mapping;
  REQUIRE(vc.stabilizers.full_set.size() == 2);
  REQUIRE(vc.stabilizers.local_generators.size() == 2);
  REQUIRE(vc.stabilizers.pins.size() == 2);

  PauliString s14 = majorana_pair(m, vc_rho(m, 1, 2), vc_chi(m, 4, 2));
  PauliString s23 = majorana_pair(m, vc_rho(m, 2, 2), vc_chi(m, 3, 2));
  CHECK(vc.stabilizers.full_set[0] == s14);
  CHECK(vc.stabilizers.full_set[1] == s23);
  // Turn stabilizer first, then the adjacent product (rho1 rho2)(chi3 chi4).
  CHECK(vc.stabilizers.local_generators[0] == s23);
  CHECK(vc.stabilizers.local_generators[1] == mul(s14, s23));
  // The product telescopes to the short two-pair form (rho1 rho2)(chi4 chi3).
  PauliString rr = mul(majorana_string(m, vc_rho(m, 1, 2)),
                       majorana_string(m, vc_rho(m, 2, 2)));
  PauliString cc = mul(majorana_string(m, vc_chi(m, 4, 2)),
                       majorana_string(m, vc_chi(m, 3, 2)));
  CHECK(vc.stabilizers.local_generators[1] == mul(rr, cc));
  // Generators reproduce the full set by multiplication.
  CHECK(mul(vc.stabilizers.local_generators[1],
            vc.stabilizers.local_generators[0]) == s14);
}

TEST_CASE("stabilizers commute with each other and the Hamiltonian") {
  for (int L : {2, 3}) {
    auto model =
        preset_fermion_hopping(2, L, Boundary::Open, Ordering::Snake, 0.7);
    auto vc = vc_transform(model);
    std::vector<PauliString> all = vc.stabilizers.full_set;
    for (const auto& s : vc.stabilizers.local_generators) all.push_back(s);
    for (const auto& s : vc.stabilizers.pins) all.push_back(s);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        REQUIRE(commutes(all[i], all[j]));
    for (const auto& s : all)
      for (const auto& [c, p] : vc.compiled.potential.terms())
        REQUIRE(commutes(s, p));
  }
  // Dense spot check at L=2.
  auto vc = vc_transform(l2_model());
  Mat h = pauli_sum_matrix(vc.compiled.potential, 8);
  for (const auto& s : vc.stabilizers.full_set) {
    Mat sm = pauli_string_matrix(s, 8);
    CHECK(max_abs(h * sm - sm * h) < 1e-12);
  }
}

TEST_CASE("generator weights stay bounded as L grows") {
  int max2 = 0;
  for (int L : {2, 3, 4}) {
    auto model =
        preset_fermion_hopping(2, L, Boundary::Open, Ordering::Snake, 1.0);
    auto vc = vc_transform(model);
    int mw = 0;
    for (const auto& s : vc.stabilizers.local_generators)
      mw = std::max(mw, s.weight());
    for (const auto& s : vc.stabilizers.local_generators)
      CHECK(s.weight() <= 4 * vc.compiled.mapping.modes_per_site());
    if (L == 2)
      max2 = mw;
    else
      CHECK(mw <= std::max(max2, 4 * vc.compiled.mapping.modes_per_site()));
  }
}

TEST_CASE("compiled term weights are constant across lattice sizes") {
  std::vector<int> weights;
  for (int L : {2, 3, 4}) {
    auto model =
        preset_fermion_hopping(2, L, Boundary::Open, Ordering::Snake, 1.0);
    auto vc = vc_transform(model);
    weights.push_back(vc.compiled.potential.max_weight());
  }
  CHECK(weights[0] == weights[1]);
  CHECK(weights[1] == weights[2]);
}

TEST_CASE("penalty Hamiltonian selects the joint +1 stabilizer space") {
  auto vc = vc_transform(l2_model());
  PauliSum pen = penalty_hamiltonian(vc.stabilizers, 1.0);
  CHECK(pen.size() == 2);
  CHECK_THROWS_AS(penalty_hamiltonian(vc.stabilizers, 0.0),
                  std::invalid_argument);

  // Projector onto the +1 space of the full link set (pins left free).
  const Eigen::Index dim = 1 << 8;
  Mat lp = Mat::Identity(dim, dim);
  for (const auto& s : vc.stabilizers.full_set)
    lp = 0.5 * (lp + lp * pauli_string_matrix(s, 8));
  CHECK(std::lround(lp.trace().real()) == 64);

  Mat pm = pauli_sum_matrix(pen, 8);
  // Ground energy -2 with the full link space as its eigenspace.
  CHECK(max_abs(pm * lp - (-2.0) * lp) < 1e-12);
  auto evs = eigenvalues_sorted(pm);
  CHECK(evs(0) == Catch::Approx(-2.0));
}

TEST_CASE("physical projector has rank 2^matter and absorbs stabilizers") {
  auto vc = vc_transform(l2_model());
  Mat pi = physical_projector(vc.stabilizers, 8);
  CHECK(max_abs(pi * pi - pi) < 1e-12);
  CHECK(max_abs(pi - pi.adjoint()) < 1e-12);
  CHECK(std::lround(pi.trace().real()) == 16);
  for (const auto& s : vc.stabilizers.full_set)
    CHECK(max_abs(pi * pauli_string_matrix(s, 8) * pi - pi) < 1e-12);
  for (const auto& s : vc.stabilizers.pins)
    CHECK(max_abs(pi * pauli_string_matrix(s, 8) * pi - pi) < 1e-12);
  Mat h = pauli_sum_matrix(vc.compiled.potential, 8);
  CHECK(max_abs(h * pi - pi * h) < 1e-12);
}

TEST_CASE("restricted spectrum equals the plain JW spectrum") {
  auto model = l2_model();
  auto vc = vc_transform(model);
  auto jw = compile_jw(model);

  Mat h_vc = pauli_sum_matrix(vc.compiled.potential, 8);
  Mat h_jw = pauli_sum_matrix(jw.potential, 4);
  Mat pi = physical_projector(vc.stabilizers, 8);

  Eigen::SelfAdjointEigenSolver<Mat> es(pi);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  REQUIRE(cols.size() == 16);
  Mat basis(pi.rows(), 16);
  for (std::size_t i = 0; i < cols.size(); ++i)
    basis.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(cols[i]);

  Mat restricted = basis.adjoint() * h_vc * basis;
  auto ev_vc = eigenvalues_sorted(restricted);
  auto ev_jw = eigenvalues_sorted(h_jw);
  REQUIRE(ev_vc.size() == ev_jw.size());
  for (int i = 0; i < ev_vc.size(); ++i)
    REQUIRE(ev_vc(i) == Catch::Approx(ev_jw(i)).margin(1e-10));
}

TEST_CASE("three-dimensional transform keeps every class local") {
  auto model = preset_fermion_hopping(3, 2, Boundary::Open, Ordering::Snake, 0.5);
  auto vc = vc_transform(model);
  const auto& m = vc.compiled.mapping;
  CHECK(m.aux_modes == 2);
  CHECK(vc.compiled.num_qubits == 8 * 3);
  // Every compiled string touches at most two site blocks.
  for (const auto& [c, p] : vc.compiled.potential.terms()) {
    std::set<int> blocks;
    for (const auto& [q, l] : p.letters()) blocks.insert(block_of(m, q));
    CHECK(blocks.size() <= 2);
  }
  // Stabilizers pairwise commute and commute with H (symbolic).
  std::vector<PauliString> all = vc.stabilizers.full_set;
  for (const auto& s : vc.stabilizers.pins) all.push_back(s);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j)
      REQUIRE(commutes(all[i], all[j]));
    for (const auto& [c, p] : vc.compiled.potential.terms())
      REQUIRE(commutes(all[i], p));
  }
  // Aux accounting: one stabilizer per aux qubit overall.
  CHECK(vc.stabilizers.full_set.size() + vc.stabilizers.pins.size() ==
        static_cast<std::size_t>(8 * 2));
}

TEST_CASE("weight-bound constancy holds with bosons present") {
  std::vector<int> weights;
  for (int L : {2, 3}) {
    auto model = preset_hopping_toy(2, L, Boundary::Open, Ordering::Snake, 1,
                                    1.0, 0.9, 1.2);
    auto vc = vc_transform(model);
    weights.push_back(vc.compiled.potential.max_weight());
  }
  CHECK(weights[0] == weights[1]);
}
