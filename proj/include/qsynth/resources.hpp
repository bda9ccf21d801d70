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

#ifndef QSYNTH_RESOURCES_HPP_
#define QSYNTH_RESOURCES_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsynth/synth.hpp"
#include "qsynth/vc.hpp"

namespace qsynth {

// T-gates per arbitrary-angle rotation; the literature range is wide, so the
// factor is clamped to [10, 50] with a warning, default 25.
inline double clamp_t_factor(double t_factor, std::ostream* warn = &std::cerr) {
  if (t_factor < 10.0 || t_factor > 50.0) {
    double clamped = std::min(50.0, std::max(10.0, t_factor));
    if (warn)
      *warn << "warning: t_factor " << t_factor << " outside [10, 50], using "
            << clamped << "\n";
    return clamped;
  }
  return t_factor;
}

struct ResourceReport {
  std::int64_t cnot = 0;
  std::int64_t h = 0;
  std::int64_t s = 0;
  std::int64_t sdg = 0;
  std::int64_t rz = 0;
  std::int64_t cphase = 0;
  std::int64_t swap = 0;
  std::int64_t rotations = 0;
  std::int64_t depth = 0;
  double t_estimate = 0.0;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["cnot"] = cnot;
    j["h"] = h;
    j["s"] = s;
    j["sdg"] = sdg;
    j["rz"] = rz;
    j["cphase"] = cphase;
    j["swap"] = swap;
    j["rotations"] = rotations;
    j["depth"] = depth;
    j["t_estimate"] = t_estimate;
    j["meta"] = meta;
    return j;
  }

  std::string json_line() const { return to_json().dump(); }
};

// Exact gate tallies of a circuit.
inline ResourceReport count(const Circuit& c, double t_factor = 25.0,
                            nlohmann::ordered_json meta =
                                nlohmann::ordered_json::object()) {
  ResourceReport r;
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::CNOT: ++r.cnot; break;
      case GateKind::H: ++r.h; break;
      case GateKind::S: ++r.s; break;
      case GateKind::Sdg: ++r.sdg; break;
      case GateKind::RotZ: ++r.rz; break;
      case GateKind::CPhase: ++r.cphase; break;
      case GateKind::Swap: ++r.swap; break;
    }
  }
  r.rotations = r.rz + r.cphase;
  r.depth = c.depth();
  r.t_estimate = static_cast<double>(r.rotations) * clamp_t_factor(t_factor);
  r.meta = std::move(meta);
  return r;
}

// FNV-1a, for content hashes in report metadata.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

// Least-squares slope of log(y) against log(x).
inline double fit_exponent(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2)
    throw std::invalid_argument("fit needs at least two points");
  double mx = 0, my = 0;
  for (const auto& [x, y] : xy) {
    if (!(x > 0) || !(y > 0))
      throw std::invalid_argument("fit needs positive points");
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double num = 0, den = 0;
  for (const auto& [x, y] : xy) {
    num += (std::log(x) - mx) * (std::log(y) - my);
    den += (std::log(x) - mx) * (std::log(x) - mx);
  }
  if (den == 0) throw std::invalid_argument("degenerate fit abscissae");
  return num / den;
}

struct ScalingFit {
  double exponent = 0.0;
  std::vector<std::pair<int, std::int64_t>> cnot_counts;
};

// Synthesizes one Trotter step per lattice size and fits the CNOT growth.
inline ScalingFit scaling_fit(
    const std::function<HamiltonianModel(int)>& model_for_L,
    const std::vector<int>& L_list, const TrotterOptions& opt,
    double eps = 0.1) {
  if (L_list.size() < 3)
    throw std::invalid_argument("scaling fit needs at least three sizes");
  if (std::set<int>(L_list.begin(), L_list.end()).size() != L_list.size())
    throw std::invalid_argument("scaling fit sizes must be distinct");
  ScalingFit out;
  std::vector<std::pair<double, double>> xy;
  for (int L : L_list) {
    CompiledModel cm = compile_jw(model_for_L(L));
    ResourceReport r = count(trotter_step(cm, eps, opt));
    out.cnot_counts.emplace_back(L, r.cnot);
    xy.emplace_back(static_cast<double>(L), static_cast<double>(r.cnot));
  }
  out.exponent = fit_exponent(xy);
  return out;
}

// Formula-level gauge-theory estimate: synthesize a 2^d unit cell, extract
// per-site constants, and report the leading L^d term.  Counts assume the
// weight-bounded (VC / fused) regime the construction targets.
inline ResourceReport qcd_estimate(int Nc, int Nf, int d, int L, int Q,
                                   double t_factor = 25.0, bool vc = false) {
  if (Nc < 1 || Nf < 1 || d < 1 || L < 1 || Q < 1)
    throw std::invalid_argument("qcd_estimate parameters must be >= 1");
  HamiltonianModel cell = preset_qcd_layout(Nc, Nf, d, 2, Boundary::Open,
                                            Ordering::Snake, Q, 1.0);
  CompiledModel cm =
      vc ? vc_transform(cell).compiled : compile_jw(cell);
  TrotterOptions opt;
  opt.policy = SynthPolicy::Fused;
  ResourceReport cell_report = count(trotter_step(cm, 1.0, opt));

  double sites_cell = std::pow(2.0, d);
  double sites = std::pow(static_cast<double>(L), d);
  auto scale = [&](std::int64_t c) {
    return static_cast<std::int64_t>(
        std::llround(static_cast<double>(c) / sites_cell * sites));
  };
  ResourceReport r;
  r.cnot = scale(cell_report.cnot);
  r.h = scale(cell_report.h);
  r.s = scale(cell_report.s);
  r.sdg = scale(cell_report.sdg);
  r.rz = scale(cell_report.rz);
  r.cphase = scale(cell_report.cphase);
  r.swap = scale(cell_report.swap);
  r.rotations = r.rz + r.cphase;
  r.depth = cell_report.depth;  // per-step depth is cell-level, not scaled
  r.t_estimate = static_cast<double>(r.rotations) * clamp_t_factor(t_factor);

  int bosons_per_site = 2 * d * Nc * Nc;
  int aux_per_site = vc ? d - 1 : 0;
  double qubits_per_site = static_cast<double>(bosons_per_site) * Q +
                           qcd_fermion_qubits_per_site(Nc, Nf) + aux_per_site;
  r.meta["model"] = "qcd_layout";
  r.meta["Nc"] = Nc;
  r.meta["Nf"] = Nf;
  r.meta["d"] = d;
  r.meta["L"] = L;
  r.meta["Q"] = Q;
  r.meta["encoding"] = vc ? "vc" : "jw";
  r.meta["real_modes_per_site"] = qcd_real_modes_per_site(Nc, Nf);
  r.meta["fermion_qubits_per_site"] = qcd_fermion_qubits_per_site(Nc, Nf);
  r.meta["boson_registers_per_site"] = bosons_per_site;
  r.meta["aux_qubits_per_site"] = aux_per_site;
  r.meta["qubits_total"] = qubits_per_site * sites;
  return r;
}

}  // namespace qsynth

#endif  // QSYNTH_RESOURCES_HPP_
