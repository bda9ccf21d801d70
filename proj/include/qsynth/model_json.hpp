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

#ifndef QSYNTH_MODEL_JSON_HPP_
#define QSYNTH_MODEL_JSON_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsynth/lattice.hpp"

namespace qsynth {

namespace detail {

using nlohmann::json;

inline void require_keys(const json& j, const std::set<std::string>& allowed,
                         const std::set<std::string>& required,
                         const std::string& where) {
  if (!j.is_object())
    throw std::invalid_argument(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument(where + ": unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!j.contains(key))
      throw std::invalid_argument(where + ": missing field '" + key + "'");
  }
}

inline Boundary parse_boundary(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw std::invalid_argument("boundary must be 'open' or 'periodic', got '" +
                              s + "'");
}

inline Ordering parse_ordering(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "row_major_lex") return Ordering::RowMajorLex;
  if (s == "snake") return Ordering::Snake;
  throw std::invalid_argument("ordering must be 'row_major_lex' or 'snake', " +
                              std::string("got '") + s + "'");
}

inline HamiltonianModel parse_preset(const json& p) {
  require_keys(p, {"name", "params"}, {"name", "params"}, "preset");
  std::string name = p.at("name").get<std::string>();
  const json& a = p.at("params");
  auto boundary = [&](Boundary dflt) {
    return a.contains("boundary") ? parse_boundary(a.at("boundary")) : dflt;
  };
  auto ordering = [&](Ordering dflt) {
    return a.contains("ordering") ? parse_ordering(a.at("ordering")) : dflt;
  };
  auto num = [&](const char* key, double dflt) {
    return a.contains(key) ? a.at(key).get<double>() : dflt;
  };
  if (name == "harmonic_chain") {
    require_keys(a, {"L", "Q", "R", "omega", "kappa", "boundary"},
                 {"L", "Q", "R", "omega", "kappa"}, "harmonic_chain params");
    return preset_harmonic_chain(a.at("L").get<int>(), a.at("Q").get<int>(),
                                 a.at("R").get<double>(),
                                 a.at("omega").get<double>(),
                                 a.at("kappa").get<double>(),
                                 boundary(Boundary::Open));
  }
  if (name == "quartic_oscillator") {
    require_keys(a, {"Q", "R", "mu2", "lambda"}, {"Q", "R", "mu2", "lambda"},
                 "quartic_oscillator params");
    return preset_quartic_oscillator(a.at("Q").get<int>(),
                                     a.at("R").get<double>(),
                                     a.at("mu2").get<double>(),
                                     a.at("lambda").get<double>());
  }
  if (name == "hopping_toy") {
    require_keys(a,
                 {"dims", "L", "Q", "R", "t", "omega", "boundary", "ordering"},
                 {"dims", "L", "Q"}, "hopping_toy params");
    return preset_hopping_toy(a.at("dims").get<int>(), a.at("L").get<int>(),
                              boundary(Boundary::Open),
                              ordering(Ordering::Snake), a.at("Q").get<int>(),
                              num("R", 1.0), num("t", 1.0), num("omega", 1.0));
  }
  if (name == "fermion_hopping") {
    require_keys(a, {"dims", "L", "t", "boundary", "ordering"},
                 {"dims", "L"}, "fermion_hopping params");
    return preset_fermion_hopping(a.at("dims").get<int>(), a.at("L").get<int>(),
                                  boundary(Boundary::Open),
                                  ordering(Ordering::Snake), num("t", 1.0));
  }
  if (name == "qcd_layout") {
    require_keys(
        a, {"Nc", "Nf", "dims", "L", "Q", "R", "boundary", "ordering"},
        {"Nc", "Nf", "dims", "L"}, "qcd_layout params");
    return preset_qcd_layout(a.at("Nc").get<int>(), a.at("Nf").get<int>(),
                             a.at("dims").get<int>(), a.at("L").get<int>(),
                             boundary(Boundary::Open),
                             ordering(Ordering::Snake),
                             static_cast<int>(num("Q", 1)), num("R", 1.0));
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace detail

// Strict model-config reader.  Every object is checked against a field
// whitelist; unknown fields are rejected.  A config is either a single
// {"preset": {name, params}} dispatch or the explicit field form.
inline HamiltonianModel model_from_json(const nlohmann::json& j) {
  using detail::require_keys;
  if (!j.is_object())
    throw std::invalid_argument("model config: expected a JSON object");
  if (j.contains("preset")) {
    require_keys(j, {"preset"}, {"preset"}, "model config");
    HamiltonianModel m = detail::parse_preset(j.at("preset"));
    m.validate();
    return m;
  }
  require_keys(j,
               {"dims", "extent", "boundary", "ordering", "boson", "fermion",
                "potential", "hopping"},
               {"dims", "extent", "boundary", "ordering", "boson", "fermion"},
               "model config");
  HamiltonianModel m;
  m.geometry.dims = j.at("dims").get<int>();
  m.geometry.extent = j.at("extent").get<int>();
  m.geometry.boundary = detail::parse_boundary(j.at("boundary"));
  m.geometry.ordering = detail::parse_ordering(j.at("ordering"));

  const auto& b = j.at("boson");
  require_keys(b, {"num", "Q", "R"}, {"num", "Q", "R"}, "boson");
  m.bosons.num_bosons = b.at("num").get<int>();
  m.bosons.Q = b.at("Q").get<int>();
  m.bosons.R = b.at("R").get<double>();

  const auto& f = j.at("fermion");
  require_keys(f, {"modes_per_site"}, {"modes_per_site"}, "fermion");
  m.modes_per_site = f.at("modes_per_site").get<int>();

  if (j.contains("potential")) {
    for (const auto& t : j.at("potential")) {
      require_keys(t, {"coeff", "bosons"}, {"coeff", "bosons"},
                   "potential term");
      PotentialTerm pt;
      pt.coeff = t.at("coeff").get<double>();
      for (const auto& x : t.at("bosons")) pt.bosons.push_back(x.get<int>());
      m.potential.push_back(pt);
    }
  }
  if (j.contains("hopping")) {
    for (const auto& t : j.at("hopping")) {
      require_keys(t,
                   {"n", "nprime", "a", "b", "dagger", "coeff",
                    "boson_monomial"},
                   {"n", "nprime", "a", "b", "dagger", "coeff"},
                   "hopping term");
      HoppingTerm ht;
      ht.n = t.at("n").get<int>();
      ht.nprime = t.at("nprime").get<int>();
      ht.a = t.at("a").get<int>();
      ht.b = t.at("b").get<int>();
      const auto& d = t.at("dagger");
      if (!d.is_array() || d.size() != 2)
        throw std::invalid_argument("hopping term: dagger must be [bool,bool]");
      ht.dagger_n = d.at(0).get<bool>();
      ht.dagger_nprime = d.at(1).get<bool>();
      const auto& c = t.at("coeff");
      require_keys(c, {"re", "im"}, {"re", "im"}, "hopping coeff");
      ht.coeff = complexd(c.at("re").get<double>(), c.at("im").get<double>());
      if (t.contains("boson_monomial")) {
        for (const auto& mf : t.at("boson_monomial")) {
          require_keys(mf, {"boson", "power"}, {"boson", "power"},
                       "boson_monomial factor");
          BosonMonomialFactor factor;
          factor.boson = mf.at("boson").get<int>();
          factor.power = mf.at("power").get<int>();
          ht.monomial.push_back(factor);
        }
      }
      m.hopping.push_back(ht);
    }
  }
  m.validate();
  return m;
}

inline HamiltonianModel model_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model config: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace qsynth

#endif  // QSYNTH_MODEL_JSON_HPP_
