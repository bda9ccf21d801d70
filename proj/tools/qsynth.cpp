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

// Batch front-end: models -> compilation -> synthesis -> verification ->
// reports and circuit files.  Exit codes: 0 success, 1 verification failure,
// 2 configuration error (one-line diagnostic on stderr).  Output carries no
// timestamps; reports embed an FNV-1a content hash instead.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsynth/lcu.hpp"
#include "qsynth/model_json.hpp"
#include "qsynth/resources.hpp"
#include "qsynth/synth.hpp"
#include "qsynth/vc.hpp"
#include "qsynth/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qsynth;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HamiltonianModel load_model(const std::string& path) {
  return model_from_json_text(read_file(path));
}

TrotterOptions make_options(const std::string& policy,
                            const std::string& strategy) {
  TrotterOptions opt;
  if (policy == "fused")
    opt.policy = SynthPolicy::Fused;
  else if (policy == "naive")
    opt.policy = SynthPolicy::Naive;
  else
    throw std::invalid_argument("unknown policy '" + policy + "'");
  if (strategy == "pivot")
    opt.strategy = ChainStrategy::PivotLadder;
  else if (strategy == "chain")
    opt.strategy = ChainStrategy::ChainLadder;
  else if (strategy == "tree")
    opt.strategy = ChainStrategy::BalancedTree;
  else
    throw std::invalid_argument("unknown strategy '" + strategy + "'");
  return opt;
}

// Compiles under the requested encoding.  The aux-pair encoding is only
// defined for open-boundary snake-ordered lattices; reject before any work.
CompiledModel compile_for(const HamiltonianModel& m,
                          const std::string& encoding) {
  if (encoding == "jw") return compile_jw(m);
  if (encoding == "vc") {
    if (m.geometry.boundary == Boundary::Periodic)
      throw std::invalid_argument(
          "vc encoding requires open boundary conditions");
    if (m.geometry.ordering != Ordering::Snake)
      throw std::invalid_argument("vc encoding requires snake ordering");
    return vc_transform(m).compiled;
  }
  throw std::invalid_argument("unknown encoding '" + encoding + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

ordered_json model_meta(const HamiltonianModel& m) {
  ordered_json meta;
  meta["dims"] = m.geometry.dims;
  meta["extent"] = m.geometry.extent;
  meta["boundary"] =
      m.geometry.boundary == Boundary::Periodic ? "periodic" : "open";
  meta["bosons"] = m.bosons.num_bosons;
  meta["Q"] = m.bosons.Q;
  meta["fermion_modes"] = m.modes_per_site * m.geometry.num_sites();
  return meta;
}

int cmd_synth(const std::string& model_path, const std::string& encoding,
              const std::string& policy, const std::string& strategy,
              double eps, const std::string& out_path, bool peephole) {
  HamiltonianModel m = load_model(model_path);
  CompiledModel cm = compile_for(m, encoding);
  Circuit c = trotter_step(cm, eps, make_options(policy, strategy));
  if (peephole) c = peephole_cancel(c);
  std::string text = c.text();
  write_text(out_path, text);
  ordered_json line;
  line["wrote"] = out_path;
  line["qubits"] = c.num_qubits();
  line["gates"] = static_cast<std::int64_t>(c.gates().size());
  line["circuit_hash"] = fnv1a_hex(text);
  std::cout << line.dump() << "\n";
  return 0;
}

int cmd_verify(const std::string& model_path, const std::string& encoding,
               const std::string& strategy, double eps, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be > 0");
  HamiltonianModel m = load_model(model_path);
  CompiledModel cm = compile_for(m, encoding);
  check_oracle_size(cm.num_qubits);
  TrotterOptions fused = make_options("fused", strategy);
  TrotterOptions naive = make_options("naive", strategy);
  Mat u_fused = circuit_matrix(trotter_step(cm, eps, fused));
  Mat u_naive = circuit_matrix(trotter_step(cm, eps, naive));
  double fused_vs_naive = spectral_norm(u_fused - u_naive);
  // Trotter accuracy is O(eps^2) by construction; report it, gate only the
  // construction soundness comparison.
  Mat exact = expm_hermitian(hamiltonian_dense(cm), eps);
  double trotter_vs_exact = spectral_norm(u_fused - exact);
  bool pass = fused_vs_naive <= tol;
  ordered_json line;
  line["fused_vs_naive"] = fused_vs_naive;
  line["trotter_vs_exact"] = trotter_vs_exact;
  line["tol"] = tol;
  line["pass"] = pass;
  std::cout << line.dump() << "\n";
  return pass ? 0 : 1;
}

int cmd_count(const std::string& model_path, const std::string& encoding,
              const std::string& policy, const std::string& strategy,
              double eps, double t_factor, const std::string& out_path) {
  HamiltonianModel m = load_model(model_path);
  CompiledModel cm = compile_for(m, encoding);
  Circuit c = trotter_step(cm, eps, make_options(policy, strategy));
  ordered_json meta = model_meta(m);
  meta["encoding"] = encoding;
  meta["policy"] = policy;
  meta["strategy"] = strategy;
  meta["epsilon"] = eps;
  meta["qubits"] = c.num_qubits();
  meta["circuit_hash"] = fnv1a_hex(c.text());
  ResourceReport r = count(c, t_factor, meta);
  std::string line = r.json_line() + "\n";
  std::cout << line;
  if (!out_path.empty()) write_text(out_path, line);
  return 0;
}

int cmd_scaling(int d, const std::string& l_list, const std::string& family,
                const std::string& boundary_name, const std::string& policy,
                const std::string& strategy, double eps) {
  std::vector<int> sizes;
  std::stringstream ss(l_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 2)
      throw std::invalid_argument("bad lattice size '" + tok + "'");
    sizes.push_back(v);
  }
  Boundary boundary;
  if (boundary_name == "open")
    boundary = Boundary::Open;
  else if (boundary_name == "periodic")
    boundary = Boundary::Periodic;
  else
    throw std::invalid_argument("unknown boundary '" + boundary_name + "'");
  std::function<HamiltonianModel(int)> make;
  if (family == "fermion") {
    make = [d, boundary](int L) {
      return preset_fermion_hopping(d, L, boundary, Ordering::Snake, 1.0);
    };
  } else if (family == "toy") {
    make = [d, boundary](int L) {
      return preset_hopping_toy(d, L, boundary, Ordering::Snake, 1, 1.0, 1.0,
                                1.0);
    };
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }
  TrotterOptions opt = make_options(policy, strategy);
  ScalingFit fit = scaling_fit(make, sizes, opt, eps);
  for (const auto& [L, cnot] : fit.cnot_counts) {
    ordered_json line;
    line["L"] = L;
    line["cnot"] = cnot;
    std::cout << line.dump() << "\n";
  }
  ordered_json tail;
  tail["family"] = family;
  tail["d"] = d;
  tail["boundary"] = boundary_name;
  tail["policy"] = policy;
  tail["exponent"] = fit.exponent;
  std::cout << tail.dump() << "\n";
  return 0;
}

int cmd_block_encode(const std::string& model_path, const std::string& encoding,
                     double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be > 0");
  HamiltonianModel m = load_model(model_path);
  CompiledModel cm = compile_for(m, encoding);
  BlockEncoding be = assemble(cm);
  check_oracle_size(cm.num_qubits);
  double dev = verify_block(be);
  double unit = select_unitarity(be);
  bool pass = dev <= tol && unit <= 1e-12;
  ordered_json line;
  line["lambda"] = be.lcu.lambda;
  line["term_count"] = be.lcu.term_count();
  line["ancilla_width"] = be.ancilla_width;
  line["total_qubits"] = be.total_qubits;
  line["max_pauli_weight"] = be.lcu.max_pauli_weight();
  line["verify_deviation"] = dev;
  line["select_unitarity"] = unit;
  line["pass"] = pass;
  std::cout << line.dump() << "\n";
  return pass ? 0 : 1;
}

HamiltonianModel vc_check_model(int d, int L, int modes) {
  if (modes == 1)
    return preset_fermion_hopping(d, L, Boundary::Open, Ordering::Snake, 1.0);
  HamiltonianModel m;
  m.geometry = LatticeGeometry{d, L, Boundary::Open, Ordering::Snake};
  m.bosons = BosonRegister{0, 0, 1.0};
  m.modes_per_site = modes;
  for (const Link& l : classify_links(m.geometry)) {
    for (int mode = 1; mode <= modes; ++mode) {
      HoppingTerm h;
      h.n = l.from;
      h.nprime = l.to;
      h.a = mode;
      h.b = mode;
      h.coeff = 1.0;
      m.hopping.push_back(h);
    }
  }
  m.validate();
  return m;
}

int cmd_vc_check(int d, int L, int modes) {
  if (d < 2) throw std::invalid_argument("vc-check needs d >= 2");
  if (L < 2 || modes < 1)
    throw std::invalid_argument("vc-check needs L >= 2 and modes >= 1");
  HamiltonianModel m = vc_check_model(d, L, modes);
  VcResult vc = vc_transform(m);
  const CompiledModel& cm = vc.compiled;

  std::vector<PauliString> stab = vc.stabilizers.full_set;
  for (const auto& s : vc.stabilizers.pins) stab.push_back(s);
  bool symbolic = true;
  for (std::size_t i = 0; i < stab.size() && symbolic; ++i) {
    for (std::size_t j = i + 1; j < stab.size() && symbolic; ++j)
      if (!commutes(stab[i], stab[j])) symbolic = false;
    for (const auto& [c, p] : cm.potential.terms())
      if (!commutes(stab[i], p)) {
        symbolic = false;
        break;
      }
  }

  bool dense_checked = false;
  bool spectrum_match = true;
  double spectrum_gap = 0.0;
  if (symbolic && cm.num_qubits <= oracle_limit()) {
    dense_checked = true;
    Mat h_vc = pauli_sum_matrix(cm.potential, cm.num_qubits);
    Mat pi = physical_projector(vc.stabilizers, cm.num_qubits);
    CompiledModel jw = compile_jw(m);
    Mat h_jw = pauli_sum_matrix(jw.potential, jw.num_qubits);

    Eigen::SelfAdjointEigenSolver<Mat> es(pi);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
    Mat basis(pi.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      basis.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(cols[i]);
    Mat restricted = basis.adjoint() * h_vc * basis;
    Eigen::VectorXd ev_vc = eigenvalues_sorted(restricted);
    Eigen::VectorXd ev_jw = eigenvalues_sorted(h_jw);
    if (ev_vc.size() != ev_jw.size()) {
      spectrum_match = false;
    } else {
      spectrum_gap = (ev_vc - ev_jw).cwiseAbs().maxCoeff();
      spectrum_match = spectrum_gap <= 1e-10;
    }
  }

  bool pass = symbolic && spectrum_match;
  ordered_json line;
  line["d"] = d;
  line["L"] = L;
  line["modes"] = modes;
  line["qubits"] = cm.num_qubits;
  line["stabilizers"] =
      static_cast<std::int64_t>(vc.stabilizers.full_set.size());
  line["pins"] = static_cast<std::int64_t>(vc.stabilizers.pins.size());
  line["max_weight"] = cm.potential.max_weight();
  line["symbolic_commute"] = symbolic;
  line["dense_checked"] = dense_checked;
  if (dense_checked) line["spectrum_gap"] = spectrum_gap;
  line["pass"] = pass;
  std::cout << line.dump() << "\n";
  return pass ? 0 : 1;
}

int cmd_export(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + in_path);
  Circuit c = Circuit::read(in);
  write_text(out_path, c.text());
  ordered_json line;
  line["wrote"] = out_path;
  line["qubits"] = c.num_qubits();
  line["gates"] = static_cast<std::int64_t>(c.gates().size());
  std::cout << line.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsynth: circuit synthesis and verification for boson+fermion "
               "lattice models"};
  app.require_subcommand(1);

  std::string model_path, encoding = "jw", policy = "fused", strategy = "tree";
  std::string out_path, in_path, l_list, family = "fermion",
                                         boundary_name = "open";
  double eps = 0.1, tol = 1e-8, be_tol = 1e-10, t_factor = 25.0;
  int d = 2, L = 2, modes = 1, oracle_override = 0;
  bool peephole = false;

  app.add_option("--oracle-limit", oracle_override,
                 "override the dense-oracle qubit cap");

  auto* c_synth = app.add_subcommand("synth", "synthesize one Trotter step");
  c_synth->add_option("--model", model_path, "model JSON path")->required();
  c_synth->add_option("--encoding", encoding, "jw|vc");
  c_synth->add_option("--policy", policy, "fused|naive");
  c_synth->add_option("--strategy", strategy, "pivot|chain|tree");
  c_synth->add_option("--epsilon", eps, "Trotter step size");
  c_synth->add_option("--out", out_path, "circuit file path")->required();
  c_synth->add_flag("--peephole", peephole, "cancel adjacent inverse gates");

  auto* c_verify = app.add_subcommand(
      "verify", "check fused vs naive unitaries on a dense oracle");
  c_verify->add_option("--model", model_path, "model JSON path")->required();
  c_verify->add_option("--encoding", encoding, "jw|vc");
  c_verify->add_option("--strategy", strategy, "pivot|chain|tree");
  c_verify->add_option("--epsilon", eps, "Trotter step size");
  c_verify->add_option("--tol", tol, "gate on fused-vs-naive deviation");

  auto* c_count = app.add_subcommand("count", "gate counts for one step");
  c_count->add_option("--model", model_path, "model JSON path")->required();
  c_count->add_option("--encoding", encoding, "jw|vc");
  c_count->add_option("--policy", policy, "fused|naive");
  c_count->add_option("--strategy", strategy, "pivot|chain|tree");
  c_count->add_option("--epsilon", eps, "Trotter step size");
  c_count->add_option("--t-factor", t_factor, "T gates per rotation");
  c_count->add_option("--out", out_path, "also write the JSON line here");

  auto* c_scaling =
      app.add_subcommand("scaling", "CNOT-count scaling fit over sizes");
  c_scaling->add_option("--d", d, "lattice dimension");
  c_scaling->add_option("--L", l_list, "comma-separated sizes, e.g. 3,4,5,6")
      ->required();
  c_scaling->add_option("--family", family, "fermion|toy");
  c_scaling->add_option("--boundary", boundary_name, "open|periodic");
  c_scaling->add_option("--policy", policy, "fused|naive");
  c_scaling->add_option("--strategy", strategy, "pivot|chain|tree");
  c_scaling->add_option("--epsilon", eps, "Trotter step size");

  auto* c_block = app.add_subcommand(
      "block-encode", "assemble a block encoding and verify the block");
  c_block->add_option("--model", model_path, "model JSON path")->required();
  c_block->add_option("--encoding", encoding, "jw|vc");
  c_block->add_option("--tol", be_tol, "gate on block deviation");

  auto* c_vc = app.add_subcommand(
      "vc-check", "stabilizer commutation and spectrum equivalence");
  c_vc->add_option("--L", L, "lattice extent");
  c_vc->add_option("--d", d, "lattice dimension");
  c_vc->add_option("--modes", modes, "fermion modes per site");

  auto* c_export =
      app.add_subcommand("export", "round-trip a circuit file");
  c_export->add_option("--in", in_path, "input circuit path")->required();
  c_export->add_option("--out", out_path, "output circuit path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "qsynth: error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (oracle_override > 0)
      setenv("QSYNTH_ORACLE_LIMIT", std::to_string(oracle_override).c_str(), 1);
    if (*c_synth)
      return cmd_synth(model_path, encoding, policy, strategy, eps, out_path,
                       peephole);
    if (*c_verify) return cmd_verify(model_path, encoding, strategy, eps, tol);
    if (*c_count)
      return cmd_count(model_path, encoding, policy, strategy, eps, t_factor,
                       out_path);
    if (*c_scaling)
      return cmd_scaling(d, l_list, family, boundary_name, policy, strategy,
                         eps);
    if (*c_block) return cmd_block_encode(model_path, encoding, be_tol);
    if (*c_vc) return cmd_vc_check(d, L, modes);
    if (*c_export) return cmd_export(in_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "qsynth: error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "qsynth: error: no subcommand\n";
  return 2;
}
