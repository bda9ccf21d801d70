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
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsynth {

enum class GateKind { CNOT, H, S, Sdg, RotZ, CPhase, Swap };

struct Gate {
  GateKind kind;
  int a = -1;          // control for CNOT, the qubit for 1-qubit gates
  int b = -1;          // target for CNOT, second qubit for CPhase/Swap
  double theta = 0.0;  // RotZ / CPhase angle

  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, control, target, 0.0};
  }
  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate s(int q) { return {GateKind::S, q, -1, 0.0}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q, -1, 0.0}; }
  static Gate rz(double theta, int q) { return {GateKind::RotZ, q, -1, theta}; }
  static Gate cphase(double theta, int a, int b) {
    return {GateKind::CPhase, a, b, theta};
  }
  static Gate swap(int a, int b) { return {GateKind::Swap, a, b, 0.0}; }

  bool two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::CPhase ||
           kind == GateKind::Swap;
  }
};

// Register slice sizes, recorded for bookkeeping only.  The fermion and aux
// counts may describe interleaved index ranges.
struct Partition {
  int boson = 0;
  int fermion = 0;
  int aux = 0;
  int ancilla = 0;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, Partition partition = {})
      : num_qubits_(num_qubits), partition_(partition) {
    if (num_qubits < 0) throw std::invalid_argument("negative register size");
  }

  int num_qubits() const { return num_qubits_; }
  const Partition& partition() const { return partition_; }
  void set_partition(const Partition& p) { partition_ = p; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& mutable_gates() { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(const Gate& g) {
    check_qubit(g.a);
    if (g.two_qubit()) {
      check_qubit(g.b);
      if (g.a == g.b) throw std::invalid_argument("two-qubit gate on one qubit");
    }
    gates_.push_back(g);
  }

  void append(const Circuit& other) {
    if (other.num_qubits_ > num_qubits_)
      throw std::invalid_argument("appended circuit is wider than register");
    for (const Gate& g : other.gates_) gates_.push_back(g);
  }

  void cnot(int c, int t) { append(Gate::cnot(c, t)); }
  void h(int q) { append(Gate::h(q)); }
  void s(int q) { append(Gate::s(q)); }
  void sdg(int q) { append(Gate::sdg(q)); }
  void rz(double theta, int q) { append(Gate::rz(theta, q)); }
  void cphase(double theta, int a, int b) { append(Gate::cphase(theta, a, b)); }
  void swap(int a, int b) { append(Gate::swap(a, b)); }

  // Exact X via H Z H with Z = S S.
  void x(int q) {
    h(q);
    s(q);
    s(q);
    h(q);
  }

  Circuit inverse() const {
    Circuit inv(num_qubits_, partition_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      Gate g = *it;
      switch (g.kind) {
        case GateKind::S: g.kind = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind = GateKind::S; break;
        case GateKind::RotZ:
        case GateKind::CPhase: g.theta = -g.theta; break;
        default: break;
      }
      inv.gates_.push_back(g);
    }
    return inv;
  }

  // Greedy layering depth: each gate lands on the first layer where all of
  // its qubits are free.
  int depth() const {
    std::vector<int> busy(static_cast<std::size_t>(num_qubits_), 0);
    int d = 0;
    for (const Gate& g : gates_) {
      int layer = busy[g.a] + 1;
      if (g.two_qubit()) layer = std::max(layer, busy[g.b] + 1);
      busy[g.a] = layer;
      if (g.two_qubit()) busy[g.b] = layer;
      d = std::max(d, layer);
    }
    return d;
  }

  void write(std::ostream& os) const {
    os << "qubits " << num_qubits_ << "\n";
    os << "# partition boson=" << partition_.boson
       << " fermion=" << partition_.fermion << " aux=" << partition_.aux
       << " ancilla=" << partition_.ancilla << "\n";
    char buf[64];
    for (const Gate& g : gates_) {
      switch (g.kind) {
        case GateKind::CNOT: os << "cx " << g.a << " " << g.b; break;
        case GateKind::H: os << "h " << g.a; break;
        case GateKind::S: os << "s " << g.a; break;
        case GateKind::Sdg: os << "sdg " << g.a; break;
        case GateKind::RotZ:
          std::snprintf(buf, sizeof buf, "%.17g", g.theta);
          os << "rz " << buf << " " << g.a;
          break;
        case GateKind::CPhase:
          std::snprintf(buf, sizeof buf, "%.17g", g.theta);
          os << "cp " << buf << " " << g.a << " " << g.b;
          break;
        case GateKind::Swap: os << "swap " << g.a << " " << g.b; break;
      }
      os << "\n";
    }
  }

  std::string text() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

  static Circuit read(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty circuit file");
    std::istringstream head(line);
    std::string tag;
    int n = -1;
    head >> tag >> n;
    if (tag != "qubits" || n < 0)
      throw std::invalid_argument("expected 'qubits <N>' header");
    Circuit c(n);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        Partition p;
        if (std::sscanf(line.c_str(),
                        "# partition boson=%d fermion=%d aux=%d ancilla=%d",
                        &p.boson, &p.fermion, &p.aux, &p.ancilla) == 4) {
          c.partition_ = p;
        }
        continue;
      }
      std::istringstream ls(line);
      std::string op;
      ls >> op;
      if (op == "cx") {
        int a, b;
        ls >> a >> b;
        c.cnot(a, b);
      } else if (op == "h" || op == "s" || op == "sdg") {
        int q;
        ls >> q;
        if (op == "h") c.h(q);
        else if (op == "s") c.s(q);
        else c.sdg(q);
      } else if (op == "rz") {
        double t;
        int q;
        ls >> t >> q;
        c.rz(t, q);
      } else if (op == "cp") {
        double t;
        int a, b;
        ls >> t >> a >> b;
        c.cphase(t, a, b);
      } else if (op == "swap") {
        int a, b;
        ls >> a >> b;
        c.swap(a, b);
      } else {
        throw std::invalid_argument("unknown circuit line: " + line);
      }
      if (ls.fail()) throw std::invalid_argument("malformed circuit line: " + line);
    }
    return c;
  }

  static Circuit parse(const std::string& s) {
    std::istringstream is(s);
    return read(is);
  }

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_)
      throw std::invalid_argument("qubit index out of range");
  }

  int num_qubits_ = 0;
  Partition partition_;
  std::vector<Gate> gates_;
};

// Appends gates realizing exp(i*beta) * Identity exactly.
//
// On >= 2 qubits: a CPhase(beta) conjugated through the four basis patterns
// of two qubits multiplies every basis state by e^{i beta}.  On a single
// qubit the gate set only reaches phases in (pi/4) Z, via (HS)^3 = e^{i pi/4};
// other values throw.
inline void append_global_phase(Circuit& c, double beta) {
  constexpr double tau = 6.283185307179586476925286766559;  // 2 pi
  beta = std::fmod(beta, tau);
  if (beta < 0) beta += tau;
  if (beta < 1e-15 || tau - beta < 1e-15) return;
  if (c.num_qubits() >= 2) {
    const int a = 0, b = 1;
    c.cphase(beta, a, b);  // |11>
    c.x(a);
    c.cphase(beta, a, b);  // |01>
    c.x(a);
    c.x(b);
    c.cphase(beta, a, b);  // |10>
    c.x(b);
    c.x(a);
    c.x(b);
    c.cphase(beta, a, b);  // |00>
    c.x(b);
    c.x(a);
    return;
  }
  if (c.num_qubits() == 1) {
    double steps = beta / (tau / 8);
    long k = std::lround(steps);
    if (std::abs(steps - static_cast<double>(k)) > 1e-9 || k < 0 || k > 8)
      throw std::runtime_error(
          "global phase on a 1-qubit register must be a multiple of pi/4");
    k %= 8;
    if (k <= 4) {
      for (long i = 0; i < 3 * k; ++i) {
        c.s(0);
        c.h(0);
      }
    } else {
      for (long i = 0; i < 3 * (8 - k); ++i) {
        c.h(0);
        c.sdg(0);
      }
    }
    return;
  }
  throw std::runtime_error("cannot phase an empty register");
}

}  // namespace qsynth
