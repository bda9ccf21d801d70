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
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsynth {

using complexd = std::complex<double>;

enum class Letter : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline char letter_char(Letter l) {
  switch (l) {
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  throw std::logic_error("bad letter");
}

// A sparse Pauli string with a tracked phase in {1, i, -1, -i}.
//
// The phase is stored as the exponent k of i^k.  Letters are held in an
// ordered map from 0-based qubit index to X/Y/Z; absent indices are identity.
class PauliString {
 public:
  PauliString() = default;

  static PauliString identity() { return PauliString(); }

  static PauliString single(int qubit, Letter l, int phase_exp = 0) {
    PauliString p;
    p.set(qubit, l);
    p.phase_exp_ = ((phase_exp % 4) + 4) % 4;
    return p;
  }

  void set(int qubit, Letter l) {
    if (qubit < 0) throw std::invalid_argument("negative qubit index");
    letters_[qubit] = l;
  }

  bool has(int qubit) const { return letters_.count(qubit) != 0; }

  Letter letter(int qubit) const {
    auto it = letters_.find(qubit);
    if (it == letters_.end()) throw std::invalid_argument("identity site");
    return it->second;
  }

  const std::map<int, Letter>& letters() const { return letters_; }

  int weight() const { return static_cast<int>(letters_.size()); }

  int phase_exp() const { return phase_exp_; }

  complexd phase() const {
    static const complexd table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_exp_];
  }

  void multiply_phase_exp(int k) { phase_exp_ = ((phase_exp_ + k) % 4 + 4) % 4; }

  bool is_hermitian() const { return phase_exp_ == 0 || phase_exp_ == 2; }

  // Highest touched qubit + 1 (0 for the identity).
  int num_qubits() const {
    return letters_.empty() ? 0 : letters_.rbegin()->first + 1;
  }

  PauliString dagger() const {
    PauliString p = *this;
    p.phase_exp_ = (4 - phase_exp_) % 4;
    return p;
  }

  // Letter-wise comparison ignoring the phase; used for canonical ordering.
  friend bool same_letters(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }

  friend bool letters_less(const PauliString& a, const PauliString& b) {
    return a.letters_ < b.letters_;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_exp_ == b.phase_exp_ && a.letters_ == b.letters_;
  }

  // Phase-tracked product.  Per-site rule: equal letters cancel, and for
  // distinct letters A*B = +/- i C with the sign set by cyclic order
  // (XY -> +iZ, YZ -> +iX, ZX -> +iY, reversed pairs pick up -i).
  friend PauliString mul(const PauliString& a, const PauliString& b) {
    PauliString out;
    out.phase_exp_ = (a.phase_exp_ + b.phase_exp_) % 4;
    auto ia = a.letters_.begin();
    auto ib = b.letters_.begin();
    while (ia != a.letters_.end() || ib != b.letters_.end()) {
      if (ib == b.letters_.end() ||
          (ia != a.letters_.end() && ia->first < ib->first)) {
        out.letters_.emplace(ia->first, ia->second);
        ++ia;
      } else if (ia == a.letters_.end() || ib->first < ia->first) {
        out.letters_.emplace(ib->first, ib->second);
        ++ib;
      } else {
        int la = static_cast<int>(ia->second);
        int lb = static_cast<int>(ib->second);
        if (la != lb) {
          // X=1, Y=2, Z=3: cyclic successor pairs gain +i, the rest -i.
          static const int third[4][4] = {{0, 0, 0, 0},
                                          {0, 0, 3, 2},
                                          {0, 3, 0, 1},
                                          {0, 2, 1, 0}};
          bool cyclic = (lb - la + 3) % 3 == 1;
          out.multiply_phase_exp(cyclic ? 1 : 3);
          out.letters_.emplace(ia->first, static_cast<Letter>(third[la][lb]));
        }
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  friend PauliString operator*(const PauliString& a, const PauliString& b) {
    return mul(a, b);
  }

  // Two strings commute iff they anticommute on an even number of sites.
  friend bool commutes(const PauliString& a, const PauliString& b) {
    int clashes = 0;
    auto ia = a.letters_.begin();
    auto ib = b.letters_.begin();
    while (ia != a.letters_.end() && ib != b.letters_.end()) {
      if (ia->first < ib->first) {
        ++ia;
      } else if (ib->first < ia->first) {
        ++ib;
      } else {
        if (ia->second != ib->second) ++clashes;
        ++ia;
        ++ib;
      }
    }
    return clashes % 2 == 0;
  }

  std::string str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[phase_exp_];
    if (letters_.empty()) {
      s += "I";
      return s;
    }
    bool first = true;
    for (const auto& [q, l] : letters_) {
      if (!first) s += '*';
      s += letter_char(l);
      s += std::to_string(q);
      first = false;
    }
    return s;
  }

 private:
  std::map<int, Letter> letters_;
  int phase_exp_ = 0;
};

// Hermitian combination: real coefficients attached to phase-free strings.
//
// add() folds a -1 string phase into the coefficient and rejects +/-i phases,
// since a Hermitian sum cannot carry them on a single term.  canonicalize()
// sorts terms by letters, merges duplicates and drops |c| < drop_threshold.
class PauliSum {
 public:
  static constexpr double drop_threshold = 1e-14;

  void add(double coeff, PauliString p) {
    if (!p.is_hermitian()) {
      throw std::invalid_argument("non-Hermitian term in PauliSum: " + p.str());
    }
    if (p.phase_exp() == 2) {
      coeff = -coeff;
      p.multiply_phase_exp(2);
    }
    terms_.emplace_back(coeff, std::move(p));
  }

  void add(const PauliSum& other) {
    for (const auto& [c, p] : other.terms_) terms_.emplace_back(c, p);
  }

  void scale(double factor) {
    for (auto& [c, p] : terms_) c *= factor;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) {
                return letters_less(a.second, b.second);
              });
    std::vector<std::pair<double, PauliString>> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && same_letters(merged.back().second, t.second)) {
        merged.back().first += t.first;
      } else {
        merged.push_back(std::move(t));
      }
    }
    terms_.clear();
    for (auto& t : merged) {
      if (std::abs(t.first) >= drop_threshold) terms_.push_back(std::move(t));
    }
  }

  const std::vector<std::pair<double, PauliString>>& terms() const {
    return terms_;
  }

  std::size_t size() const { return terms_.size(); }

  int num_qubits() const {
    int n = 0;
    for (const auto& [c, p] : terms_) n = std::max(n, p.num_qubits());
    return n;
  }

  // Coefficient of the identity string (0 when absent).
  double identity_coeff() const {
    double c0 = 0;
    for (const auto& [c, p] : terms_)
      if (p.weight() == 0) c0 += c;
    return c0;
  }

  int max_weight() const {
    int w = 0;
    for (const auto& [c, p] : terms_) w = std::max(w, p.weight());
    return w;
  }

  double one_norm() const {
    double s = 0;
    for (const auto& [c, p] : terms_) s += std::abs(c);
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, p] : terms_) {
      if (!first) os << "  ";
      os << c << "*" << p.str();
      first = false;
    }
    return os.str();
  }

 private:
  std::vector<std::pair<double, PauliString>> terms_;
};

// Complex-weighted string sums; the working form for operator products that
// are only Hermitian after adding the conjugate (e.g. hopping bilinears).
using CTerm = std::pair<complexd, PauliString>;
using CSum = std::vector<CTerm>;

inline CSum csum_from(const PauliSum& s) {
  CSum out;
  for (const auto& [c, p] : s.terms()) out.emplace_back(complexd(c, 0), p);
  return out;
}

inline CSum csum_mul(const CSum& a, const CSum& b) {
  CSum out;
  out.reserve(a.size() * b.size());
  for (const auto& [ca, pa] : a)
    for (const auto& [cb, pb] : b) out.emplace_back(ca * cb, mul(pa, pb));
  return out;
}

inline void csum_scale(CSum& s, complexd factor) {
  for (auto& [c, p] : s) c *= factor;
}

// Folds string phases into the weights and merges equal-letter terms.
inline std::map<std::map<int, Letter>, complexd> csum_fold(const CSum& s) {
  std::map<std::map<int, Letter>, complexd> folded;
  for (const auto& [c, p] : s) folded[p.letters()] += c * p.phase();
  return folded;
}

inline bool csum_is_self_adjoint(const CSum& s, double tol = 1e-12) {
  for (const auto& [letters, w] : csum_fold(s))
    if (std::abs(w.imag()) > tol) return false;
  return true;
}

// S when S is already self-adjoint, otherwise S + S^dagger.
inline PauliSum hermitize(const CSum& s) {
  auto folded = csum_fold(s);
  bool self_adjoint = true;
  for (const auto& [letters, w] : folded)
    if (std::abs(w.imag()) > 1e-12) self_adjoint = false;
  PauliSum out;
  for (const auto& [letters, w] : folded) {
    double coeff = self_adjoint ? w.real() : 2 * w.real();
    if (std::abs(coeff) < PauliSum::drop_threshold) continue;
    PauliString p;
    for (const auto& [q, l] : letters) p.set(q, l);
    out.add(coeff, p);
  }
  out.canonicalize();
  return out;
}

}  // namespace qsynth
