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

#include "qsynth/dense.hpp"
#include "qsynth/jw.hpp"
#include "qsynth/synth.hpp"

namespace qsynth {

// Dense Hamiltonian of a compiled model: the coordinate-basis sum plus the
// kinetic sum conjugated by the centered DFT.
inline Mat hamiltonian_dense(const CompiledModel& cm) {
  check_oracle_size(cm.num_qubits);
  Mat h = pauli_sum_matrix(cm.potential, cm.num_qubits);
  if (cm.bosons.num_bosons > 0 && cm.kinetic.size() > 0) {
    Mat f = centered_dft_dense(cm.num_qubits, cm.bosons.num_bosons, cm.bosons.Q);
    h += f.adjoint() * pauli_sum_matrix(cm.kinetic, cm.num_qubits) * f;
  }
  return h;
}

// Spectral-norm distance between the synthesized Trotter step and the exact
// propagator exp(-i eps H).
inline double trotter_error(const CompiledModel& cm, double eps,
                            const TrotterOptions& opt = {}) {
  Mat u = circuit_matrix(trotter_step(cm, eps, opt));
  Mat ref = expm_hermitian(hamiltonian_dense(cm), eps);
  return spectral_norm(u - ref);
}

// Distance of a synthesized circuit from a dense target unitary.
inline double circuit_distance(const Circuit& c, const Mat& target) {
  return spectral_norm(circuit_matrix(c) - target);
}

}  // namespace qsynth
