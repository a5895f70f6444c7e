// Copyright 2026 The crmshadow Authors
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

#ifndef CRMSHADOW_CLIFFORD_HPP
#define CRMSHADOW_CLIFFORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "crmshadow/pauli.hpp"
#include "crmshadow/rng.hpp"

namespace crmshadow {

enum class GateKind : std::uint8_t { H, S, Sdg, X, Z, CX, Swap };

struct Gate {
  GateKind kind;
  int q0;
  int q1 = -1;
};

Gate inverse(const Gate &g);
/// g P g^dagger.
PauliOp conjugate_by_gate(const Gate &g, const PauliOp &p);
void apply_gate(const Gate &g, Vector &v);

/// A Clifford unitary given as a gate sequence (applied front to back) with
/// its stabilizer tableau U X_q U^dagger, U Z_q U^dagger.
class CliffordElement {
 public:
  CliffordElement(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }
  const PauliOp &image_x(int q) const { return images_x_[q]; }
  const PauliOp &image_z(int q) const { return images_z_[q]; }

  /// U P U^dagger.
  PauliOp conjugate(const PauliOp &p) const;
  void apply(Vector &v) const;
  void apply_adjoint(Vector &v) const;
  Matrix dense() const;
  CliffordElement inverse() const;

  /// Canonical string of the signed tableau; equal keys mean equal
  /// unitaries up to global phase.
  std::string tableau_key() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
  std::vector<PauliOp> images_x_;
  std::vector<PauliOp> images_z_;
};

/// Uniform over Cl(2^n) modulo phase. Each stage draws a uniformly random
/// signed anticommuting pair as the images of X_t, Z_t and sweeps it onto
/// qubit t with H, S, CX and SWAP gates.
CliffordElement sample_clifford(int n, Philox &rng);
/// Uniform over the n-fold tensor product of single-qubit Clifford groups.
CliffordElement sample_local_clifford(int n, Philox &rng);

/// Every element of Cl(2^n) modulo phase (24 for n = 1, 11520 for n = 2).
std::vector<CliffordElement> enumerate_cliffords(int n);
/// Every element of Cl(2)^{(x) n} modulo phase (24^n elements).
std::vector<CliffordElement> enumerate_local_cliffords(int n);

/// Gates G with G A G^dagger = X_t and G B G^dagger = Z_t for Hermitian,
/// anticommuting A, B supported on qubits >= t.
std::vector<Gate> sweep_pair_to_qubit(PauliOp a, PauliOp b, int t);

}  // namespace crmshadow

#endif
