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

#ifndef CRMSHADOW_CHAR_FUNCTION_HPP
#define CRMSHADOW_CHAR_FUNCTION_HPP

#include <cstdint>
#include <vector>

#include "crmshadow/operator.hpp"

namespace crmshadow {

/// Entries below this magnitude (relative to the largest entry) are stored as
/// exact zeros.
inline constexpr double kCharDropTolerance = 1e-12;

/// Pauli characteristic function Xi_A(P) = Tr(A P) of a Hermitian operator,
/// tabulated over all 4^n interleaved Pauli indices.
class CharFunction {
 public:
  CharFunction() = default;
  CharFunction(int num_qubits, std::vector<double> values);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::uint64_t index) const { return values_[index]; }
  double at(const PauliOp &p) const;
  const std::vector<double> &values() const { return values_; }

  /// Indices of nonzero entries, ascending.
  std::vector<std::uint64_t> support() const;
  std::size_t nnz() const;

  /// sum_P Xi(P)^2, which equals d * Tr(A^2).
  double norm2_squared() const;
  /// sum_P Xi(P)^4.
  double norm4_fourth() const;

 private:
  int num_qubits_ = 0;
  std::vector<double> values_;
};

CharFunction char_function(const Operator &a);
CharFunction char_function(const Vector &pure_state);

/// Xi_{A,B}(P) = Xi_A(P) Xi_B(P).
CharFunction cross_char(const CharFunction &a, const CharFunction &b);

/// Twisted cross function Tr(A P B P) for every P, computed from the cross
/// function with one symplectic transform.
CharFunction twisted_cross_char(const CharFunction &a, const CharFunction &b);

/// Direct evaluation of Tr(A P |b><b| P) by applying each P to the vector;
/// O(d^2) work per Pauli for dense A, intended for cross-checks.
CharFunction twisted_cross_char_direct(const Operator &a, const Vector &b);

/// sum_P f(P) g(P).
double char_dot(const CharFunction &f, const CharFunction &g);

/// Dense matrix (1/d) sum_P Xi(P) P.
Matrix dense_from_char(const CharFunction &xi);

/// Stabilizer 2-Renyi entropy log2(d / sum_P Xi_psi(P)^4) of a pure state.
double stabilizer_renyi2(const Vector &pure_state);
double stabilizer_renyi2(const CharFunction &xi_pure);

/// Anticommutation tables of a pure state:
///   eta(P) = 1 - Xi(P)^2,
///   K(P) = sum_{Q anticommuting with P} Xi(Q)^4,
///   K(P, P') = sum_{Q anticommuting with both} Xi(Q)^4.
class AnticommutationTables {
 public:
  explicit AnticommutationTables(const CharFunction &xi_pure);
  double eta(std::uint64_t p) const;
  double k1(std::uint64_t p) const;
  double k2(std::uint64_t p, std::uint64_t q) const;
  int num_qubits() const { return xi_.num_qubits(); }

 private:
  CharFunction xi_;
  double total_ = 0.0;
  std::vector<double> signed_sum_;
};

}  // namespace crmshadow

#endif
