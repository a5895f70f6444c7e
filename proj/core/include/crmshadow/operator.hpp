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

#ifndef CRMSHADOW_OPERATOR_HPP
#define CRMSHADOW_OPERATOR_HPP

#include <functional>
#include <optional>
#include <vector>

#include "crmshadow/pauli.hpp"
#include "crmshadow/types.hpp"

namespace crmshadow {

/// weight * |vec><vec|
struct RankOneTerm {
  double weight;
  Vector vec;
};

/// coeff * P for an unsigned Pauli string P.
struct PauliTerm {
  double coeff;
  PauliOp pauli;
};

/// Hermitian operator kept as a structured sum
///   c * I + sum_k w_k |v_k><v_k| + sum_j c_j P_j + D,
/// so that projectors, Pauli observables and low-rank mixtures never need a
/// dense d x d matrix. Each part is optional.
class Operator {
 public:
  explicit Operator(int num_qubits);

  static Operator identity(int num_qubits, double coeff = 1.0);
  static Operator projector(const Vector &v, double weight = 1.0);
  static Operator pauli(const PauliOp &p, double coeff = 1.0);
  /// The matrix is made exactly Hermitian by averaging with its adjoint.
  static Operator dense(const Matrix &m);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_of(num_qubits_); }

  double identity_coefficient() const { return identity_; }
  const std::vector<RankOneTerm> &rank_one_terms() const { return rank_one_; }
  const std::vector<PauliTerm> &pauli_terms() const { return pauli_; }
  const std::optional<Matrix> &dense_part() const { return dense_; }

  /// Only rank-one terms.
  bool is_low_rank() const;
  /// Identity plus rank-one terms.
  bool is_identity_plus_low_rank() const;
  /// A single Pauli term and nothing else.
  bool is_single_pauli() const;

  Operator &operator+=(const Operator &other);
  Operator &operator-=(const Operator &other);
  Operator &operator*=(double s);
  friend Operator operator+(Operator a, const Operator &b) { return a += b; }
  friend Operator operator-(Operator a, const Operator &b) { return a -= b; }
  friend Operator operator*(Operator a, double s) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= s; }

  Vector apply(const Vector &v) const;
  /// Applies the operator to every column.
  Matrix apply(const Matrix &m) const;
  /// <v|A|v>, real for Hermitian A.
  double expectation(const Vector &v) const;
  double trace() const;
  Matrix to_dense() const;

  /// Returns U A U^dagger given a routine that applies U to a vector in place.
  /// Pauli terms are densified.
  Operator conjugated(const std::function<void(Vector &)> &apply_unitary) const;

 private:
  void check_compatible(const Operator &other) const;

  int num_qubits_;
  double identity_ = 0.0;
  std::vector<RankOneTerm> rank_one_;
  std::vector<PauliTerm> pauli_;
  std::optional<Matrix> dense_;
};

/// Tr(A B).
double trace_product(const Operator &a, const Operator &b);

/// Tr(A^2).
inline double trace_square(const Operator &a) { return trace_product(a, a); }

/// Eigenvalues of A; identity-plus-low-rank operators are diagonalized in the
/// span of their vectors, with the remaining eigenvalue returned once per
/// multiplicity.
struct Spectrum {
  std::vector<double> values;
  std::vector<double> multiplicities;
};
Spectrum spectrum(const Operator &a);

/// Schatten-1 norm, sum_i |lambda_i|.
double trace_norm(const Operator &a);

}  // namespace crmshadow

#endif
