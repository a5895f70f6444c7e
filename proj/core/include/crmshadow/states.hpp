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

#ifndef CRMSHADOW_STATES_HPP
#define CRMSHADOW_STATES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crmshadow/operator.hpp"
#include "crmshadow/rng.hpp"

namespace crmshadow {

/// A density operator, stored as a state vector when pure.
class QuantumState {
 public:
  /// Throws PhysicalityError unless |v| = 1 within 1e-10.
  static QuantumState pure(Vector v);
  /// Throws PhysicalityError unless Tr = 1 and the operator is positive
  /// semidefinite (checked exactly for low-rank forms and for dense forms up
  /// to 10 qubits).
  static QuantumState mixed(Operator rho);
  /// Convex combination sum_k p_k |v_k><v_k| of normalized vectors.
  static QuantumState mixture(const std::vector<double> &probs, const std::vector<Vector> &vecs);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_of(num_qubits_); }
  bool is_pure() const { return vector_.has_value(); }
  const Vector &vector() const;
  Operator as_operator() const;
  Matrix density_matrix() const;
  double purity() const;
  /// Tr(rho O).
  double expectation(const Operator &o) const;

 private:
  QuantumState(int n, std::optional<Vector> v, std::optional<Operator> op);

  int num_qubits_;
  std::optional<Vector> vector_;
  std::optional<Operator> operator_;
};

/// Named numeric parameters of a state family, e.g. {"n": 7, "k": 3}.
using StateParams = std::map<std::string, double>;

/// @name State families
/// @{
Vector t_state();
/// |0>^{n-k} |T(theta)>^k with |T(theta)> = (|0> + e^{i theta}|1>)/sqrt 2.
Vector s_nk_state(int n, int k, double theta);
/// CZ on every nearest-neighbour pair (open chain) applied to |T>^n.
Vector magic_cluster_state(int n);
Vector ghz_state(int n);
/// Ground state of -J sum_i Z_i Z_{i+1} (periodic) - h sum_i X_i. Degenerate
/// ground spaces are resolved by projecting |+>^n into them; the first
/// nonzero amplitude is made real and positive.
Vector tfim_ground_state(int n, double h, double j = 1.0);
Vector haar_state(int n, Philox &rng);
/// alpha |0> (x) |phi_0> + sqrt(1 - alpha^2) |1> (x) |phi_1> with the tagged
/// qubit 0 first, phi_0, phi_1 Haar on n-1 qubits and ln alpha ~ U[-5, 0].
Vector structured_random_state(int n, Philox &rng);
/// @}

/// Families accepted by make_state.
const std::vector<std::string> &state_families();
/// Builds a state from a family name; random families draw from rng.
Vector make_state(const std::string &family, const StateParams &params, Philox *rng);
/// Closed-form stabilizer 2-Renyi entropy when the family has one.
std::optional<double> analytic_stabilizer_renyi2(const std::string &family, const StateParams &params);
/// True when make_state consumes randomness for this family.
bool family_is_random(const std::string &family);

/// Haar-random unitary via QR of a complex Gaussian matrix with phase fix.
Matrix haar_unitary(std::size_t dim, Philox &rng);

/// 1 - F for sigma pure (1 - Tr(rho sigma)); general mixed pairs use the
/// Uhlmann fidelity on dense matrices.
double infidelity(const QuantumState &rho, const QuantumState &sigma);

/// Delta = rho - sigma.
struct Deviation {
  Operator delta;
  double trace_norm() const { return crmshadow::trace_norm(delta); }
  double hs_norm_squared() const { return trace_square(delta); }
};
Deviation deviation(const QuantumState &rho, const QuantumState &sigma);

/// Fidelity observable O = sigma - I/d for a pure target.
Operator fidelity_observable(const Vector &sigma);
/// Z_0 Z_1 ... Z_{w-1} on n qubits.
Operator z_prefix_observable(int n, int weight);

}  // namespace crmshadow

#endif
