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

#ifndef CRMSHADOW_CHANNELS_HPP
#define CRMSHADOW_CHANNELS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "crmshadow/states.hpp"

namespace crmshadow {

/// (1 - p) sigma + p I/d.
struct Depolarizing {
  double p;
};

/// (1 - sum_i p_i) sigma + sum_i p_i P_i sigma P_i over non-identity P_i,
/// stored as a sparse map from interleaved Pauli index to probability.
struct PauliChannel {
  int num_qubits;
  std::vector<std::pair<std::uint64_t, double>> probs;
  double total() const;
};

/// prod_k exp(-i theta_k/2 u_k . sigma) acting on qubit k.
struct LocalRotation {
  std::vector<std::array<double, 3>> axes;
  std::vector<double> angles;
};

/// U(theta)^{(x) n} with
/// U(theta) = [[e^{-i theta} cos(theta/2), -sin(theta/2)],
///             [sin(theta/2), e^{i theta} cos(theta/2)]].
struct CollectiveRotation {
  double theta;
};

using NoiseModel = std::variant<Depolarizing, PauliChannel, LocalRotation, CollectiveRotation>;

std::string noise_kind(const NoiseModel &model);
/// True for depolarizing and Pauli channels.
bool is_pauli_noise(const NoiseModel &model);

/// Validates parameters and applies the channel. Pauli channels on pure
/// inputs with at most 16 terms stay a low-rank mixture; larger ones go
/// through the Pauli transfer diagonal and a dense density matrix.
QuantumState apply_noise(const NoiseModel &model, const QuantumState &sigma);

/// Depolarizing strength with infidelity eps on a pure target:
/// p = eps / (1 - 1/d).
Depolarizing depolarizing_for_infidelity(int n, double eps);

/// i.i.d. U[0,1] weights on every non-identity Pauli, rescaled to sum to
/// beta. Above the dense budget a uniformly random support of `max_support`
/// Paulis is used instead.
PauliChannel random_pauli_channel(int n, double beta, Philox &rng,
                                  std::size_t max_support = 4096);
/// Random channel with average infidelity eps_avg: beta = eps_avg (d + 1)/d.
PauliChannel random_pauli_channel_for_infidelity(int n, double eps_avg, Philox &rng,
                                                 std::size_t max_support = 4096);
/// p_0 sigma + p P sigma P for a single Pauli P.
PauliChannel single_pauli_error(const PauliOp &p, double prob);

/// Uniform axes on the sphere and angles with prod_k cos^2(theta_k/2) = xi,
/// xi = 1 - (d + 1) eps_avg / d. Uniform draws h_k in (0, 1] are rescaled in
/// log space, h_k -> h_k^s with s = ln xi / sum_k ln h_k, and
/// theta_k = arccos(2 h_k - 1).
LocalRotation random_local_rotation(int n, double eps_avg, Philox &rng);
/// Uniform axes and angles theta_k ~ U[0, 2 pi).
LocalRotation random_coherent_rotation(int n, Philox &rng);
/// Average gate infidelity d (1 - prod_k cos^2(theta_k/2)) / (d + 1).
double average_infidelity(const LocalRotation &rotation);

/// Smallest positive theta with 1 - |<psi|U(theta)^n|psi>|^2 = eps, found by
/// bracketing and bisection.
CollectiveRotation collective_rotation_for_infidelity(const Vector &psi, double eps);
Eigen::Matrix2cd collective_rotation_matrix(double theta);

/// Single-qubit matrix exp(-i theta/2 u . sigma).
Eigen::Matrix2cd axis_rotation_matrix(const std::array<double, 3> &axis, double theta);
void apply_single_qubit(const Eigen::Matrix2cd &u, int qubit, Vector &v);

/// @name Round-trip through a key-value representation
/// @{
std::map<std::string, std::vector<double>> serialize_noise(const NoiseModel &model);
NoiseModel deserialize_noise(const std::string &kind,
                             const std::map<std::string, std::vector<double>> &fields);
/// @}

}  // namespace crmshadow

#endif
