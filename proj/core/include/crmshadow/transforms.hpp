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

#ifndef CRMSHADOW_TRANSFORMS_HPP
#define CRMSHADOW_TRANSFORMS_HPP

#include <array>
#include <span>

#include "crmshadow/types.hpp"

namespace crmshadow {

using QubitKernel = std::array<std::array<double, 4>, 4>;

/// Unnormalized in-place Walsh-Hadamard transform; length must be a power of 2.
void fwht(std::span<Complex> data);
void fwht(std::span<double> data);

/// Applies the 4x4 kernel K to every qubit of a table indexed by interleaved
/// Pauli indices: out[a] = sum_b prod_q K[a_q][b_q] in[b].
void apply_qubitwise_kernel(std::span<double> table, int num_qubits, const QubitKernel &kernel);

/// out(P) = sum_Q (-1)^{<P,Q>} in(Q), with <P,Q> the symplectic form.
void symplectic_transform(std::span<double> table, int num_qubits);

/// out(P) = sum_{Q locally commuting with P} 3^{|supp P cap supp Q|} in(Q).
void local_commutation_transform(std::span<double> table, int num_qubits);

}  // namespace crmshadow

#endif
