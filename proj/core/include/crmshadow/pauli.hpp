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

#ifndef CRMSHADOW_PAULI_HPP
#define CRMSHADOW_PAULI_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "crmshadow/types.hpp"

namespace crmshadow {

/// Maximum qubit count representable by a PauliOp (two bits per qubit in a
/// 64-bit index).
inline constexpr int kMaxPauliQubits = 32;

/// i^phase * P(x, z), where P(x, z) is the tensor product of I, X, Z, Y chosen
/// by the bit pairs (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
///
/// Qubit q owns bit q of x and z, and bit q of a computational basis index.
struct PauliOp {
  int num_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint8_t phase = 0;

  PauliOp() = default;
  PauliOp(int n, std::uint64_t xbits, std::uint64_t zbits, std::uint8_t ph = 0);

  /// Parses strings such as "XIZ", "-YY" or "+iZ". Character q is qubit q.
  static PauliOp from_string(std::string_view text);
  static PauliOp from_index(int n, std::uint64_t index);
  static PauliOp identity(int n) { return PauliOp(n, 0, 0, 0); }

  std::uint64_t index() const;
  int weight() const { return std::popcount(x | z); }
  bool is_identity() const { return (x | z) == 0; }
  bool is_hermitian() const { return (phase & 1) == 0; }
  /// +1 or -1 for a Hermitian operator.
  int sign() const;
  PauliOp unsigned_part() const { return PauliOp(num_qubits, x, z, 0); }

  std::string str() const;

  bool operator==(const PauliOp &other) const = default;
};

PauliOp operator*(const PauliOp &a, const PauliOp &b);
bool commutes(const PauliOp &a, const PauliOp &b);
/// True when the factors on every qubit commute.
bool locally_commutes(const PauliOp &a, const PauliOp &b);
/// Number of qubits on which both operators act nontrivially.
int overlap_weight(const PauliOp &a, const PauliOp &b);

Vector apply_pauli(const PauliOp &p, const Vector &v);
/// <v|P|v> including the phase of P.
Complex pauli_expectation(const PauliOp &p, const Vector &v);
Matrix pauli_dense(const PauliOp &p);

/// @name Interleaved index arithmetic
/// The index of P(x, z) stores x_q at bit 2q and z_q at bit 2q+1, so the two
/// bits of qubit q form a code 0=I, 1=X, 2=Z, 3=Y.
/// @{
std::uint64_t interleave(std::uint64_t x, std::uint64_t z);
void deinterleave(std::uint64_t index, std::uint64_t &x, std::uint64_t &z);

/// Mask with bit 2q set iff qubit q is non-identity.
inline std::uint64_t index_support_mask(std::uint64_t a) {
  return (a | (a >> 1)) & 0x5555555555555555ull;
}
inline int index_weight(std::uint64_t a) { return std::popcount(index_support_mask(a)); }
inline bool index_commutes(std::uint64_t a, std::uint64_t b) {
  std::uint64_t swapped = ((b & 0x5555555555555555ull) << 1) | ((b >> 1) & 0x5555555555555555ull);
  return (std::popcount(a & swapped) & 1) == 0;
}
inline bool index_locally_commutes(std::uint64_t a, std::uint64_t b) {
  std::uint64_t both = index_support_mask(a) & index_support_mask(b);
  return (index_support_mask(a ^ b) & both) == 0;
}
inline int index_overlap_weight(std::uint64_t a, std::uint64_t b) {
  return std::popcount(index_support_mask(a) & index_support_mask(b));
}
/// @}

}  // namespace crmshadow

#endif
