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

#include "crmshadow/pauli.hpp"

#include <stdexcept>
#include <string>

namespace crmshadow {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Exponent of i picked up by sigma(x1,z1) * sigma(x2,z2) on a single qubit.
int single_qubit_phase(int x1, int z1, int x2, int z2) {
  if (x1 == 0 && z1 == 0) {
    return 0;
  }
  if (x1 == 1 && z1 == 1) {
    return z2 - x2;
  }
  if (x1 == 1) {
    return z2 * (2 * x2 - 1);
  }
  return x2 * (1 - 2 * z2);
}

void check_width(int n) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw std::invalid_argument("PauliOp: qubit count out of range");
  }
}

}  // namespace

PauliOp::PauliOp(int n, std::uint64_t xbits, std::uint64_t zbits, std::uint8_t ph)
    : num_qubits(n), x(xbits), z(zbits), phase(static_cast<std::uint8_t>(ph & 3)) {
  check_width(n);
  std::uint64_t mask = n == 64 ? ~0ull : ((1ull << n) - 1);
  if ((x & ~mask) != 0 || (z & ~mask) != 0) {
    throw std::invalid_argument("PauliOp: bits set beyond qubit count");
  }
}

PauliOp PauliOp::from_string(std::string_view text) {
  std::uint8_t ph = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') {
      ph = 2;
    }
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    ph = static_cast<std::uint8_t>((ph + 1) & 3);
    ++pos;
  }
  std::string_view body = text.substr(pos);
  int n = static_cast<int>(body.size());
  check_width(n);
  std::uint64_t xb = 0;
  std::uint64_t zb = 0;
  for (int q = 0; q < n; ++q) {
    switch (body[q]) {
      case 'I':
      case '_':
        break;
      case 'X':
        xb |= 1ull << q;
        break;
      case 'Z':
        zb |= 1ull << q;
        break;
      case 'Y':
        xb |= 1ull << q;
        zb |= 1ull << q;
        break;
      default:
        throw std::invalid_argument("PauliOp::from_string: bad character '" +
                                    std::string(1, body[q]) + "'");
    }
  }
  return PauliOp(n, xb, zb, ph);
}

PauliOp PauliOp::from_index(int n, std::uint64_t index) {
  std::uint64_t xb = 0;
  std::uint64_t zb = 0;
  deinterleave(index, xb, zb);
  return PauliOp(n, xb, zb, 0);
}

std::uint64_t PauliOp::index() const { return interleave(x, z); }

int PauliOp::sign() const {
  if (!is_hermitian()) {
    throw std::logic_error("PauliOp::sign: operator is not Hermitian");
  }
  return phase == 0 ? 1 : -1;
}

std::string PauliOp::str() const {
  static const char *kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase];
  for (int q = 0; q < num_qubits; ++q) {
    int xq = (x >> q) & 1;
    int zq = (z >> q) & 1;
    out += xq ? (zq ? 'Y' : 'X') : (zq ? 'Z' : 'I');
  }
  return out;
}

PauliOp operator*(const PauliOp &a, const PauliOp &b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("PauliOp multiply: qubit count mismatch");
  }
  int g = a.phase + b.phase;
  std::uint64_t support = (a.x | a.z) & (b.x | b.z);
  while (support != 0) {
    int q = std::countr_zero(support);
    support &= support - 1;
    g += single_qubit_phase((a.x >> q) & 1, (a.z >> q) & 1, (b.x >> q) & 1, (b.z >> q) & 1);
  }
  return PauliOp(a.num_qubits, a.x ^ b.x, a.z ^ b.z, static_cast<std::uint8_t>(((g % 4) + 4) % 4));
}

namespace {

void check_same_size(const PauliOp &a, const PauliOp &b, const char *what) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument(std::string(what) + ": qubit count mismatch");
  }
}

}  // namespace

bool commutes(const PauliOp &a, const PauliOp &b) {
  check_same_size(a, b, "commutes");
  return (std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0;
}

bool locally_commutes(const PauliOp &a, const PauliOp &b) {
  check_same_size(a, b, "locally_commutes");
  std::uint64_t both = (a.x | a.z) & (b.x | b.z);
  return (((a.x ^ b.x) | (a.z ^ b.z)) & both) == 0;
}

int overlap_weight(const PauliOp &a, const PauliOp &b) {
  check_same_size(a, b, "overlap_weight");
  return std::popcount((a.x | a.z) & (b.x | b.z));
}

Vector apply_pauli(const PauliOp &p, const Vector &v) {
  std::size_t d = dim_of(p.num_qubits);
  if (static_cast<std::size_t>(v.size()) != d) {
    throw std::invalid_argument("apply_pauli: dimension mismatch");
  }
  Vector out(d);
  Complex base = kIPowers[(p.phase + std::popcount(p.x & p.z)) & 3];
  for (std::size_t b = 0; b < d; ++b) {
    Complex amp = v[b] * base;
    out[b ^ p.x] = (std::popcount(p.z & b) & 1) ? -amp : amp;
  }
  return out;
}

Complex pauli_expectation(const PauliOp &p, const Vector &v) {
  std::size_t d = dim_of(p.num_qubits);
  if (static_cast<std::size_t>(v.size()) != d) {
    throw std::invalid_argument("pauli_expectation: dimension mismatch");
  }
  Complex acc = 0.0;
  for (std::size_t b = 0; b < d; ++b) {
    Complex term = std::conj(v[b ^ p.x]) * v[b];
    acc += (std::popcount(p.z & b) & 1) ? -term : term;
  }
  return acc * kIPowers[(p.phase + std::popcount(p.x & p.z)) & 3];
}

Matrix pauli_dense(const PauliOp &p) {
  require_qubits(p.num_qubits, kDenseQubitBudget, "pauli_dense");
  std::size_t d = dim_of(p.num_qubits);
  Matrix m = Matrix::Zero(d, d);
  Complex base = kIPowers[(p.phase + std::popcount(p.x & p.z)) & 3];
  for (std::size_t b = 0; b < d; ++b) {
    m(b ^ p.x, b) = (std::popcount(p.z & b) & 1) ? -base : base;
  }
  return m;
}

namespace {

std::uint64_t spread_bits(std::uint64_t v) {
  v &= 0xFFFFFFFFull;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

std::uint64_t compact_bits(std::uint64_t v) {
  v &= 0x5555555555555555ull;
  v = (v | (v >> 1)) & 0x3333333333333333ull;
  v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
  v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
  v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
  return v;
}

}  // namespace

std::uint64_t interleave(std::uint64_t x, std::uint64_t z) {
  return spread_bits(x) | (spread_bits(z) << 1);
}

void deinterleave(std::uint64_t index, std::uint64_t &x, std::uint64_t &z) {
  x = compact_bits(index);
  z = compact_bits(index >> 1);
}

}  // namespace crmshadow
