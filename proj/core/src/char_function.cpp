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

#include "crmshadow/char_function.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "crmshadow/transforms.hpp"

namespace crmshadow {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void drop_small(std::vector<double> &values) {
  double scale = 0.0;
  for (double v : values) {
    scale = std::max(scale, std::abs(v));
  }
  double cutoff = kCharDropTolerance * std::max(scale, 1e-300);
  for (double &v : values) {
    if (std::abs(v) < cutoff) {
      v = 0.0;
    }
  }
}

void check_same_shape(const CharFunction &a, const CharFunction &b) {
  if (a.num_qubits() != b.num_qubits() || a.size() != b.size()) {
    throw std::invalid_argument("characteristic functions have different qubit counts");
  }
}

std::vector<double> tabulate(const Operator &a) {
  int n = a.num_qubits();
  require_qubits(n, kDenseQubitBudget, "char_function");
  std::size_t d = dim_of(n);
  std::vector<double> values(d * d, 0.0);
  bool has_offdiag_parts = !a.rank_one_terms().empty() || a.dense_part().has_value();
  if (has_offdiag_parts) {
    std::vector<Complex> row(d);
    for (std::uint64_t x = 0; x < d; ++x) {
      std::fill(row.begin(), row.end(), Complex(0.0));
      for (const RankOneTerm &t : a.rank_one_terms()) {
        for (std::uint64_t b = 0; b < d; ++b) {
          row[b] += t.weight * t.vec[b] * std::conj(t.vec[b ^ x]);
        }
      }
      if (a.dense_part()) {
        const Matrix &m = *a.dense_part();
        for (std::uint64_t b = 0; b < d; ++b) {
          row[b] += m(b, b ^ x);
        }
      }
      fwht(std::span<Complex>(row));
      std::uint64_t xs = interleave(x, 0);
      for (std::uint64_t zz = 0; zz < d; ++zz) {
        Complex v = row[zz] * kIPowers[std::popcount(x & zz) & 3];
        values[xs | interleave(0, zz)] = v.real();
      }
    }
  }
  values[0] += a.identity_coefficient() * static_cast<double>(d);
  for (const PauliTerm &t : a.pauli_terms()) {
    values[t.pauli.index()] += t.coeff * static_cast<double>(d);
  }
  drop_small(values);
  return values;
}

}  // namespace

CharFunction::CharFunction(int num_qubits, std::vector<double> values)
    : num_qubits_(num_qubits), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << (2 * num_qubits))) {
    throw std::invalid_argument("CharFunction: table size is not 4^n");
  }
}

double CharFunction::at(const PauliOp &p) const {
  if (p.num_qubits != num_qubits_) {
    throw std::invalid_argument("CharFunction::at: qubit count mismatch");
  }
  double v = values_[p.index()];
  static constexpr double kPhaseRe[4] = {1, 0, -1, 0};
  if (!p.is_hermitian()) {
    throw std::invalid_argument("CharFunction::at: non-Hermitian Pauli");
  }
  return kPhaseRe[p.phase] * v;
}

std::vector<std::uint64_t> CharFunction::support() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t CharFunction::nnz() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double v) { return v != 0.0; }));
}

double CharFunction::norm2_squared() const {
  double acc = 0.0;
  for (double v : values_) {
    acc += v * v;
  }
  return acc;
}

double CharFunction::norm4_fourth() const {
  double acc = 0.0;
  for (double v : values_) {
    double s = v * v;
    acc += s * s;
  }
  return acc;
}

CharFunction char_function(const Operator &a) {
  return CharFunction(a.num_qubits(), tabulate(a));
}

CharFunction char_function(const Vector &pure_state) {
  return char_function(Operator::projector(pure_state));
}

CharFunction cross_char(const CharFunction &a, const CharFunction &b) {
  check_same_shape(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a[i] * b[i];
  }
  return CharFunction(a.num_qubits(), std::move(out));
}

CharFunction twisted_cross_char(const CharFunction &a, const CharFunction &b) {
  CharFunction cross = cross_char(a, b);
  std::vector<double> out = cross.values();
  symplectic_transform(std::span<double>(out), a.num_qubits());
  double inv_d = 1.0 / static_cast<double>(dim_of(a.num_qubits()));
  for (double &v : out) {
    v *= inv_d;
  }
  drop_small(out);
  return CharFunction(a.num_qubits(), std::move(out));
}

CharFunction twisted_cross_char_direct(const Operator &a, const Vector &b) {
  int n = a.num_qubits();
  require_qubits(n, kDenseQubitBudget, "twisted_cross_char_direct");
  std::size_t count = std::size_t{1} << (2 * n);
  std::vector<double> out(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Vector pb = apply_pauli(PauliOp::from_index(n, i), b);
    out[i] = a.expectation(pb);
  }
  drop_small(out);
  return CharFunction(n, std::move(out));
}

double char_dot(const CharFunction &f, const CharFunction &g) {
  check_same_shape(f, g);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i] * g[i];
  }
  return acc;
}

Matrix dense_from_char(const CharFunction &xi) {
  int n = xi.num_qubits();
  require_qubits(n, kDenseQubitBudget, "dense_from_char");
  std::size_t d = dim_of(n);
  Matrix m(d, d);
  std::vector<Complex> row(d);
  double inv_d = 1.0 / static_cast<double>(d);
  for (std::uint64_t x = 0; x < d; ++x) {
    std::uint64_t xs = interleave(x, 0);
    for (std::uint64_t zz = 0; zz < d; ++zz) {
      row[zz] = xi[xs | interleave(0, zz)] * kIPowers[std::popcount(x & zz) & 3];
    }
    fwht(std::span<Complex>(row));
    for (std::uint64_t b = 0; b < d; ++b) {
      m(b ^ x, b) = row[b] * inv_d;
    }
  }
  return m;
}

double stabilizer_renyi2(const CharFunction &xi_pure) {
  double d = static_cast<double>(dim_of(xi_pure.num_qubits()));
  if (std::abs(xi_pure[0] - 1.0) > 1e-9 || std::abs(xi_pure.norm2_squared() - d) > 1e-8 * d) {
    throw std::invalid_argument("stabilizer_renyi2: input is not a normalized pure state");
  }
  return std::max(0.0, std::log2(d / xi_pure.norm4_fourth()));
}

double stabilizer_renyi2(const Vector &pure_state) {
  return stabilizer_renyi2(char_function(pure_state));
}

AnticommutationTables::AnticommutationTables(const CharFunction &xi_pure) : xi_(xi_pure) {
  signed_sum_.resize(xi_.size());
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    double s = xi_[i] * xi_[i];
    signed_sum_[i] = s * s;
    total_ += s * s;
  }
  symplectic_transform(std::span<double>(signed_sum_), xi_.num_qubits());
}

double AnticommutationTables::eta(std::uint64_t p) const { return 1.0 - xi_[p] * xi_[p]; }

double AnticommutationTables::k1(std::uint64_t p) const {
  return 0.5 * (total_ - signed_sum_[p]);
}

double AnticommutationTables::k2(std::uint64_t p, std::uint64_t q) const {
  return 0.25 * (total_ - signed_sum_[p] - signed_sum_[q] + signed_sum_[p ^ q]);
}

}  // namespace crmshadow
