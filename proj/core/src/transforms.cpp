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

#include "crmshadow/transforms.hpp"

#include <bit>
#include <stdexcept>

namespace crmshadow {

namespace {

template <typename T>
void fwht_impl(std::span<T> data) {
  std::size_t len = data.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        T a = data[j];
        T b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

const QubitKernel kSymplecticKernel = {{
    {1, 1, 1, 1},
    {1, 1, -1, -1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
}};

const QubitKernel kLocalCommutationKernel = {{
    {1, 1, 1, 1},
    {1, 3, 0, 0},
    {1, 0, 3, 0},
    {1, 0, 0, 3},
}};

}  // namespace

void fwht(std::span<Complex> data) { fwht_impl(data); }

void fwht(std::span<double> data) { fwht_impl(data); }

void apply_qubitwise_kernel(std::span<double> table, int num_qubits, const QubitKernel &kernel) {
  std::size_t len = std::size_t{1} << (2 * num_qubits);
  if (table.size() != len) {
    throw std::invalid_argument("apply_qubitwise_kernel: table size is not 4^n");
  }
  for (int q = 0; q < num_qubits; ++q) {
    std::size_t stride = std::size_t{1} << (2 * q);
    for (std::size_t base = 0; base < len; base += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        std::size_t i = base + off;
        double in[4] = {table[i], table[i + stride], table[i + 2 * stride], table[i + 3 * stride]};
        for (int a = 0; a < 4; ++a) {
          table[i + a * stride] = kernel[a][0] * in[0] + kernel[a][1] * in[1] +
                                  kernel[a][2] * in[2] + kernel[a][3] * in[3];
        }
      }
    }
  }
}

void symplectic_transform(std::span<double> table, int num_qubits) {
  apply_qubitwise_kernel(table, num_qubits, kSymplecticKernel);
}

void local_commutation_transform(std::span<double> table, int num_qubits) {
  apply_qubitwise_kernel(table, num_qubits, kLocalCommutationKernel);
}

}  // namespace crmshadow
