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

#ifndef CRMSHADOW_TYPES_HPP
#define CRMSHADOW_TYPES_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace crmshadow {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Largest qubit count for which d^2-sized Pauli tables and dense density
/// matrices are built.
inline constexpr int kDenseQubitBudget = 12;

/// Largest qubit count for which pure-state vectors are built.
inline constexpr int kPureQubitBudget = 20;

/// Thrown when a request exceeds a configured compute or memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an input violates a physical precondition (trace, positivity,
/// hermiticity, normalization).
class PhysicalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

inline void require_qubits(int num_qubits, int budget, const char *what) {
  if (num_qubits < 1) {
    throw std::invalid_argument(std::string(what) + ": need at least one qubit");
  }
  if (num_qubits > budget) {
    throw BudgetError(std::string(what) + ": " + std::to_string(num_qubits) +
                      " qubits exceeds budget of " + std::to_string(budget));
  }
}

}  // namespace crmshadow

#endif
