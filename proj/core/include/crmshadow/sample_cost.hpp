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


#ifndef CRMSHADOW_SAMPLE_COST_HPP
#define CRMSHADOW_SAMPLE_COST_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crmshadow/variance.hpp"

namespace crmshadow {

/// Precision parameters: target error r * eps (or eps_abs) at significance
/// level delta.
struct PrecisionSpec {
  double r = 0.25;
  double delta = 0.01;
  double eps_abs = 0.0;
};

/// Thrown when a theorem bound is requested outside its hypotheses.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ceil(68 V_R / eps_abs^2 ln(2/delta)), at least 1.
std::int64_t n_u_generic(double v_r, double eps_abs, double delta);

enum class HpfeBound : std::uint8_t { Lemma3, Thm2, Thm4, Thm5Pauli, Thm5Depolarizing };

std::string to_string(HpfeBound b);
/// Accepts "lemma3", "thm2", "thm4", "thm5_pauli" and "thm5_depolarizing".
HpfeBound parse_hpfe_bound(const std::string &name);

/// What the fidelity-estimation bounds need to know about the setting.
struct HpfeSetting {
  Ensemble ensemble = Ensemble::Clifford;
  int num_qubits = 1;
  double eps = 0.0;
  double reuse = 1.0;
  bool sigma_pure = true;
  /// Noise model kind as reported by noise_kind(), empty when unknown.
  std::string noise;
  std::optional<double> v_star_delta;
  std::optional<double> delta_norm2_sq;
  std::optional<double> m2;
};

/// Circuit count guaranteeing fidelity error r * eps from the selected bound.
/// Throws HypothesisError when the setting violates its hypotheses or lacks
/// a required quantity.
std::int64_t n_u_hpfe(HpfeBound bound, const HpfeSetting &setting, double r, double delta);

/// Circuit count for fidelity error r * eps from an exact variance report.
std::int64_t n_u_from_report(const VarianceReport &report, double reuse, bool crm, double r,
                             double eps, double delta);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = slope x + intercept; needs at least three
/// points with distinct x.
LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y);
/// Least squares on log-log axes; slope is the scaling exponent.
LinearFit scaling_fit(const std::vector<std::pair<double, double>> &points);

}  // namespace crmshadow

#endif
