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


#ifndef CRMSHADOW_ESTIMATORS_HPP
#define CRMSHADOW_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crmshadow/char_function.hpp"
#include "crmshadow/clifford.hpp"
#include "crmshadow/states.hpp"
#include "crmshadow/variance.hpp"

namespace crmshadow {

/// Applies a unitary to a state vector in place.
using UnitaryAction = std::function<void(Vector &)>;

/// Outcome counts R_s of R computational-basis measurements after one circuit.
struct MeasurementRecord {
  int num_qubits = 0;
  std::int64_t shots = 0;
  /// (outcome, count) pairs with positive counts, ascending by outcome.
  std::vector<std::pair<std::uint64_t, std::int64_t>> counts;
};

enum class EstimatorMode : std::uint8_t { Standard, Thrifty, Crm };

std::string to_string(EstimatorMode m);
/// Accepts "standard", "thr" and "crm".
EstimatorMode parse_mode(const std::string &name);

/// diag(U A U^dagger) in the computational basis.
RealVector conjugated_diagonal(const Operator &a, const UnitaryAction &u);

/// Born probabilities <s|U rho U^dagger|s>.
RealVector born_probabilities(const QuantumState &rho, const UnitaryAction &u);

/// Tr(O M^{-1}(U^dagger |s><s| U)) for every outcome s under a 3-design
/// reconstruction, (d + 1) <s|U O U^dagger|s> - Tr O.
RealVector design_reconstruction_values(const Operator &o, const UnitaryAction &u);

/// The same for a local Clifford U under the local-Pauli reconstruction,
/// (1/d) sum_P 3^{w(P)} Xi_O(P) <s|U P U^dagger|s>.
RealVector pauli_reconstruction_values(const CharFunction &xi_o, const CliffordElement &u);

/// Multinomial sample of R outcomes from a probability table.
MeasurementRecord simulate_round(const RealVector &probs, std::int64_t shots, Philox &rng);
MeasurementRecord simulate_round(const QuantumState &rho, const UnitaryAction &u,
                                 std::int64_t shots, Philox &rng);

/// sum_s R_s/R values_s.
double thrifty_estimate(const MeasurementRecord &record, const RealVector &values);
/// sum_s [R_s/R - P_sigma(s)] values_s + Tr(sigma O).
double crm_estimate(const MeasurementRecord &record, const RealVector &values,
                    const RealVector &p_sigma, double tr_sigma_o);

/// Median of the means of `batches` near-equal consecutive blocks. An even
/// number of blocks takes the average of the two central means.
double median_of_means(const std::vector<double> &estimates, int batches);
/// ceil(2 ln(2/delta)).
int mom_batches_for(double delta);

struct EstimatorConfig {
  Ensemble ensemble = Ensemble::Clifford;
  EstimatorMode mode = EstimatorMode::Crm;
  std::int64_t reuse = 1;
  std::int64_t circuits = 1;
  int mom_batches = 1;
};

struct ProtocolResult {
  /// Median-of-means over circuits.
  double estimate = 0.0;
  double mean = 0.0;
  /// Unbiased sample variance of the per-circuit estimates.
  double empirical_variance = 0.0;
  std::vector<double> per_circuit;
};

/// A sampled measurement unitary with everything needed to evaluate
/// single-circuit estimators.
struct SampledCircuit {
  UnitaryAction action;
  std::optional<CliffordElement> clifford;
};
SampledCircuit sample_circuit(Ensemble ensemble, int n, Philox &rng);

/// Per-outcome reconstruction values for a sampled circuit. xi_o is only
/// used by the local-Pauli ensemble.
RealVector reconstruction_values(Ensemble ensemble, const Operator &o, const CharFunction *xi_o,
                                 const SampledCircuit &circuit);

/// Samples `circuits` unitaries with `reuse` shots each and aggregates the
/// per-circuit estimates. Standard mode forces one shot per circuit.
ProtocolResult run_protocol(const QuantumState &rho, const Operator &o,
                            const EstimatorConfig &config, const QuantumState *sigma_prior,
                            Philox &rng);

}  // namespace crmshadow

#endif
