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


#ifndef CRMSHADOW_VARIANCE_HPP
#define CRMSHADOW_VARIANCE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "crmshadow/char_function.hpp"
#include "crmshadow/states.hpp"

namespace crmshadow {

enum class Ensemble : std::uint8_t { Clifford, FourDesign, LocalPauli };

std::string to_string(Ensemble e);
/// Accepts "clifford", "4design" and "pauli".
Ensemble parse_ensemble(const std::string &name);

enum class VarianceMethod : std::uint8_t {
  ExactSum,
  ClosedFormDepolarizing,
  ClosedFormPauliObservable,
  BoundOnly,
  Unavailable,
};

std::string to_string(VarianceMethod m);

/// The three variances of a single-circuit estimator,
///   V      = V(O, rho)       shot noise of one snapshot,
///   V*rho  = V_*(O, rho)     circuit noise of the thrifty estimator,
///   V*Delta= V_*(O, Delta)   circuit noise of the prior-corrected estimator.
struct VarianceReport {
  Ensemble ensemble = Ensemble::Clifford;
  double v = 0.0;
  double v_star_rho = 0.0;
  double v_star_delta = 0.0;
  VarianceMethod method = VarianceMethod::ExactSum;
  /// Names the inequality used when method is BoundOnly.
  std::string bound_source;

  /// V*Delta + (V - V*rho) / R. R may be +infinity.
  double v_r_crm(double reuse) const;
  /// V*rho + (V - V*rho) / R.
  double v_r_thrifty(double reuse) const;
};

struct VarianceOptions {
  /// Upper limit on Pauli pairs visited by the local-Pauli V(O, rho) sum.
  double pair_budget = 1e8;
  /// When false, exceeding a budget throws BudgetError instead of returning
  /// a bound.
  bool allow_bounds = true;
};

/// V(O, rho) for any unitary 3-design:
/// (d + 1)/(d + 2) [Tr O^2 + 2 Tr(rho O^2)] - Tr(rho O)^2.
double v_standard_3design(const Operator &o, const QuantumState &rho);

/// @name Clifford ensemble
/// @{
/// V_*(O, tau) = V_circ(O, tau) - Tr(tau O)^2 / (d + 2) with
/// V_circ = (d + 1)/(d (d + 2)) (||Xi_{tau,O}||^2 + sum_P Tr(tau P O P) Xi_{tau,O}(P)).
/// tau need not be traceless.
double v_star_clifford(const CharFunction &xi_o, const CharFunction &xi_tau);
double v_star_clifford(const Operator &o, const Operator &tau);
/// Commuting-pair double sum over the supports of Xi_O and Xi_tau.
double v_star_clifford_pairwise(const CharFunction &xi_o, const CharFunction &xi_tau);
/// V, V*rho and V*Delta for sigma pure, rho = (1 - p) sigma + p I/d and
/// O = sigma - I/d, valid at any n given M_2(sigma).
VarianceReport clifford_depolarizing_report(int n, double p, double m2);
/// @}

/// @name Unitary 4-designs
/// @{
/// Circuit variance for a traceless deviation Delta.
double v_star_4design_traceless(const Operator &o, const Operator &delta);
/// Circuit variance for an arbitrary tau; only tau - Tr(tau) I/d contributes.
double v_star_4design(const Operator &o, const Operator &tau);
/// V, V*rho and V*Delta for the depolarized fidelity setting.
VarianceReport four_design_depolarizing_report(int n, double p);
/// @}

/// @name Local Pauli ensemble
/// @{
/// sum over locally commuting (P, Q) of 3^{|P cap Q|}/d^2 Xi_O(P) Xi_O(Q) Xi_tau(P) Xi_tau(Q)
/// minus Tr(tau O)^2.
double v_star_pauli(const CharFunction &xi_o, const CharFunction &xi_tau);
double v_star_pauli_pairwise(const CharFunction &xi_o, const CharFunction &xi_tau);
/// sum over locally commuting (P, Q) of 3^{|P cap Q|}/d^2 Xi_O(P) Xi_O(Q) Xi_rho(PQ)
/// minus Tr(rho O)^2. Throws BudgetError when more than pair_budget pairs
/// would be visited.
double v_pauli(const CharFunction &xi_o, const CharFunction &xi_rho, double pair_budget = 1e8);
/// Number of pairs v_pauli visits.
double v_pauli_pair_count(const CharFunction &xi_o);
/// Upper bound obtained by replacing Xi_rho(PQ) with 1.
double v_pauli_abs_cap(const CharFunction &xi_o, double tr_rho_o);
/// @}

/// Closed forms for O = c P with P a Pauli of weight w. Clifford:
/// V = c^2 (d + 1) - Tr(rho O)^2, V_*(O, tau) = d Tr(tau O)^2. Local Pauli:
/// V = c^2 3^w - Tr(rho O)^2, V_*(O, tau) = (3^w - 1) Tr(tau O)^2.
VarianceReport pauli_observable_report(Ensemble ensemble, int n, int weight, double coeff,
                                       double tr_rho_o, double tr_sigma_o);

/// Averages over O -> U O U^dagger with U from a unitary 2-design, for a
/// 3-design measurement ensemble.
struct DesignAverages {
  double v;
  double v_star_rho;
  double v_star_delta;
};
DesignAverages v_avg_2design_ensemble(int n, double o_norm2_sq, double rho_purity,
                                      double delta_norm2_sq);

/// Exact variances for an ensemble. Falls back to a bound (or throws when
/// options.allow_bounds is false) when exact evaluation exceeds a budget.
VarianceReport compute_variances(Ensemble ensemble, const Operator &o, const QuantumState &rho,
                                 const QuantumState &sigma, const VarianceOptions &options = {});

}  // namespace crmshadow

#endif
