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


#include "crmshadow/variance.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "crmshadow/transforms.hpp"

namespace crmshadow {

namespace {

double as_d(int n) { return static_cast<double>(dim_of(n)); }

void check_traceless(const Operator &o) {
  double scale = std::max(1.0, std::sqrt(std::abs(trace_square(o))));
  if (std::abs(o.trace()) > 1e-9 * scale) {
    throw std::invalid_argument("observable must be traceless");
  }
}

void check_pair(const CharFunction &a, const CharFunction &b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("characteristic functions have different qubit counts");
  }
}

double char_trace_product(const CharFunction &a, const CharFunction &b) {
  return char_dot(a, b) / as_d(a.num_qubits());
}

/// Tr(rho O^2) without forming O^2.
double trace_rho_o_squared(const Operator &o, const Operator &rho) {
  if (rho.is_identity_plus_low_rank() && rho.pauli_terms().empty()) {
    double acc = rho.identity_coefficient() * trace_square(o);
    for (const RankOneTerm &t : rho.rank_one_terms()) {
      acc += t.weight * o.apply(t.vec).squaredNorm();
    }
    return acc;
  }
  Matrix m = o.apply(rho.to_dense());
  return o.apply(m).trace().real();
}

/// Traces entering the 4-design circuit variance.
struct FourTraces {
  double tr_to;
  double tr_t2o2;
  double tr_t2;
  double tr_o2;
  double tr_toto;
};

FourTraces four_traces(const Operator &o, const Operator &tau, double identity_shift) {
  FourTraces out{};
  out.tr_o2 = trace_square(o);
  double tr_o = o.trace();
  double d = static_cast<double>(o.dim());
  if (tau.is_identity_plus_low_rank()) {
    double c = tau.identity_coefficient() + identity_shift;
    const auto &terms = tau.rank_one_terms();
    std::size_t r = terms.size();
    std::vector<Vector> u(r);
    for (std::size_t k = 0; k < r; ++k) {
      u[k] = o.apply(terms[k].vec);
    }
    out.tr_to = c * tr_o;
    out.tr_t2o2 = c * c * out.tr_o2;
    out.tr_toto = c * c * out.tr_o2;
    out.tr_t2 = c * c * d;
    for (std::size_t k = 0; k < r; ++k) {
      double wk = terms[k].weight;
      double uk2 = u[k].squaredNorm();
      out.tr_to += wk * terms[k].vec.dot(u[k]).real();
      out.tr_t2o2 += 2.0 * c * wk * uk2;
      out.tr_toto += 2.0 * c * wk * uk2;
      out.tr_t2 += 2.0 * c * wk * terms[k].vec.squaredNorm();
      for (std::size_t l = 0; l < r; ++l) {
        double wl = terms[l].weight;
        Complex vkvl = terms[k].vec.dot(terms[l].vec);
        out.tr_t2o2 += wk * wl * (vkvl * u[l].dot(u[k])).real();
        out.tr_toto += wk * wl * (u[k].dot(terms[l].vec) * u[l].dot(terms[k].vec)).real();
        out.tr_t2 += wk * wl * std::norm(vkvl);
      }
    }
    return out;
  }
  Matrix t = tau.to_dense();
  t.diagonal().array() += identity_shift;
  Matrix m = o.apply(t);
  out.tr_to = m.trace().real();
  out.tr_t2o2 = m.squaredNorm();
  out.tr_toto = (m.cwiseProduct(m.transpose())).sum().real();
  out.tr_t2 = t.squaredNorm();
  return out;
}

double four_design_from_traces(double d, const FourTraces &t) {
  double den = d * (d + 2.0) * (d + 3.0);
  return (d * d + 3.0 * d + 4.0) / den * t.tr_to * t.tr_to +
         2.0 * (d + 1.0) * (d + 1.0) / den * t.tr_t2o2 +
         (d + 1.0) / (d * (d + 3.0)) * t.tr_t2 * t.tr_o2 - 2.0 * (d + 1.0) / den * t.tr_toto;
}

std::vector<double> pauli_product(const CharFunction &xi_o, const CharFunction &xi_tau) {
  std::vector<double> f(xi_o.size());
  for (std::size_t i = 1; i < f.size(); ++i) {
    f[i] = xi_o[i] * xi_tau[i];
  }
  return f;
}

std::vector<double> powers_of_three(int n) {
  std::vector<double> p(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    p[k] = 3.0 * p[k - 1];
  }
  return p;
}

std::uint64_t full_mask(int n) {
  return n >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * n)) - 1;
}

/// Visits every Q locally commuting with P; count 4^{n - w} 2^w.
template <typename F>
void for_each_locally_commuting(std::uint64_t p, int n, F &&visit) {
  std::uint64_t support = index_support_mask(p);
  std::uint64_t free_bits = full_mask(n) & ~(support | (support << 1));
  std::uint64_t f = free_bits;
  while (true) {
    std::uint64_t s = support;
    while (true) {
      visit(f | (p & (s | (s << 1))), std::popcount(s));
      if (s == 0) {
        break;
      }
      s = (s - 1) & support;
    }
    if (f == 0) {
      break;
    }
    f = (f - 1) & free_bits;
  }
}

}  // namespace

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::Clifford:
      return "clifford";
    case Ensemble::FourDesign:
      return "4design";
    case Ensemble::LocalPauli:
      return "pauli";
  }
  return "unknown";
}

Ensemble parse_ensemble(const std::string &name) {
  if (name == "clifford") {
    return Ensemble::Clifford;
  }
  if (name == "4design") {
    return Ensemble::FourDesign;
  }
  if (name == "pauli") {
    return Ensemble::LocalPauli;
  }
  throw std::invalid_argument("unknown ensemble '" + name + "'");
}

std::string to_string(VarianceMethod m) {
  switch (m) {
    case VarianceMethod::ExactSum:
      return "exact_sum";
    case VarianceMethod::ClosedFormDepolarizing:
      return "closed_form_depolarizing";
    case VarianceMethod::ClosedFormPauliObservable:
      return "closed_form_pauli_observable";
    case VarianceMethod::BoundOnly:
      return "bound_only";
    case VarianceMethod::Unavailable:
      return "unavailable";
  }
  return "unknown";
}

double VarianceReport::v_r_crm(double reuse) const {
  if (!(reuse >= 1.0)) {
    throw std::invalid_argument("reuse count R must be at least 1");
  }
  if (std::isinf(reuse)) {
    return v_star_delta;
  }
  return v_star_delta + (v - v_star_rho) / reuse;
}

double VarianceReport::v_r_thrifty(double reuse) const {
  if (!(reuse >= 1.0)) {
    throw std::invalid_argument("reuse count R must be at least 1");
  }
  if (std::isinf(reuse)) {
    return v_star_rho;
  }
  return v_star_rho + (v - v_star_rho) / reuse;
}

double v_standard_3design(const Operator &o, const QuantumState &rho) {
  check_traceless(o);
  double d = static_cast<double>(o.dim());
  double tr_rho_o = rho.expectation(o);
  double tr_rho_o2 = rho.is_pure() ? o.apply(rho.vector()).squaredNorm()
                                   : trace_rho_o_squared(o, rho.as_operator());
  return (d + 1.0) / (d + 2.0) * (trace_square(o) + 2.0 * tr_rho_o2) - tr_rho_o * tr_rho_o;
}

double v_star_clifford(const CharFunction &xi_o, const CharFunction &xi_tau) {
  check_pair(xi_o, xi_tau);
  double d = as_d(xi_o.num_qubits());
  CharFunction g = cross_char(xi_tau, xi_o);
  CharFunction twisted = twisted_cross_char(xi_tau, xi_o);
  double v_circ = (d + 1.0) / (d * (d + 2.0)) * (g.norm2_squared() + char_dot(twisted, g));
  double tr = char_trace_product(xi_o, xi_tau);
  return v_circ - tr * tr / (d + 2.0);
}

double v_star_clifford(const Operator &o, const Operator &tau) {
  check_traceless(o);
  return v_star_clifford(char_function(o), char_function(tau));
}

double v_star_clifford_pairwise(const CharFunction &xi_o, const CharFunction &xi_tau) {
  check_pair(xi_o, xi_tau);
  double d = as_d(xi_o.num_qubits());
  std::vector<double> g = pauli_product(xi_o, xi_tau);
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 1; i < g.size(); ++i) {
    if (g[i] != 0.0) {
      support.push_back(i);
    }
  }
  double off = 0.0;
  double diag = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    double ga = g[support[a]];
    diag += ga * ga;
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      if (index_commutes(support[a], support[b])) {
        off += ga * g[support[b]];
      }
    }
  }
  double tr = char_trace_product(xi_o, xi_tau);
  return 4.0 * (d + 1.0) / (d * d * (d + 2.0)) * off + (d + 1.0) / (d * d) * diag - tr * tr;
}

VarianceReport clifford_depolarizing_report(int n, double p, double m2) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
  }
  double d = std::ldexp(1.0, n);
  double core = (std::exp2(1.0 - m2) * (d + 1.0) - 4.0) / (d + 2.0);
  VarianceReport r;
  r.ensemble = Ensemble::Clifford;
  r.method = VarianceMethod::ClosedFormDepolarizing;
  double s = (d - 1.0) / d;
  r.v = s * s * (-p * p + 4.0 * d * p / ((d - 1.0) * (d + 2.0)) +
                 (d * d - 3.0 * d - 2.0) / ((d - 1.0) * (d + 2.0))) +
        (d * d - 1.0) / (d * d);
  r.v_star_rho = (1.0 - p) * (1.0 - p) * core;
  r.v_star_delta = p * p * core;
  return r;
}

double v_star_4design_traceless(const Operator &o, const Operator &delta) {
  check_traceless(o);
  double d = static_cast<double>(o.dim());
  double tr = delta.trace();
  if (std::abs(tr) > 1e-9) {
    throw std::invalid_argument("v_star_4design_traceless: deviation must be traceless");
  }
  return four_design_from_traces(d, four_traces(o, delta, 0.0));
}

double v_star_4design(const Operator &o, const Operator &tau) {
  check_traceless(o);
  double d = static_cast<double>(o.dim());
  return four_design_from_traces(d, four_traces(o, tau, -tau.trace() / d));
}

VarianceReport four_design_depolarizing_report(int n, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
  }
  double d = std::ldexp(1.0, n);
  double tr_o2 = (d - 1.0) / d;
  double tr_o4 = (d - 1.0) * ((d - 1.0) * (d - 1.0) * (d - 1.0) + 1.0) / (d * d * d * d);
  FourTraces unit{tr_o2, tr_o4, tr_o2, tr_o2, tr_o4};
  double bracket = four_design_from_traces(d, unit);
  VarianceReport r;
  r.ensemble = Ensemble::FourDesign;
  r.method = VarianceMethod::ClosedFormDepolarizing;
  double tr_rho_o = (1.0 - p) * tr_o2;
  double tr_rho_o2 = (1.0 - p) * tr_o2 * tr_o2 + p * tr_o2 / d;
  r.v = (d + 1.0) / (d + 2.0) * (tr_o2 + 2.0 * tr_rho_o2) - tr_rho_o * tr_rho_o;
  r.v_star_rho = (1.0 - p) * (1.0 - p) * bracket;
  r.v_star_delta = p * p * bracket;
  return r;
}

double v_star_pauli(const CharFunction &xi_o, const CharFunction &xi_tau) {
  check_pair(xi_o, xi_tau);
  int n = xi_o.num_qubits();
  double d = as_d(n);
  std::vector<double> f = pauli_product(xi_o, xi_tau);
  std::vector<double> g = f;
  local_commutation_transform(std::span<double>(g), n);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i] * g[i];
  }
  double tr = char_trace_product(xi_o, xi_tau);
  return acc / (d * d) - tr * tr;
}

double v_star_pauli_pairwise(const CharFunction &xi_o, const CharFunction &xi_tau) {
  check_pair(xi_o, xi_tau);
  int n = xi_o.num_qubits();
  double d = as_d(n);
  std::vector<double> f = pauli_product(xi_o, xi_tau);
  std::vector<double> pow3 = powers_of_three(n);
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 1; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      support.push_back(i);
    }
  }
  double acc = 0.0;
  for (std::uint64_t a : support) {
    for (std::uint64_t b : support) {
      if (index_locally_commutes(a, b)) {
        acc += pow3[index_overlap_weight(a, b)] * f[a] * f[b];
      }
    }
  }
  double tr = char_trace_product(xi_o, xi_tau);
  return acc / (d * d) - tr * tr;
}

double v_pauli_pair_count(const CharFunction &xi_o) {
  int n = xi_o.num_qubits();
  double nnz = 0.0;
  double enumerated = 0.0;
  for (std::uint64_t i = 1; i < xi_o.size(); ++i) {
    if (xi_o[i] != 0.0) {
      nnz += 1.0;
      int w = index_weight(i);
      enumerated += std::ldexp(1.0, 2 * (n - w) + w);
    }
  }
  return std::min(nnz * nnz, enumerated);
}

double v_pauli(const CharFunction &xi_o, const CharFunction &xi_rho, double pair_budget) {
  check_pair(xi_o, xi_rho);
  int n = xi_o.num_qubits();
  double d = as_d(n);
  double pairs = v_pauli_pair_count(xi_o);
  if (pairs > pair_budget) {
    throw BudgetError("v_pauli: " + std::to_string(pairs) + " Pauli pairs exceeds budget");
  }
  std::vector<double> pow3 = powers_of_three(n);
  std::vector<std::uint64_t> support;
  double enumerated = 0.0;
  for (std::uint64_t i = 1; i < xi_o.size(); ++i) {
    if (xi_o[i] != 0.0) {
      support.push_back(i);
      int w = index_weight(i);
      enumerated += std::ldexp(1.0, 2 * (n - w) + w);
    }
  }
  double nnz = static_cast<double>(support.size());
  double acc = 0.0;
  if (nnz * nnz <= enumerated) {
    for (std::uint64_t a : support) {
      double row = 0.0;
      for (std::uint64_t b : support) {
        if (index_locally_commutes(a, b)) {
          row += pow3[index_overlap_weight(a, b)] * xi_o[b] * xi_rho[a ^ b];
        }
      }
      acc += xi_o[a] * row;
    }
  } else {
    for (std::uint64_t a : support) {
      double row = 0.0;
      for_each_locally_commuting(a, n, [&](std::uint64_t b, int overlap) {
        double ob = xi_o[b];
        if (ob != 0.0 && b != 0) {
          row += pow3[overlap] * ob * xi_rho[a ^ b];
        }
      });
      acc += xi_o[a] * row;
    }
  }
  double tr = char_trace_product(xi_o, xi_rho);
  return acc / (d * d) - tr * tr;
}

double v_pauli_abs_cap(const CharFunction &xi_o, double tr_rho_o) {
  int n = xi_o.num_qubits();
  double d = as_d(n);
  std::vector<double> f(xi_o.size());
  for (std::size_t i = 1; i < f.size(); ++i) {
    f[i] = std::abs(xi_o[i]);
  }
  std::vector<double> g = f;
  local_commutation_transform(std::span<double>(g), n);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i] * g[i];
  }
  return acc / (d * d) - tr_rho_o * tr_rho_o;
}

VarianceReport pauli_observable_report(Ensemble ensemble, int n, int weight, double coeff,
                                       double tr_rho_o, double tr_sigma_o) {
  if (weight < 1 || weight > n) {
    throw std::invalid_argument("Pauli observable weight must lie in [1, n]");
  }
  double factor = 0.0;
  double star = 0.0;
  if (ensemble == Ensemble::Clifford) {
    double d = std::ldexp(1.0, n);
    factor = d + 1.0;
    star = d;
  } else if (ensemble == Ensemble::LocalPauli) {
    factor = std::pow(3.0, weight);
    star = factor - 1.0;
  } else {
    throw std::invalid_argument("pauli_observable_report: no closed form for this ensemble");
  }
  double tr_delta_o = tr_rho_o - tr_sigma_o;
  VarianceReport r;
  r.ensemble = ensemble;
  r.method = VarianceMethod::ClosedFormPauliObservable;
  r.v = coeff * coeff * factor - tr_rho_o * tr_rho_o;
  r.v_star_rho = star * tr_rho_o * tr_rho_o;
  r.v_star_delta = star * tr_delta_o * tr_delta_o;
  return r;
}

DesignAverages v_avg_2design_ensemble(int n, double o_norm2_sq, double rho_purity,
                                      double delta_norm2_sq) {
  if (!(o_norm2_sq > 0.0)) {
    throw std::invalid_argument("observable norm must be positive");
  }
  double d = std::ldexp(1.0, n);
  double den = d * d - 1.0;
  return {(1.0 + (d - rho_purity) / den) * o_norm2_sq, (d * rho_purity - 1.0) / den * o_norm2_sq,
          d * delta_norm2_sq * o_norm2_sq / den};
}

VarianceReport compute_variances(Ensemble ensemble, const Operator &o, const QuantumState &rho,
                                 const QuantumState &sigma, const VarianceOptions &options) {
  check_traceless(o);
  int n = o.num_qubits();
  if (rho.num_qubits() != n || sigma.num_qubits() != n) {
    throw std::invalid_argument("compute_variances: qubit counts differ");
  }
  Operator rho_op = rho.as_operator();
  Operator delta = rho_op - sigma.as_operator();
  VarianceReport r;
  r.ensemble = ensemble;
  r.method = VarianceMethod::ExactSum;

  if (ensemble == Ensemble::FourDesign) {
    r.v = v_standard_3design(o, rho);
    r.v_star_rho = v_star_4design(o, rho_op);
    r.v_star_delta = v_star_4design(o, delta);
    return r;
  }

  if (n > kDenseQubitBudget) {
    if (ensemble == Ensemble::Clifford && options.allow_bounds) {
      double t1 = trace_norm(delta);
      r.v = v_standard_3design(o, rho);
      r.v_star_rho = r.v;
      r.v_star_delta = 2.0 * t1 * t1 * trace_square(o);
      r.method = VarianceMethod::BoundOnly;
      r.bound_source = "clifford_trace_norm";
      return r;
    }
    require_qubits(n, kDenseQubitBudget, "compute_variances");
  }

  CharFunction xi_o = char_function(o);
  CharFunction xi_rho = char_function(rho_op);
  CharFunction xi_delta = char_function(delta);
  if (ensemble == Ensemble::Clifford) {
    r.v = v_standard_3design(o, rho);
    r.v_star_rho = v_star_clifford(xi_o, xi_rho);
    r.v_star_delta = v_star_clifford(xi_o, xi_delta);
    return r;
  }

  r.v_star_rho = v_star_pauli(xi_o, xi_rho);
  r.v_star_delta = v_star_pauli(xi_o, xi_delta);
  if (v_pauli_pair_count(xi_o) <= options.pair_budget) {
    r.v = v_pauli(xi_o, xi_rho, options.pair_budget);
  } else if (options.allow_bounds) {
    r.v = v_pauli_abs_cap(xi_o, char_trace_product(xi_o, xi_rho));
    r.method = VarianceMethod::BoundOnly;
    r.bound_source = "pauli_abs_cap";
  } else {
    throw BudgetError("compute_variances: local-Pauli pair sum exceeds budget");
  }
  return r;
}

}  // namespace crmshadow
