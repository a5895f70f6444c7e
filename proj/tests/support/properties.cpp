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


#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crmshadow/channels.hpp"
#include "crmshadow/char_function.hpp"
#include "crmshadow/clifford.hpp"
#include "crmshadow/variance.hpp"
#include "oracles.hpp"

namespace crmshadow::testing {

std::string PropertyOutcome::summary() const {
  std::ostringstream os;
  os << name << ": " << instances << " instances, " << checks << " inequality checks, "
     << violations << " violations (worst excess " << worst_excess << ")";
  if (stat_checks > 0) {
    os << ", " << stat_checks << " statistical checks, " << stat_failures
       << " beyond 4 sigma (worst |z| " << worst_z << ")";
  }
  return os.str();
}

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { out_.name = std::move(name); }

  void instance() { ++out_.instances; }

  /// lhs <= rhs up to a relative slack.
  void le(double lhs, double rhs, const char *what) {
    ++out_.checks;
    double excess = lhs - rhs;
    double tol = kPropertySlack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    out_.worst_excess = std::max(out_.worst_excess, excess);
    if (excess > tol) {
      fail(what, lhs, rhs);
    }
  }

  void eq(double lhs, double rhs, const char *what) {
    le(lhs, rhs, what);
    le(rhs, lhs, what);
  }

  /// |lhs - rhs| <= tol, for cross-checks between two numerical routes.
  void near(double lhs, double rhs, double tol, const char *what) {
    ++out_.checks;
    double excess = std::abs(lhs - rhs) - tol;
    out_.worst_excess = std::max(out_.worst_excess, excess);
    if (excess > 0.0) {
      fail(what, lhs, rhs);
    }
  }

  void z(double value, const char *what) {
    ++out_.stat_checks;
    out_.worst_z = std::max(out_.worst_z, std::abs(value));
    if (!(std::abs(value) <= kPropertyZGate)) {
      ++out_.stat_failures;
      note(std::string(what) + ": z = " + std::to_string(value));
    }
  }

  /// One-sided statistical bound: mean <= bound within the gate.
  void mean_le(const SampleMean &m, double bound, const char *what) {
    double zval = m.standard_error > 0.0 ? (m.mean - bound) / m.standard_error
                                         : (m.mean - bound > kPropertySlack ? 1e9 : 0.0);
    z(std::max(0.0, zval), what);
  }

  void mean_ge(const SampleMean &m, double bound, const char *what) {
    mean_le({-m.mean, m.standard_error}, -bound, what);
  }

  void mean_eq(const SampleMean &m, double value, const char *what) {
    double zval = m.standard_error > 0.0 ? (m.mean - value) / m.standard_error
                                         : (std::abs(m.mean - value) > kPropertySlack ? 1e9 : 0.0);
    z(zval, what);
  }

  PropertyOutcome take() { return std::move(out_); }

 private:
  void fail(const char *what, double lhs, double rhs) {
    ++out_.violations;
    std::ostringstream os;
    os.precision(12);
    os << what << ": " << lhs << " > " << rhs;
    note(os.str());
  }

  void note(const std::string &s) {
    if (out_.failures.size() < 10) {
      out_.failures.push_back(s);
    }
  }

  PropertyOutcome out_;
};

double log_uniform(Philox &rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform());
}

/// A random stabilizer state, C|0...0> for a uniformly random Clifford C.
Vector random_stabilizer_state(int n, Philox &rng) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  v(0) = 1.0;
  sample_clifford(n, rng).apply(v);
  return v;
}

Vector random_target(int n, Philox &rng, int kind) {
  switch (kind % 4) {
    case 0:
      return random_stabilizer_state(n, rng);
    case 1: {
      int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      Vector v = s_nk_state(n, k, std::numbers::pi / 4);
      sample_local_clifford(n, rng).apply(v);
      return v;
    }
    default:
      return haar_state(n, rng);
  }
}

/// A system state near or far from the pure target, cycling through noise
/// models and generic density matrices.
QuantumState random_system_state(const Vector &sigma, Philox &rng, int kind) {
  int n = static_cast<int>(std::log2(static_cast<double>(sigma.size())));
  int d = static_cast<int>(sigma.size());
  QuantumState target = QuantumState::pure(sigma);
  switch (kind % 8) {
    case 0:
      return dense_state(random_density(n, d, rng));
    case 1:
      return dense_state(random_density(n, 1 + static_cast<int>(rng.below(d)), rng));
    case 2:
      return apply_noise(random_pauli_channel(n, rng.uniform_open_closed(), rng), target);
    case 3:
      return apply_noise(random_coherent_rotation(n, rng), target);
    case 4:
      return apply_noise(Depolarizing{rng.uniform()}, target);
    case 5: {
      Matrix proj = Matrix::Identity(d, d) - sigma * sigma.adjoint();
      Matrix tau = proj * random_density(n, d, rng) * proj;
      tau /= tau.trace().real();
      double e = rng.uniform();
      return dense_state((1.0 - e) * sigma * sigma.adjoint() + e * tau);
    }
    case 6: {
      std::uint64_t idx = 1 + rng.below((std::uint64_t{1} << (2 * n)) - 1);
      return apply_noise(single_pauli_error(PauliOp::from_index(n, idx), rng.uniform()), target);
    }
    default: {
      double t = log_uniform(rng, 1e-4, 1.0);
      Matrix m = (1.0 - t) * sigma * sigma.adjoint() + t * random_density(n, d, rng);
      return dense_state(m);
    }
  }
}

int cycle_qubits(int i, int max_n) { return 1 + i % max_n; }

}  // namespace

PropertyOutcome check_norm_chain_pure_prior(std::uint64_t seed, int instances) {
  Tally t("norm chain, pure prior");
  Philox rng(seed, 1);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    double d = std::ldexp(1.0, n);
    Vector s = random_target(n, rng, i / 3);
    QuantumState sigma = QuantumState::pure(s);
    QuantumState rho = random_system_state(s, rng, i / 3);
    Operator delta = rho.as_operator() - sigma.as_operator();
    double eps = infidelity(rho, sigma);
    double n2 = trace_square(delta);
    double t1 = trace_norm(delta);
    double n1 = t1 * t1;
    t.instance();
    t.le(2.0 * eps * eps, 2.0 * n2, "2 eps^2 <= 2||D||_2^2");
    t.le(2.0 * n2, n1, "2||D||_2^2 <= ||D||_1^2");
    t.le(n1, std::min(4.0 * eps, 4.0 * n2), "||D||_1^2 <= min{4 eps, 4||D||_2^2}");
    t.le(n1, 4.0 * (d - 1.0) / d * n2, "||D||_1^2 <= 4(d-1)/d ||D||_2^2");
    t.le(d / (d - 1.0) * eps * eps, n2, "d/(d-1) eps^2 <= ||D||_2^2");
    t.le(n2, 2.0 * eps, "||D||_2^2 <= 2 eps");
    t.le(4.0 * eps * eps, n1, "4 eps^2 <= ||D||_1^2");
    t.le(n1, 4.0 * eps, "||D||_1^2 <= 4 eps");
    if (rho.is_pure()) {
      t.eq(n1, 4.0 * eps, "pure rho: ||D||_1^2 = 4 eps");
      t.eq(2.0 * n2, 4.0 * eps, "pure rho: 2||D||_2^2 = 4 eps");
    }
  }
  return t.take();
}

PropertyOutcome check_norm_chain_mixed_prior(std::uint64_t seed, int instances) {
  Tally t("norm chain, mixed prior");
  Philox rng(seed, 2);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    int d = 1 << n;
    Matrix sigma = random_density(n, 1 + static_cast<int>(rng.below(d)), rng);
    Matrix rho = i % 2 == 0 ? random_density(n, 1 + static_cast<int>(rng.below(d)), rng)
                            : Matrix((1.0 - 0.1 * rng.uniform()) * sigma +
                                     0.1 * rng.uniform() * random_density(n, d, rng));
    rho /= rho.trace().real();
    QuantumState r = dense_state(rho);
    QuantumState s = dense_state(sigma);
    double eps = infidelity(r, s);
    Operator delta = r.as_operator() - s.as_operator();
    double n2 = trace_square(delta);
    double t1 = trace_norm(delta);
    t.instance();
    t.le(2.0 * n2, t1 * t1, "2||D||_2^2 <= ||D||_1^2");
    t.le(t1 * t1, 4.0 * eps, "||D||_1^2 <= 4 eps");
    // Square roots of rank-deficient matrices lose about half the digits.
    t.near(eps, dense_infidelity(rho, sigma), 1e-6, "infidelity matches dense Uhlmann oracle");
  }
  return t.take();
}

PropertyOutcome check_pauli_haar_averages(std::uint64_t seed, int channels, int states) {
  Tally t("Haar averages under Pauli channels");
  Philox rng(seed, 3);
  for (int c = 0; c < channels; ++c) {
    int n = cycle_qubits(c, 3);
    double d = std::ldexp(1.0, n);
    PauliChannel channel = [&] {
      std::uint64_t count = std::uint64_t{1} << (2 * n);
      switch (c % 3) {
        case 0:
          return random_pauli_channel(n, rng.uniform_open_closed(), rng);
        case 1:
          return single_pauli_error(PauliOp::from_index(n, 1 + rng.below(count - 1)),
                                    rng.uniform_open_closed());
        default: {
          PauliChannel ch{n, {}};
          double left = rng.uniform_open_closed();
          for (int k = 0; k < 3; ++k) {
            double p = left * rng.uniform();
            left -= p;
            ch.probs.push_back({1 + rng.below(count - 1), p});
          }
          std::sort(ch.probs.begin(), ch.probs.end());
          std::vector<std::pair<std::uint64_t, double>> merged;
          for (const auto &pr : ch.probs) {
            if (!merged.empty() && merged.back().first == pr.first) {
              merged.back().second += pr.second;
            } else {
              merged.push_back(pr);
            }
          }
          ch.probs = merged;
          return ch;
        }
      }
    }();
    double p1 = 0.0;
    double p2 = 0.0;
    for (const auto &[idx, p] : channel.probs) {
      p1 += p;
      p2 += p * p;
    }
    double eps_bar = d / (d + 1.0) * p1;
    double exact_n2 = d / (d + 1.0) * (p1 * p1 + p2);
    std::vector<double> eps(states), eps_sq(states), n2(states), n1(states);
    for (int k = 0; k < states; ++k) {
      Vector s = haar_state(n, rng);
      QuantumState sigma = QuantumState::pure(s);
      QuantumState rho = apply_noise(channel, sigma);
      Operator delta = rho.as_operator() - sigma.as_operator();
      eps[k] = infidelity(rho, sigma);
      eps_sq[k] = eps[k] * eps[k];
      n2[k] = trace_square(delta);
      double t1 = trace_norm(delta);
      n1[k] = t1 * t1;
      t.instance();
      t.le(d / (d - 1.0) * eps_sq[k], n2[k], "d/(d-1) eps^2 <= ||D||_2^2");
      t.le(4.0 * eps_sq[k], n1[k], "4 eps^2 <= ||D||_1^2");
      t.le(eps[k], p1, "eps <= ||p||_1");
      t.le(t1, 2.0 * p1, "||D||_1 <= 2||p||_1");
    }
    SampleMean m_eps = sample_mean(eps);
    SampleMean m_eps_sq = sample_mean(eps_sq);
    SampleMean m_n2 = sample_mean(n2);
    SampleMean m_n1 = sample_mean(n1);
    t.mean_eq(m_eps, eps_bar, "mean eps = d/(d+1) ||p||_1");
    t.mean_eq(m_n2, exact_n2, "mean ||D||_2^2 = d/(d+1)(||p||_1^2 + ||p||_2^2)");
    t.mean_ge(m_eps_sq, eps_bar * eps_bar, "mean eps^2 >= eps_bar^2");
    t.mean_le(m_n2, 2.0 * (d + 1.0) / d * eps_bar * eps_bar, "mean ||D||_2^2 <= 2(d+1)/d eps_bar^2");
    t.mean_le(m_n1, 8.0 * (d * d - 1.0) / (d * d) * eps_bar * eps_bar,
              "mean ||D||_1^2 <= 8(d^2-1)/d^2 eps_bar^2");
    t.le(exact_n2, 2.0 * (d + 1.0) / d * eps_bar * eps_bar, "exact mean ||D||_2^2 bound");
  }
  return t.take();
}

PropertyOutcome check_variance_expectation_inequality(std::uint64_t seed, int instances) {
  Tally t("Tr(Q^2) + Tr(rho Q)^2 >= 2 Tr(rho Q^2)");
  Philox rng(seed, 4);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    int d = 1 << n;
    Matrix q = random_hermitian(n, rng);
    if (i % 4 == 1) {
      Vector v = haar_state(n, rng);
      q = v * v.adjoint();
    }
    Matrix rho = random_density(n, 1 + static_cast<int>(rng.below(d)), rng);
    double tq2 = (q * q).trace().real();
    double trq = (rho * q).trace().real();
    double trq2 = (rho * q * q).trace().real();
    t.instance();
    t.le(2.0 * trq2, tq2 + trq * trq, "2 Tr(rho Q^2) <= Tr(Q^2) + Tr(rho Q)^2");
  }
  return t.take();
}

PropertyOutcome check_char_norm_relations(std::uint64_t seed, int instances) {
  Tally t("characteristic-function norm relations");
  Philox rng(seed, 5);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    double d = std::ldexp(1.0, n);
    bool pure_prior = i % 2 == 0;
    Vector s = random_target(n, rng, i / 2);
    QuantumState sigma = pure_prior
                             ? QuantumState::pure(s)
                             : dense_state(random_density(n, 1 + static_cast<int>(rng.below(
                                                                     static_cast<std::uint64_t>(d))),
                                                          rng));
    QuantumState rho = random_system_state(s, rng, i / 2);
    Operator delta = rho.as_operator() - sigma.as_operator();
    bool fidelity_q = pure_prior && i % 4 == 0;
    Operator q = fidelity_q ? fidelity_observable(s) : Operator::dense(random_hermitian(n, rng));
    double eps = infidelity(rho, sigma);
    double n2 = trace_square(delta);
    double t1 = trace_norm(delta);
    double q2 = trace_square(q);
    CharFunction xi_d = char_function(delta);
    CharFunction xi_q = char_function(q);
    CharFunction cross = cross_char(xi_d, xi_q);
    CharFunction twisted = twisted_cross_char(xi_d, xi_q);
    double c2 = cross.norm2_squared();
    double tw2 = twisted.norm2_squared();
    double q4 = std::sqrt(xi_q.norm4_fourth());
    t.instance();
    t.eq(tw2, c2, "||twisted||_2^2 = ||cross||_2^2");
    t.le(char_dot(twisted, cross), tw2, "twisted . cross <= ||twisted||_2^2");
    double b1 = d * t1 * t1 * q2;
    double b2 = std::sqrt(d) * t1 * std::sqrt(n2) * q4;
    t.le(c2, std::min(b1, b2), "||Xi_{D,Q}||^2 <= min{d||D||_1^2||Q||^2, sqrt(d)||D||_1||D||_2||Xi_Q||_4^2}");
    t.le(std::min(b1, b2), 4.0 * d * eps * q2, "... <= 4 d eps ||Q||_2^2");
    if (pure_prior) {
      t.le(b1, std::min(4.0 * d * eps, 4.0 * (d - 1.0) * n2) * q2, "pure prior: first chain");
      t.le(b2, std::min(2.0 * std::sqrt(2.0 * d) * eps, 2.0 * std::sqrt(d - 1.0) * n2) * q4,
           "pure prior: second chain");
    }
    if (fidelity_q) {
      CharFunction xi_s = char_function(s);
      double m2 = stabilizer_renyi2(xi_s);
      double cs = cross_char(xi_d, xi_s).norm2_squared();
      t.eq(c2, cs, "Q = sigma - I/d: ||Xi_{D,Q}|| = ||Xi_{D,sigma}||");
      t.le(cs, d * n2, "||Xi_{D,sigma}||^2 <= d||D||_2^2");
      t.le(d * n2, 2.0 * d * eps, "d||D||_2^2 <= 2 d eps");
      double b3 = std::pow(2.0, -m2 / 2.0) * d * t1 * std::sqrt(n2);
      t.le(cs, b3, "||Xi_{D,sigma}||^2 <= 2^{-M2/2} d ||D||_1 ||D||_2");
      t.le(b3, std::pow(2.0, 1.0 - m2 / 2.0) * d * std::min(std::sqrt(2.0) * eps, n2),
           "2^{-M2/2} d ||D||_1 ||D||_2 <= 2^{1-M2/2} d min{sqrt2 eps, ||D||_2^2}");
      t.le(cs, std::pow(2.0, (3.0 - m2) / 2.0) * d * eps, "||Xi_{D,sigma}||^2 <= 2^{(3-M2)/2} d eps");
    }
  }
  return t.take();
}

PropertyOutcome check_anticommutation_bounds(std::uint64_t seed, int instances) {
  Tally t("anticommutation sums K vs eta");
  Philox rng(seed, 6);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 2);
    double d = std::ldexp(1.0, n);
    bool stabilizer = i % 4 == 0;
    Vector s = stabilizer ? random_stabilizer_state(n, rng) : random_target(n, rng, 1 + i);
    AnticommutationTables k(char_function(s));
    std::uint64_t count = std::uint64_t{1} << (2 * n);
    t.instance();
    for (std::uint64_t a = 1; a < count; ++a) {
      double ea = k.eta(a);
      t.le(k.k1(a), d * ea * ea / 2.0, "K(P) <= d eta^2 / 2");
      t.eq(k.k2(a, a), k.k1(a), "K(P, P) = K(P)");
      if (stabilizer) {
        t.eq(k.k1(a), d * ea * ea / 2.0, "stabilizer target saturates K(P) bound");
      }
      for (std::uint64_t b = 1; b < count; ++b) {
        t.le(k.k2(a, b), d * ea * k.eta(b) / 2.0, "K(P, Q) <= d eta(P) eta(Q) / 2");
      }
    }
  }
  return t.take();
}

PropertyOutcome check_pauli_cross_char_bound(std::uint64_t seed, int instances) {
  Tally t("cross characteristic bound under Pauli noise");
  Philox rng(seed, 7);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    double d = std::ldexp(1.0, n);
    std::uint64_t count = std::uint64_t{1} << (2 * n);
    bool stabilizer = i % 3 == 0;
    bool single = i % 2 == 0;
    Vector s = stabilizer ? random_stabilizer_state(n, rng) : random_target(n, rng, 1 + i);
    PauliChannel channel =
        single ? single_pauli_error(PauliOp::from_index(n, 1 + rng.below(count - 1)),
                                    rng.uniform_open_closed())
               : random_pauli_channel(n, log_uniform(rng, 1e-4, 1.0), rng);
    QuantumState sigma = QuantumState::pure(s);
    QuantumState rho = apply_noise(channel, sigma);
    Operator delta = rho.as_operator() - sigma.as_operator();
    double eps = infidelity(rho, sigma);
    CharFunction xi_s = char_function(s);
    CharFunction xi_d = char_function(delta);
    double cs = cross_char(xi_d, xi_s).norm2_squared();
    AnticommutationTables k(xi_s);
    double eps_k = 0.0;
    double cs_k = 0.0;
    for (const auto &[a, pa] : channel.probs) {
      eps_k += pa * k.eta(a);
      for (const auto &[b, pb] : channel.probs) {
        cs_k += 4.0 * pa * pb * k.k2(a, b);
      }
    }
    t.instance();
    t.eq(eps, eps_k, "eps = sum_i p_i eta_i");
    t.eq(cs, cs_k, "||Xi_{D,sigma}||^2 = 4 sum p_i p_j K(P_i, P_j)");
    t.le(cs, 2.0 * d * eps * eps, "||Xi_{D,sigma}||^2 <= 2 d eps^2");
    if (stabilizer && single) {
      t.eq(cs, 2.0 * d * eps * eps, "stabilizer target with one error saturates");
    }
    Operator o = fidelity_observable(s);
    CharFunction xi_o = char_function(o);
    double vd = v_star_clifford(xi_o, xi_d);
    t.le(vd, 2.0 / d * cross_char(xi_d, xi_o).norm2_squared(), "V_*(O, D) <= (2/d)||Xi_{D,O}||^2");
    t.le(vd, 4.0 * eps * eps, "Clifford V_*(O, D) <= 4 eps^2");
  }
  return t.take();
}

PropertyOutcome check_purity_range(std::uint64_t seed, int instances) {
  Tally t("purity range for a pure prior");
  Philox rng(seed, 8);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    double d = std::ldexp(1.0, n);
    Vector s = random_target(n, rng, i);
    QuantumState rho = random_system_state(s, rng, i / 3);
    double eps = infidelity(rho, QuantumState::pure(s));
    double purity = rho.purity();
    t.instance();
    t.le((1.0 - eps) * (1.0 - eps) + eps * eps / (d - 1.0), purity,
         "(1-eps)^2 + eps^2/(d-1) <= Tr rho^2");
    t.le(purity, 1.0, "Tr rho^2 <= 1");
    Matrix r = rho.density_matrix();
    Matrix ps = s * s.adjoint();
    if ((r * ps - ps * r).norm() < 1e-12) {
      t.le(purity, 1.0 - 2.0 * eps + 2.0 * eps * eps, "commuting: Tr rho^2 <= 1 - 2eps + 2eps^2");
    }
    if (i % 8 == 4) {
      double p = rng.uniform();
      QuantumState dep = apply_noise(Depolarizing{p}, QuantumState::pure(s));
      double e = infidelity(dep, QuantumState::pure(s));
      t.eq((1.0 - e) * (1.0 - e) + e * e / (d - 1.0), dep.purity(),
           "depolarized target saturates the lower bound");
    }
  }
  return t.take();
}

PropertyOutcome check_variance_bounds(std::uint64_t seed, int instances) {
  Tally t("circuit variance bounds");
  Philox rng(seed, 9);
  for (int i = 0; i < instances; ++i) {
    int n = cycle_qubits(i, 3);
    double d = std::ldexp(1.0, n);
    Vector s = random_target(n, rng, i);
    QuantumState sigma = QuantumState::pure(s);
    QuantumState rho = random_system_state(s, rng, i / 3);
    bool fidelity = i % 2 == 0;
    Operator o = fidelity ? fidelity_observable(s)
                          : Operator::dense(random_traceless_hermitian(n, rng));
    Operator delta = rho.as_operator() - sigma.as_operator();
    double eps = infidelity(rho, sigma);
    double n2 = trace_square(delta);
    double t1 = trace_norm(delta);
    double o2 = trace_square(o);
    t.instance();

    VarianceReport cl = compute_variances(Ensemble::Clifford, o, rho, sigma);
    VarianceReport fd = compute_variances(Ensemble::FourDesign, o, rho, sigma);
    VarianceReport lp = compute_variances(Ensemble::LocalPauli, o, rho, sigma);
    for (const VarianceReport *r : {&cl, &fd, &lp}) {
      t.le(0.0, r->v_star_delta + kPropertySlack, "V_*(O, D) >= 0");
      t.le(0.0, r->v_star_rho + kPropertySlack, "V_*(O, rho) >= 0");
      t.le(r->v_star_rho, r->v, "V_*(O, rho) <= V(O, rho)");
    }
    t.le(cl.v, 2.0 * o2, "3-design V(O, rho) <= 2||O||_2^2");
    CharFunction xi_d = char_function(delta);
    double c2 = cross_char(xi_d, char_function(o)).norm2_squared();
    t.le(cl.v_star_delta, 2.0 / d * c2, "Clifford V_* <= (2/d)||Xi_{D,O}||^2");
    t.le(2.0 / d * c2, 2.0 * t1 * t1 * o2, "(2/d)||Xi|| <= 2||D||_1^2||O||_2^2");
    t.le(2.0 * t1 * t1 * o2, 8.0 * eps * o2, "2||D||_1^2||O||^2 <= 8 eps ||O||^2");
    t.le(n2 * o2 / (d + 2.0), fd.v_star_delta, "4-design V_* >= ||D||_2^2||O||_2^2/(d+2)");
    t.le(fd.v_star_delta, 4.0 * n2 * o2 / d, "4-design V_* <= 4||D||_2^2||O||_2^2/d");
    t.le(4.0 * n2 * o2 / d, 8.0 * eps * o2 / d, "4||D||_2^2||O||^2/d <= 8 eps ||O||^2/d");
    for (double r : {1.0, 3.0, 100.0}) {
      t.le(cl.v_r_crm(r), cl.v_star_delta + 2.0 * o2 / r, "Clifford V_R <= V_* + 2||O||^2/R");
      t.le(fd.v_r_crm(r), fd.v_star_delta + 2.0 * o2 / r, "4-design V_R <= V_* + 2||O||^2/R");
    }
    if (fidelity) {
      double f = 1.0 - eps;
      t.eq(cl.v, -f * f + d * (2.0 * f + 1.0) / (d + 2.0), "fidelity V = -F^2 + d(2F+1)/(d+2)");
      t.le(cl.v, 2.0 - eps * eps, "fidelity V <= 2 - eps^2");
      double m2 = stabilizer_renyi2(s);
      t.le(cl.v_star_delta, std::pow(2.0, 2.0 - m2 / 2.0) * std::min(std::sqrt(2.0) * eps, n2),
           "fidelity Clifford V_* <= 2^{2-M2/2} min{sqrt2 eps, ||D||_2^2}");
    }
  }
  return t.take();
}

std::vector<PropertyOutcome> run_all_property_suites(std::uint64_t seed, int instances) {
  std::vector<PropertyOutcome> out;
  out.push_back(check_norm_chain_pure_prior(seed, instances));
  out.push_back(check_norm_chain_mixed_prior(seed, instances));
  out.push_back(check_pauli_haar_averages(seed, 24, std::max(2000, instances)));
  out.push_back(check_variance_expectation_inequality(seed, instances));
  out.push_back(check_char_norm_relations(seed, instances));
  out.push_back(check_anticommutation_bounds(seed, instances));
  out.push_back(check_pauli_cross_char_bound(seed, instances));
  out.push_back(check_purity_range(seed, instances));
  out.push_back(check_variance_bounds(seed, instances));
  return out;
}

}  // namespace crmshadow::testing
