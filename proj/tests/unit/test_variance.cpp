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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "crmshadow/channels.hpp"
#include "crmshadow/char_function.hpp"
#include "crmshadow/clifford.hpp"
#include "crmshadow/variance.hpp"
#include "oracles.hpp"

namespace crmshadow {
namespace {

using namespace crmshadow::testing;

Vector zero_state(int n) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  v(0) = 1.0;
  return v;
}

TEST(Variance, ZeroDeviationGivesZero) {
  Philox rng(71, 0);
  Vector s = haar_state(2, rng);
  QuantumState sigma = QuantumState::pure(s);
  Operator o = fidelity_observable(s);
  for (Ensemble e : {Ensemble::Clifford, Ensemble::FourDesign, Ensemble::LocalPauli}) {
    VarianceReport r = compute_variances(e, o, sigma, sigma);
    EXPECT_NEAR(r.v_star_delta, 0.0, 1e-14) << to_string(e);
    EXPECT_NEAR(r.v_r_crm(std::numeric_limits<double>::infinity()), 0.0, 1e-14);
  }
}

TEST(Variance, SingleQubitDepolarizingExample) {
  Vector z = zero_state(1);
  QuantumState sigma = QuantumState::pure(z);
  Operator o = fidelity_observable(z);
  for (double p : {0.01, 0.2, 0.9}) {
    QuantumState rho = apply_noise(Depolarizing{p}, sigma);
    VarianceReport r = compute_variances(Ensemble::Clifford, o, rho, sigma);
    EXPECT_NEAR(r.v_star_delta, p * p / 2.0, 1e-14);
    VarianceReport closed = clifford_depolarizing_report(1, p, 0.0);
    EXPECT_NEAR(closed.v_star_delta, p * p / 2.0, 1e-14);
    EXPECT_NEAR(closed.v, r.v, 1e-13);
    EXPECT_NEAR(closed.v_star_rho, r.v_star_rho, 1e-13);
  }
}

TEST(Variance, ThreeDesignFidelityVariance) {
  Vector z = zero_state(1);
  Operator o = fidelity_observable(z);
  EXPECT_NEAR(v_standard_3design(o, QuantumState::pure(z)), 0.5, 1e-15);
  Philox rng(72, 0);
  for (int n = 1; n <= 4; ++n) {
    double d = std::ldexp(1.0, n);
    Vector s = haar_state(n, rng);
    QuantumState rho = apply_noise(random_pauli_channel(n, 0.3, rng), QuantumState::pure(s));
    double f = 1.0 - infidelity(rho, QuantumState::pure(s));
    EXPECT_NEAR(v_standard_3design(fidelity_observable(s), rho),
                -f * f + d * (2.0 * f + 1.0) / (d + 2.0), 1e-12);
  }
  EXPECT_THROW(v_standard_3design(Operator::identity(1), QuantumState::pure(z)),
               std::invalid_argument);
}

TEST(Variance, CliffordFormsAgreeWithBruteForce) {
  Philox rng(73, 0);
  std::vector<Matrix> group = dense_elements(enumerate_cliffords(1));
  for (int i = 0; i < 10; ++i) {
    Matrix o = random_traceless_hermitian(1, rng);
    Matrix rho = random_density(1, 2, rng);
    Matrix sigma = random_density(1, 1 + i % 2, rng);
    DefinitionalVariances ref =
        definitional_variances(group, clifford_reconstruction(o), o, rho, sigma);
    CharFunction xo = char_function(Operator::dense(o));
    CharFunction xd = char_function(Operator::dense(rho - sigma));
    CharFunction xr = char_function(Operator::dense(rho));
    EXPECT_NEAR(v_star_clifford(xo, xd), ref.v_star_delta, 1e-12);
    EXPECT_NEAR(v_star_clifford_pairwise(xo, xd), ref.v_star_delta, 1e-12);
    EXPECT_NEAR(v_star_clifford(xo, xr), ref.v_star_rho, 1e-12);
    EXPECT_NEAR(v_standard_3design(Operator::dense(o), dense_state(rho)), ref.v, 1e-12);
  }
}

TEST(Variance, CliffordFormsAgreeAtLargerN) {
  Philox rng(74, 0);
  for (int n = 2; n <= 5; ++n) {
    Vector s = haar_state(n, rng);
    Operator o = fidelity_observable(s);
    QuantumState rho = apply_noise(random_coherent_rotation(n, rng), QuantumState::pure(s));
    CharFunction xo = char_function(o);
    CharFunction xd = char_function(rho.as_operator() - QuantumState::pure(s).as_operator());
    EXPECT_NEAR(v_star_clifford(xo, xd), v_star_clifford_pairwise(xo, xd), 1e-10);
  }
}

TEST(Variance, DepolarizingClosedForm) {
  double p = 0.01;
  Vector s = s_nk_state(7, 7, std::numbers::pi / 4);
  QuantumState sigma = QuantumState::pure(s);
  double m2 = 7.0 * std::log2(4.0 / 3.0);
  VarianceReport closed = clifford_depolarizing_report(7, p, m2);
  VarianceReport generic =
      compute_variances(Ensemble::Clifford, fidelity_observable(s), apply_noise(Depolarizing{p}, sigma), sigma);
  EXPECT_NEAR(closed.v_star_delta, generic.v_star_delta, 1e-9);
  EXPECT_NEAR(closed.v_star_rho, generic.v_star_rho, 1e-9);
  EXPECT_NEAR(closed.v, generic.v, 1e-9);
  double d = 128.0;
  double eps = p * (1.0 - 1.0 / d);
  EXPECT_LE(closed.v_star_delta, std::exp2(1.0 - m2) * eps * eps);

  VarianceReport clean = clifford_depolarizing_report(5, 0.0, 1.0);
  EXPECT_EQ(clean.v_star_delta, 0.0);
  EXPECT_NEAR(clean.v_star_rho, (std::exp2(0.0) * 33.0 - 4.0) / 34.0, 1e-15);
  // Stabilizer target at large d: thrifty circuit variance approaches 2.
  VarianceReport big = clifford_depolarizing_report(40, 0.0, 0.0);
  EXPECT_NEAR(big.v_star_rho, 2.0, 1e-9);
  EXPECT_NEAR(big.v, 2.0, 1e-9);
}

TEST(Variance, FourDesignProperties) {
  Philox rng(75, 0);
  for (int n = 1; n <= 3; ++n) {
    double d = std::ldexp(1.0, n);
    Vector s = haar_state(n, rng);
    QuantumState sigma = QuantumState::pure(s);
    Operator o = fidelity_observable(s);
    EXPECT_NEAR(v_star_4design_traceless(o, Operator(n)), 0.0, 1e-15);
    PauliOp z1(n, 0, 1);
    QuantumState rho = apply_noise(single_pauli_error(z1, 0.5), sigma);
    Operator delta = rho.as_operator() - sigma.as_operator();
    double eps = infidelity(rho, sigma);
    double v = v_star_4design_traceless(o, delta);
    EXPECT_NEAR(v, v_star_4design_traceless(o, -1.0 * delta), 1e-14);
    EXPECT_NEAR(v, v_star_4design(o, delta), 1e-14);
    EXPECT_LE((d - 1.0) * eps / (d * (d + 2.0)), v + 1e-14);
    EXPECT_LE(v, 4.0 * eps / d + 1e-14);
    double p = 0.05;
    VarianceReport closed = four_design_depolarizing_report(n, p);
    VarianceReport generic =
        compute_variances(Ensemble::FourDesign, o, apply_noise(Depolarizing{p}, sigma), sigma);
    EXPECT_NEAR(closed.v_star_delta, generic.v_star_delta, 1e-12);
    EXPECT_NEAR(closed.v_star_rho, generic.v_star_rho, 1e-12);
    EXPECT_NEAR(closed.v, generic.v, 1e-12);
  }
}

TEST(Variance, PauliObservableClosedForms) {
  Vector g = ghz_state(3);
  QuantumState sigma = QuantumState::pure(g);
  Operator o = Operator::pauli(PauliOp::from_string("ZZI"));
  QuantumState rho = apply_noise(single_pauli_error(PauliOp::from_string("XII"), 0.3), sigma);
  double tr_rho = rho.expectation(o);
  double tr_sigma = sigma.expectation(o);
  for (Ensemble e : {Ensemble::Clifford, Ensemble::LocalPauli}) {
    VarianceReport closed = pauli_observable_report(e, 3, 2, 1.0, tr_rho, tr_sigma);
    VarianceReport generic = compute_variances(e, o, rho, sigma);
    EXPECT_NEAR(closed.v, generic.v, 1e-10) << to_string(e);
    EXPECT_NEAR(closed.v_star_rho, generic.v_star_rho, 1e-10);
    EXPECT_NEAR(closed.v_star_delta, generic.v_star_delta, 1e-10);
  }
  double dt = tr_rho - tr_sigma;
  VarianceReport lp = pauli_observable_report(Ensemble::LocalPauli, 3, 2, 1.0, tr_rho, tr_sigma);
  for (double r : {1.0, 7.0}) {
    EXPECT_NEAR(lp.v_r_crm(r), 8.0 * dt * dt + 9.0 * (1.0 - tr_rho * tr_rho) / r, 1e-12);
  }
  VarianceReport cl = pauli_observable_report(Ensemble::Clifford, 3, 2, 1.0, tr_rho, tr_sigma);
  EXPECT_NEAR(cl.v_r_crm(4.0), 8.0 * dt * dt + 9.0 * (1.0 - tr_rho * tr_rho) / 4.0, 1e-12);
  VarianceReport clean = pauli_observable_report(Ensemble::Clifford, 3, 2, 1.0, 1.0, 1.0);
  EXPECT_NEAR(clean.v_r_crm(3.0), 0.0, 1e-15);
}

TEST(Variance, LocalPauliBruteForce) {
  Philox rng(76, 0);
  std::vector<Matrix> group = dense_elements(enumerate_local_cliffords(2));
  Matrix o = random_traceless_hermitian(2, rng);
  Matrix rho = random_density(2, 3, rng);
  Matrix sigma = random_density(2, 1, rng);
  DefinitionalVariances ref =
      definitional_variances(group, local_pauli_reconstruction(o, 2), o, rho, sigma);
  CharFunction xo = char_function(Operator::dense(o));
  CharFunction xd = char_function(Operator::dense(rho - sigma));
  CharFunction xr = char_function(Operator::dense(rho));
  EXPECT_NEAR(v_star_pauli(xo, xd), ref.v_star_delta, 1e-10);
  EXPECT_NEAR(v_star_pauli_pairwise(xo, xd), ref.v_star_delta, 1e-10);
  EXPECT_NEAR(v_star_pauli(xo, xr), ref.v_star_rho, 1e-10);
  EXPECT_NEAR(v_pauli(xo, xr), ref.v, 1e-10);
  EXPECT_LE(ref.v, v_pauli_abs_cap(xo, (rho * o).trace().real()) + 1e-12);
}

TEST(Variance, PauliPairBudget) {
  Philox rng(77, 0);
  Vector s = haar_state(4, rng);
  Operator o = fidelity_observable(s);
  QuantumState sigma = QuantumState::pure(s);
  QuantumState rho = apply_noise(Depolarizing{0.1}, sigma);
  CharFunction xo = char_function(o);
  EXPECT_THROW(v_pauli(xo, char_function(rho.as_operator()), 10.0), BudgetError);
  VarianceOptions tight{10.0, true};
  VarianceReport r = compute_variances(Ensemble::LocalPauli, o, rho, sigma, tight);
  EXPECT_EQ(r.method, VarianceMethod::BoundOnly);
  EXPECT_FALSE(r.bound_source.empty());
  VarianceReport exact = compute_variances(Ensemble::LocalPauli, o, rho, sigma);
  EXPECT_GE(r.v + 1e-12, exact.v);
  VarianceOptions strict{10.0, false};
  EXPECT_THROW(compute_variances(Ensemble::LocalPauli, o, rho, sigma, strict), BudgetError);
}

TEST(Variance, DesignAveragedObservable) {
  for (int n = 1; n <= 4; ++n) {
    double d = std::ldexp(1.0, n);
    DesignAverages pure = v_avg_2design_ensemble(n, 2.0, 1.0, 0.0);
    EXPECT_NEAR(pure.v, (1.0 + 1.0 / (d + 1.0)) * 2.0, 1e-14);
    EXPECT_EQ(pure.v_star_delta, 0.0);
  }
  EXPECT_THROW(v_avg_2design_ensemble(2, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Variance, DesignAveragedObservableMonteCarlo) {
  Philox rng(78, 0);
  int n = 1;
  Matrix o0 = random_traceless_hermitian(n, rng);
  Matrix rho = random_density(n, 2, rng);
  Matrix sigma = random_density(n, 1, rng);
  std::vector<double> v, vs, vd;
  for (int i = 0; i < 4000; ++i) {
    Matrix u = haar_unitary(2, rng);
    Operator o = Operator::dense(u * o0 * u.adjoint());
    VarianceReport r = compute_variances(Ensemble::Clifford, o, dense_state(rho), dense_state(sigma));
    v.push_back(r.v);
    vs.push_back(r.v_star_rho);
    vd.push_back(r.v_star_delta);
  }
  Matrix delta = rho - sigma;
  DesignAverages avg = v_avg_2design_ensemble(n, (o0 * o0).trace().real(), (rho * rho).trace().real(),
                                              (delta * delta).trace().real());
  for (auto [samples, value] : {std::pair{v, avg.v}, {vs, avg.v_star_rho}, {vd, avg.v_star_delta}}) {
    SampleMean m = sample_mean(samples);
    EXPECT_LT(std::abs(m.mean - value), 4.0 * m.standard_error + 1e-12);
  }
}

TEST(Variance, ReuseDependence) {
  VarianceReport r;
  r.v = 2.0;
  r.v_star_rho = 1.5;
  r.v_star_delta = 0.01;
  double prev = std::numeric_limits<double>::infinity();
  for (double reuse : {1.0, 2.0, 10.0, 1e6}) {
    double v = r.v_r_crm(reuse);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_DOUBLE_EQ(r.v_r_thrifty(1.0), 2.0);
  EXPECT_DOUBLE_EQ(r.v_r_crm(std::numeric_limits<double>::infinity()), 0.01);
  EXPECT_DOUBLE_EQ(r.v_r_thrifty(std::numeric_limits<double>::infinity()), 1.5);
  EXPECT_THROW(r.v_r_crm(0.5), std::invalid_argument);
}

TEST(Variance, ReportInvariants) {
  Philox rng(79, 0);
  for (int i = 0; i < 30; ++i) {
    int n = 1 + i % 3;
    Vector s = haar_state(n, rng);
    QuantumState sigma = QuantumState::pure(s);
    QuantumState rho = apply_noise(random_pauli_channel(n, rng.uniform(), rng), sigma);
    Operator o = fidelity_observable(s);
    for (Ensemble e : {Ensemble::Clifford, Ensemble::FourDesign, Ensemble::LocalPauli}) {
      VarianceReport r = compute_variances(e, o, rho, sigma);
      EXPECT_LE(r.v_star_rho, r.v + 1e-9);
      EXPECT_GE(r.v, -1e-9);
      EXPECT_GE(r.v_star_rho, -1e-9);
      EXPECT_GE(r.v_star_delta, -1e-9);
    }
    EXPECT_LE(compute_variances(Ensemble::Clifford, o, rho, sigma).v_star_delta,
              4.0 * std::pow(infidelity(rho, sigma), 2) + 1e-12);
  }
}

}  // namespace
}  // namespace crmshadow
