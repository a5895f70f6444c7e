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
#include <map>
#include <set>

#include "crmshadow/clifford.hpp"
#include "crmshadow/states.hpp"

namespace crmshadow {
namespace {

/// True when U P U^dagger equals the signed Pauli returned by conjugate().
bool conjugation_matches_dense(const CliffordElement &u, const PauliOp &p) {
  Matrix ud = u.dense();
  Matrix lhs = ud * pauli_dense(p) * ud.adjoint();
  PauliOp image = u.conjugate(p);
  Matrix rhs = static_cast<double>(image.sign()) * pauli_dense(image.unsigned_part());
  return (lhs - rhs).norm() < 1e-10;
}

bool diagonalizes(const CliffordElement &u, const PauliOp &p) { return u.conjugate(p).x == 0; }

double z_score(int hits, int trials, double prob) {
  return (hits - trials * prob) / std::sqrt(trials * prob * (1.0 - prob));
}

TEST(Clifford, SimpleGates) {
  CliffordElement h(1, {Gate{GateKind::H, 0}});
  PauliOp x = PauliOp::from_string("X");
  EXPECT_EQ(h.conjugate(x), PauliOp::from_string("Z"));
  EXPECT_TRUE(diagonalizes(h, x));
  CliffordElement id(1, {});
  EXPECT_EQ(id.conjugate(PauliOp::from_string("Z")), PauliOp::from_string("Z"));
  Vector v = Vector::Zero(2);
  v(0) = 1.0;
  Vector before = v;
  id.apply(v);
  EXPECT_LT((v - before).norm(), 1e-15);
  h.apply(v);
  EXPECT_NEAR(std::abs(v(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Clifford, GateConjugationMatchesDense) {
  std::vector<Gate> gates = {{GateKind::H, 0},   {GateKind::S, 1},  {GateKind::Sdg, 0},
                             {GateKind::X, 1},   {GateKind::Z, 0},  {GateKind::CX, 0, 1},
                             {GateKind::CX, 1, 0}, {GateKind::Swap, 0, 1}};
  for (const Gate &g : gates) {
    CliffordElement u(2, {g});
    for (std::uint64_t i = 0; i < 16; ++i) {
      EXPECT_TRUE(conjugation_matches_dense(u, PauliOp::from_index(2, i)));
    }
    CliffordElement inv(2, {inverse(g)});
    EXPECT_LT((u.dense() * inv.dense() - Matrix::Identity(4, 4)).norm(), 1e-12);
  }
}

TEST(Clifford, SampledTableauMatchesDenseExhaustively) {
  Philox rng(61, 0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 2;
    CliffordElement u = sample_clifford(n, rng);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
      EXPECT_TRUE(conjugation_matches_dense(u, PauliOp::from_index(n, i)));
    }
    // Symplectic: images of X_q, Z_q keep their commutation relations.
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        EXPECT_EQ(commutes(u.image_x(a), u.image_z(b)), a != b);
        EXPECT_TRUE(commutes(u.image_x(a), u.image_x(b)));
        EXPECT_TRUE(commutes(u.image_z(a), u.image_z(b)));
      }
    }
  }
}

TEST(Clifford, RandomPaulisAtSixQubits) {
  Philox rng(62, 0);
  CliffordElement u = sample_clifford(6, rng);
  for (int i = 0; i < 100; ++i) {
    PauliOp p = PauliOp::from_index(6, rng.below(std::uint64_t{1} << 12));
    EXPECT_TRUE(conjugation_matches_dense(u, p));
  }
}

TEST(Clifford, ApplicationIsUnitaryAndMatchesDense) {
  Philox rng(63, 0);
  CliffordElement u = sample_clifford(3, rng);
  Vector psi = haar_state(3, rng);
  Vector v = psi;
  u.apply(v);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_LT((v - u.dense() * psi).norm(), 1e-12);
  u.apply_adjoint(v);
  EXPECT_LT((v - psi).norm(), 1e-12);
  CliffordElement inv = u.inverse();
  EXPECT_LT((inv.dense() * u.dense() - Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Clifford, EnumerationSizes) {
  auto c1 = enumerate_cliffords(1);
  EXPECT_EQ(c1.size(), 24u);
  std::set<std::string> keys;
  for (const auto &c : c1) {
    keys.insert(c.tableau_key());
  }
  EXPECT_EQ(keys.size(), 24u);
  auto l2 = enumerate_local_cliffords(2);
  EXPECT_EQ(l2.size(), 576u);
  keys.clear();
  for (const auto &c : l2) {
    keys.insert(c.tableau_key());
    PauliOp image = c.conjugate(PauliOp::from_string("XI"));
    EXPECT_EQ(image.weight(), 1);
    EXPECT_EQ(overlap_weight(image, PauliOp::from_string("XI")), 1);
  }
  EXPECT_EQ(keys.size(), 576u);
  auto c2 = enumerate_cliffords(2);
  EXPECT_EQ(c2.size(), 11520u);
  keys.clear();
  for (const auto &c : c2) {
    keys.insert(c.tableau_key());
  }
  EXPECT_EQ(keys.size(), 11520u);
}

TEST(Clifford, SingleQubitSamplerIsUniform) {
  Philox rng(64, 0);
  std::map<std::string, int> counts;
  const int trials = 24000;
  for (int i = 0; i < trials; ++i) {
    ++counts[sample_clifford(1, rng).tableau_key()];
  }
  ASSERT_EQ(counts.size(), 24u);
  double chi2 = 0.0;
  for (const auto &[key, c] : counts) {
    chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  }
  // 23 degrees of freedom; p = 0.001 at 49.73.
  EXPECT_LT(chi2, 49.73);
}

TEST(Clifford, MixingProbabilities) {
  Philox rng(65, 0);
  const int trials = 30000;
  int x_hits = 0;
  int pair_hits = 0;
  PauliOp xx = PauliOp::from_string("XX");
  PauliOp zz = PauliOp::from_string("ZZ");
  for (int i = 0; i < trials; ++i) {
    x_hits += diagonalizes(sample_clifford(1, rng), PauliOp::from_string("X"));
    CliffordElement u = sample_clifford(2, rng);
    pair_hits += diagonalizes(u, xx) && diagonalizes(u, zz);
  }
  EXPECT_LT(std::abs(z_score(x_hits, trials, 1.0 / 3.0)), 4.0);
  EXPECT_LT(std::abs(z_score(pair_hits, trials, 1.0 / 15.0)), 4.0);
}

TEST(Clifford, LocalMixingProbabilities) {
  Philox rng(66, 0);
  const int trials = 30000;
  int single = 0;
  int pair = 0;
  PauliOp xi = PauliOp::from_string("XI");
  PauliOp iz = PauliOp::from_string("IZ");
  for (int i = 0; i < trials; ++i) {
    CliffordElement u = sample_local_clifford(2, rng);
    single += diagonalizes(u, xi);
    pair += diagonalizes(u, xi) && diagonalizes(u, iz);
    EXPECT_EQ(u.conjugate(xi).weight(), 1);
  }
  EXPECT_LT(std::abs(z_score(single, trials, 1.0 / 3.0)), 4.0);
  EXPECT_LT(std::abs(z_score(pair, trials, 1.0 / 9.0)), 4.0);
}

}  // namespace
}  // namespace crmshadow
