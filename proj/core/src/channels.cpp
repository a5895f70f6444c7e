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

#include "crmshadow/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "crmshadow/char_function.hpp"
#include "crmshadow/transforms.hpp"

namespace crmshadow {

namespace {

constexpr std::size_t kLowRankPauliTerms = 16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const PauliChannel &ch) {
  std::uint64_t count = std::uint64_t{1} << (2 * ch.num_qubits);
  std::set<std::uint64_t> seen;
  double total = 0.0;
  for (const auto &[index, p] : ch.probs) {
    if (index == 0 || index >= count) {
      throw std::invalid_argument("PauliChannel: index must name a non-identity Pauli");
    }
    if (!seen.insert(index).second) {
      throw std::invalid_argument("PauliChannel: duplicate Pauli index");
    }
    if (!(p >= 0.0)) {
      throw PhysicalityError("PauliChannel: negative probability");
    }
    total += p;
  }
  if (total > 1.0 + 1e-12) {
    throw PhysicalityError("PauliChannel: probabilities sum above one");
  }
}

void validate(const LocalRotation &rot) {
  if (rot.axes.size() != rot.angles.size()) {
    throw std::invalid_argument("LocalRotation: axes and angles differ in length");
  }
  for (const auto &axis : rot.axes) {
    double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-9) {
      throw std::invalid_argument("LocalRotation: axis is not a unit vector");
    }
  }
}

QuantumState apply_pauli_channel(const PauliChannel &ch, const QuantumState &sigma) {
  validate(ch);
  if (ch.num_qubits != sigma.num_qubits()) {
    throw std::invalid_argument("PauliChannel: qubit count mismatch");
  }
  double keep = std::max(0.0, 1.0 - ch.total());
  Operator sig = sigma.as_operator();
  if (ch.probs.size() <= kLowRankPauliTerms && !sig.dense_part() && sig.pauli_terms().empty()) {
    Operator out = sig * keep;
    for (const auto &[index, p] : ch.probs) {
      if (p == 0.0) {
        continue;
      }
      PauliOp pauli = PauliOp::from_index(ch.num_qubits, index);
      Operator term(ch.num_qubits);
      term += Operator::identity(ch.num_qubits, sig.identity_coefficient() * p);
      for (const RankOneTerm &t : sig.rank_one_terms()) {
        term += Operator::projector(apply_pauli(pauli, t.vec), t.weight * p);
      }
      out += term;
    }
    return QuantumState::mixed(std::move(out));
  }
  int n = ch.num_qubits;
  require_qubits(n, kDenseQubitBudget, "PauliChannel on a dense state");
  std::vector<double> table(std::size_t{1} << (2 * n), 0.0);
  table[0] = keep;
  for (const auto &[index, p] : ch.probs) {
    table[index] = p;
  }
  symplectic_transform(std::span<double>(table), n);
  CharFunction xi = char_function(sig);
  std::vector<double> values = xi.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= table[i];
  }
  Matrix rho = dense_from_char(CharFunction(n, std::move(values)));
  return QuantumState::mixed(Operator::dense(rho));
}

QuantumState apply_product_unitary(const std::vector<Eigen::Matrix2cd> &us, const QuantumState &sigma) {
  int n = sigma.num_qubits();
  auto apply_all = [&](Vector &v) {
    for (int q = 0; q < n; ++q) {
      apply_single_qubit(us[q], q, v);
    }
  };
  if (sigma.is_pure()) {
    Vector v = sigma.vector();
    apply_all(v);
    return QuantumState::pure(v / v.norm());
  }
  return QuantumState::mixed(sigma.as_operator().conjugated(apply_all));
}

std::array<double, 3> random_axis(Philox &rng) {
  while (true) {
    std::array<double, 3> a = {rng.normal(), rng.normal(), rng.normal()};
    double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (norm > 1e-12) {
      return {a[0] / norm, a[1] / norm, a[2] / norm};
    }
  }
}

}  // namespace

double PauliChannel::total() const {
  double acc = 0.0;
  for (const auto &entry : probs) {
    acc += entry.second;
  }
  return acc;
}

std::string noise_kind(const NoiseModel &model) {
  return std::visit(Overloaded{
                        [](const Depolarizing &) { return std::string("depolarizing"); },
                        [](const PauliChannel &) { return std::string("pauli_channel"); },
                        [](const LocalRotation &) { return std::string("local_rotation"); },
                        [](const CollectiveRotation &) { return std::string("collective_rotation"); },
                    },
                    model);
}

bool is_pauli_noise(const NoiseModel &model) {
  return std::holds_alternative<Depolarizing>(model) || std::holds_alternative<PauliChannel>(model);
}

QuantumState apply_noise(const NoiseModel &model, const QuantumState &sigma) {
  return std::visit(
      Overloaded{
          [&](const Depolarizing &dep) {
            if (!(dep.p >= 0.0 && dep.p <= 1.0)) {
              throw PhysicalityError("Depolarizing: p must lie in [0, 1]");
            }
            int n = sigma.num_qubits();
            Operator rho = sigma.as_operator() * (1.0 - dep.p);
            rho += Operator::identity(n, dep.p / static_cast<double>(dim_of(n)));
            return QuantumState::mixed(std::move(rho));
          },
          [&](const PauliChannel &ch) { return apply_pauli_channel(ch, sigma); },
          [&](const LocalRotation &rot) {
            validate(rot);
            if (static_cast<int>(rot.angles.size()) != sigma.num_qubits()) {
              throw std::invalid_argument("LocalRotation: one rotation per qubit required");
            }
            std::vector<Eigen::Matrix2cd> us;
            for (std::size_t q = 0; q < rot.angles.size(); ++q) {
              us.push_back(axis_rotation_matrix(rot.axes[q], rot.angles[q]));
            }
            return apply_product_unitary(us, sigma);
          },
          [&](const CollectiveRotation &col) {
            std::vector<Eigen::Matrix2cd> us(sigma.num_qubits(), collective_rotation_matrix(col.theta));
            return apply_product_unitary(us, sigma);
          },
      },
      model);
}

Depolarizing depolarizing_for_infidelity(int n, double eps) {
  double d = static_cast<double>(dim_of(n));
  double p = eps / (1.0 - 1.0 / d);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PhysicalityError("depolarizing_for_infidelity: infidelity out of range");
  }
  return {p};
}

PauliChannel random_pauli_channel(int n, double beta, Philox &rng, std::size_t max_support) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw PhysicalityError("random_pauli_channel: beta must lie in [0, 1]");
  }
  require_qubits(n, kMaxPauliQubits, "random_pauli_channel");
  PauliChannel ch{n, {}};
  std::uint64_t count = std::uint64_t{1} << (2 * n);
  if (n <= kDenseQubitBudget || count - 1 <= max_support) {
    for (std::uint64_t i = 1; i < count; ++i) {
      ch.probs.emplace_back(i, rng.uniform());
    }
  } else {
    std::set<std::uint64_t> chosen;
    while (chosen.size() < max_support) {
      chosen.insert(1 + rng.below(count - 1));
    }
    for (std::uint64_t i : chosen) {
      ch.probs.emplace_back(i, rng.uniform());
    }
  }
  double total = ch.total();
  for (auto &entry : ch.probs) {
    entry.second *= beta / total;
  }
  return ch;
}

PauliChannel random_pauli_channel_for_infidelity(int n, double eps_avg, Philox &rng,
                                                 std::size_t max_support) {
  double d = static_cast<double>(dim_of(n));
  return random_pauli_channel(n, eps_avg * (d + 1.0) / d, rng, max_support);
}

PauliChannel single_pauli_error(const PauliOp &p, double prob) {
  if (p.is_identity()) {
    throw std::invalid_argument("single_pauli_error: Pauli must be non-identity");
  }
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw PhysicalityError("single_pauli_error: probability out of range");
  }
  return PauliChannel{p.num_qubits, {{p.index(), prob}}};
}

LocalRotation random_local_rotation(int n, double eps_avg, Philox &rng) {
  double d = static_cast<double>(dim_of(n));
  double xi = 1.0 - (d + 1.0) * eps_avg / d;
  if (!(eps_avg >= 0.0 && xi > 0.0)) {
    throw PhysicalityError("random_local_rotation: need 0 <= eps_avg < d/(d+1)");
  }
  LocalRotation rot;
  std::vector<double> h(n);
  double log_sum = 0.0;
  for (int q = 0; q < n; ++q) {
    rot.axes.push_back(random_axis(rng));
    h[q] = rng.uniform_open_closed();
    log_sum += std::log(h[q]);
  }
  for (int q = 0; q < n; ++q) {
    double hq;
    if (xi == 1.0) {
      hq = 1.0;
    } else if (log_sum == 0.0) {
      hq = std::pow(xi, 1.0 / n);
    } else {
      hq = std::pow(h[q], std::log(xi) / log_sum);
    }
    rot.angles.push_back(std::acos(std::clamp(2.0 * hq - 1.0, -1.0, 1.0)));
  }
  return rot;
}

LocalRotation random_coherent_rotation(int n, Philox &rng) {
  LocalRotation rot;
  for (int q = 0; q < n; ++q) {
    rot.axes.push_back(random_axis(rng));
    rot.angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return rot;
}

double average_infidelity(const LocalRotation &rotation) {
  double xi = 1.0;
  for (double theta : rotation.angles) {
    double c = std::cos(theta / 2.0);
    xi *= c * c;
  }
  double d = static_cast<double>(dim_of(static_cast<int>(rotation.angles.size())));
  return d * (1.0 - xi) / (d + 1.0);
}

Eigen::Matrix2cd collective_rotation_matrix(double theta) {
  Eigen::Matrix2cd u;
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  u << std::polar(c, -theta), -s, s, std::polar(c, theta);
  return u;
}

CollectiveRotation collective_rotation_for_infidelity(const Vector &psi, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("collective_rotation_for_infidelity: eps must lie in (0, 1)");
  }
  int n = std::countr_zero(static_cast<std::size_t>(psi.size()));
  auto infid = [&](double theta) {
    Vector v = psi;
    Eigen::Matrix2cd u = collective_rotation_matrix(theta);
    for (int q = 0; q < n; ++q) {
      apply_single_qubit(u, q, v);
    }
    return 1.0 - std::norm(psi.dot(v));
  };
  double lo = 0.0;
  double hi = 1e-6;
  while (infid(hi) < eps) {
    lo = hi;
    hi *= 2.0;
    if (hi > 2.0 * std::numbers::pi) {
      throw std::invalid_argument("collective_rotation_for_infidelity: target not reachable");
    }
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    double mid = 0.5 * (lo + hi);
    if (infid(mid) < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi)};
}

Eigen::Matrix2cd axis_rotation_matrix(const std::array<double, 3> &axis, double theta) {
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  const Complex i_unit(0.0, 1.0);
  Eigen::Matrix2cd u;
  u(0, 0) = c - i_unit * s * axis[2];
  u(1, 1) = c + i_unit * s * axis[2];
  u(0, 1) = -i_unit * s * Complex(axis[0], -axis[1]);
  u(1, 0) = -i_unit * s * Complex(axis[0], axis[1]);
  return u;
}

void apply_single_qubit(const Eigen::Matrix2cd &u, int qubit, Vector &v) {
  std::size_t m = std::size_t{1} << qubit;
  std::size_t d = static_cast<std::size_t>(v.size());
  for (std::size_t b = 0; b < d; ++b) {
    if (!(b & m)) {
      Complex a0 = v[b];
      Complex a1 = v[b | m];
      v[b] = u(0, 0) * a0 + u(0, 1) * a1;
      v[b | m] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

std::map<std::string, std::vector<double>> serialize_noise(const NoiseModel &model) {
  std::map<std::string, std::vector<double>> out;
  std::visit(Overloaded{
                 [&](const Depolarizing &dep) { out["p"] = {dep.p}; },
                 [&](const PauliChannel &ch) {
                   out["n"] = {static_cast<double>(ch.num_qubits)};
                   for (const auto &[index, p] : ch.probs) {
                     out["index"].push_back(static_cast<double>(index));
                     out["prob"].push_back(p);
                   }
                 },
                 [&](const LocalRotation &rot) {
                   for (std::size_t q = 0; q < rot.angles.size(); ++q) {
                     out["axes"].insert(out["axes"].end(), rot.axes[q].begin(), rot.axes[q].end());
                     out["angles"].push_back(rot.angles[q]);
                   }
                 },
                 [&](const CollectiveRotation &col) { out["theta"] = {col.theta}; },
             },
             model);
  return out;
}

NoiseModel deserialize_noise(const std::string &kind,
                             const std::map<std::string, std::vector<double>> &fields) {
  auto field = [&](const std::string &key) -> const std::vector<double> & {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw std::invalid_argument("noise '" + kind + "' is missing field '" + key + "'");
    }
    return it->second;
  };
  if (kind == "depolarizing") {
    return Depolarizing{field("p").at(0)};
  }
  if (kind == "pauli_channel") {
    PauliChannel ch{static_cast<int>(field("n").at(0)), {}};
    auto idx = fields.count("index") ? fields.at("index") : std::vector<double>{};
    auto prob = fields.count("prob") ? fields.at("prob") : std::vector<double>{};
    if (idx.size() != prob.size()) {
      throw std::invalid_argument("pauli_channel: index and prob differ in length");
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      ch.probs.emplace_back(static_cast<std::uint64_t>(idx[i]), prob[i]);
    }
    validate(ch);
    return ch;
  }
  if (kind == "local_rotation") {
    LocalRotation rot;
    const auto &axes = field("axes");
    const auto &angles = field("angles");
    if (axes.size() != 3 * angles.size()) {
      throw std::invalid_argument("local_rotation: need three axis components per angle");
    }
    for (std::size_t q = 0; q < angles.size(); ++q) {
      rot.axes.push_back({axes[3 * q], axes[3 * q + 1], axes[3 * q + 2]});
      rot.angles.push_back(angles[q]);
    }
    validate(rot);
    return rot;
  }
  if (kind == "collective_rotation") {
    return CollectiveRotation{field("theta").at(0)};
  }
  throw std::invalid_argument("unknown noise kind '" + kind + "'");
}

}  // namespace crmshadow
