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


#include "crmshadow/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "crmshadow/transforms.hpp"

namespace crmshadow {

std::string to_string(EstimatorMode m) {
  switch (m) {
    case EstimatorMode::Standard:
      return "standard";
    case EstimatorMode::Thrifty:
      return "thr";
    case EstimatorMode::Crm:
      return "crm";
  }
  return "unknown";
}

EstimatorMode parse_mode(const std::string &name) {
  if (name == "standard") {
    return EstimatorMode::Standard;
  }
  if (name == "thr") {
    return EstimatorMode::Thrifty;
  }
  if (name == "crm") {
    return EstimatorMode::Crm;
  }
  throw std::invalid_argument("unknown estimator mode '" + name + "'");
}

RealVector conjugated_diagonal(const Operator &a, const UnitaryAction &u) {
  std::size_t d = a.dim();
  RealVector diag = RealVector::Constant(static_cast<Eigen::Index>(d), a.identity_coefficient());
  for (const RankOneTerm &t : a.rank_one_terms()) {
    Vector v = t.vec;
    u(v);
    diag += t.weight * v.cwiseAbs2();
  }
  if (a.dense_part() || !a.pauli_terms().empty()) {
    Operator rest(a.num_qubits());
    if (a.dense_part()) {
      rest += Operator::dense(*a.dense_part());
    }
    for (const PauliTerm &t : a.pauli_terms()) {
      rest += Operator::pauli(t.pauli, t.coeff);
    }
    Operator c = rest.conjugated(u);
    diag += c.dense_part()->diagonal().real();
  }
  return diag;
}

RealVector born_probabilities(const QuantumState &rho, const UnitaryAction &u) {
  if (rho.is_pure()) {
    Vector v = rho.vector();
    u(v);
    return v.cwiseAbs2();
  }
  return conjugated_diagonal(rho.as_operator(), u);
}

RealVector design_reconstruction_values(const Operator &o, const UnitaryAction &u) {
  double d = static_cast<double>(o.dim());
  RealVector diag = conjugated_diagonal(o, u);
  return (d + 1.0) * diag.array() - o.trace();
}

RealVector pauli_reconstruction_values(const CharFunction &xi_o, const CliffordElement &u) {
  int n = xi_o.num_qubits();
  if (u.num_qubits() != n) {
    throw std::invalid_argument("pauli_reconstruction_values: qubit count mismatch");
  }
  std::size_t d = dim_of(n);
  std::vector<double> coef(d, 0.0);
  for (std::uint64_t i = 0; i < xi_o.size(); ++i) {
    double v = xi_o[i];
    if (v == 0.0) {
      continue;
    }
    PauliOp image = u.conjugate(PauliOp::from_index(n, i));
    if (image.x != 0) {
      continue;
    }
    coef[image.z] += image.sign() * std::pow(3.0, index_weight(i)) * v;
  }
  fwht(std::span<double>(coef));
  RealVector out(static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < d; ++s) {
    out[static_cast<Eigen::Index>(s)] = coef[s] / static_cast<double>(d);
  }
  return out;
}

MeasurementRecord simulate_round(const RealVector &probs, std::int64_t shots, Philox &rng) {
  if (shots < 1) {
    throw std::invalid_argument("simulate_round: need at least one shot");
  }
  std::size_t d = static_cast<std::size_t>(probs.size());
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (std::size_t s = 0; s < d; ++s) {
    acc += std::max(0.0, probs[static_cast<Eigen::Index>(s)]);
    cdf[s] = acc;
  }
  if (!(acc > 0.0)) {
    throw std::invalid_argument("simulate_round: probabilities sum to zero");
  }
  std::vector<std::int64_t> counts(d, 0);
  for (std::int64_t k = 0; k < shots; ++k) {
    double x = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), d - 1);
    ++counts[s];
  }
  MeasurementRecord rec;
  rec.num_qubits = std::countr_zero(d);
  rec.shots = shots;
  for (std::size_t s = 0; s < d; ++s) {
    if (counts[s] > 0) {
      rec.counts.emplace_back(s, counts[s]);
    }
  }
  return rec;
}

MeasurementRecord simulate_round(const QuantumState &rho, const UnitaryAction &u,
                                 std::int64_t shots, Philox &rng) {
  return simulate_round(born_probabilities(rho, u), shots, rng);
}

double thrifty_estimate(const MeasurementRecord &record, const RealVector &values) {
  double acc = 0.0;
  for (const auto &[s, c] : record.counts) {
    acc += static_cast<double>(c) * values[static_cast<Eigen::Index>(s)];
  }
  return acc / static_cast<double>(record.shots);
}

double crm_estimate(const MeasurementRecord &record, const RealVector &values,
                    const RealVector &p_sigma, double tr_sigma_o) {
  return thrifty_estimate(record, values) - p_sigma.dot(values) + tr_sigma_o;
}

double median_of_means(const std::vector<double> &estimates, int batches) {
  if (estimates.empty()) {
    throw std::invalid_argument("median_of_means: no estimates");
  }
  if (batches < 1) {
    throw std::invalid_argument("median_of_means: need at least one batch");
  }
  std::size_t m = estimates.size();
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(batches), m);
  std::vector<double> means(k);
  for (std::size_t b = 0; b < k; ++b) {
    std::size_t lo = b * m / k;
    std::size_t hi = (b + 1) * m / k;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      acc += estimates[i];
    }
    means[b] = acc / static_cast<double>(hi - lo);
  }
  std::sort(means.begin(), means.end());
  if (k % 2 == 1) {
    return means[k / 2];
  }
  return 0.5 * (means[k / 2 - 1] + means[k / 2]);
}

int mom_batches_for(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("significance level delta must lie in (0, 1)");
  }
  return static_cast<int>(std::ceil(2.0 * std::log(2.0 / delta)));
}

SampledCircuit sample_circuit(Ensemble ensemble, int n, Philox &rng) {
  SampledCircuit c;
  switch (ensemble) {
    case Ensemble::Clifford:
    case Ensemble::LocalPauli: {
      c.clifford = ensemble == Ensemble::Clifford ? sample_clifford(n, rng)
                                                  : sample_local_clifford(n, rng);
      CliffordElement element = *c.clifford;
      c.action = [element](Vector &v) { element.apply(v); };
      break;
    }
    case Ensemble::FourDesign: {
      require_qubits(n, kDenseQubitBudget, "sample_circuit");
      Matrix u = haar_unitary(dim_of(n), rng);
      c.action = [u](Vector &v) { v = u * v; };
      break;
    }
  }
  return c;
}

RealVector reconstruction_values(Ensemble ensemble, const Operator &o, const CharFunction *xi_o,
                                 const SampledCircuit &circuit) {
  if (ensemble == Ensemble::LocalPauli) {
    if (xi_o == nullptr || !circuit.clifford) {
      throw std::invalid_argument("local-Pauli reconstruction needs Xi_O and a local Clifford");
    }
    return pauli_reconstruction_values(*xi_o, *circuit.clifford);
  }
  return design_reconstruction_values(o, circuit.action);
}

ProtocolResult run_protocol(const QuantumState &rho, const Operator &o,
                            const EstimatorConfig &config, const QuantumState *sigma_prior,
                            Philox &rng) {
  if (config.circuits < 1 || config.reuse < 1) {
    throw std::invalid_argument("run_protocol: circuits and reuse must be positive");
  }
  if (config.mode == EstimatorMode::Crm && sigma_prior == nullptr) {
    throw std::invalid_argument("run_protocol: CRM mode needs a prior state");
  }
  if (std::abs(o.trace()) > 1e-9 * std::max(1.0, std::sqrt(trace_square(o)))) {
    throw std::invalid_argument("run_protocol: observable must be traceless");
  }
  int n = rho.num_qubits();
  std::int64_t shots = config.mode == EstimatorMode::Standard ? 1 : config.reuse;
  std::optional<CharFunction> xi_o;
  if (config.ensemble == Ensemble::LocalPauli) {
    xi_o = char_function(o);
  }
  double tr_sigma_o = config.mode == EstimatorMode::Crm ? sigma_prior->expectation(o) : 0.0;
  ProtocolResult out;
  out.per_circuit.reserve(static_cast<std::size_t>(config.circuits));
  for (std::int64_t k = 0; k < config.circuits; ++k) {
    SampledCircuit circuit = sample_circuit(config.ensemble, n, rng);
    RealVector values =
        reconstruction_values(config.ensemble, o, xi_o ? &*xi_o : nullptr, circuit);
    MeasurementRecord rec = simulate_round(rho, circuit.action, shots, rng);
    double est = 0.0;
    if (config.mode == EstimatorMode::Crm) {
      est = crm_estimate(rec, values, born_probabilities(*sigma_prior, circuit.action),
                         tr_sigma_o);
    } else {
      est = thrifty_estimate(rec, values);
    }
    out.per_circuit.push_back(est);
  }
  double m = static_cast<double>(out.per_circuit.size());
  double acc = 0.0;
  for (double e : out.per_circuit) {
    acc += e;
  }
  out.mean = acc / m;
  double ss = 0.0;
  for (double e : out.per_circuit) {
    ss += (e - out.mean) * (e - out.mean);
  }
  out.empirical_variance = m > 1.0 ? ss / (m - 1.0) : 0.0;
  out.estimate = median_of_means(out.per_circuit, std::max(1, config.mom_batches));
  return out;
}

}  // namespace crmshadow
