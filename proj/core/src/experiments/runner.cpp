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


#include "crmshadow/experiments/runner.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "crmshadow/channels.hpp"
#include "crmshadow/sample_cost.hpp"

namespace crmshadow::experiments {

namespace {

struct Task {
  StateParams params;
  std::optional<double> weight;
  const NoiseSpec *noise = nullptr;
  std::optional<double> eps_target;
  int draw = 0;
};

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

std::vector<Task> enumerate_tasks(const ExperimentSpec &spec) {
  std::vector<StateParams> points(1);
  for (const Axis &axis : spec.state_axes) {
    std::vector<StateParams> next;
    for (const StateParams &p : points) {
      for (double v : axis.values) {
        StateParams q = p;
        q[axis.name] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  std::vector<std::optional<double>> weights;
  if (spec.observable == "z_prefix") {
    weights.assign(spec.weights.begin(), spec.weights.end());
  } else {
    weights.push_back(std::nullopt);
  }
  std::vector<Task> tasks;
  for (const StateParams &p : points) {
    for (const auto &w : weights) {
      for (const NoiseSpec &noise : spec.noises) {
        std::vector<std::optional<double>> eps_values;
        if (noise.needs_eps()) {
          eps_values.assign(spec.eps.begin(), spec.eps.end());
        } else {
          eps_values.push_back(std::nullopt);
        }
        int draws =
            noise.is_stochastic() || family_is_random(spec.family) ? spec.draws : 1;
        for (const auto &e : eps_values) {
          for (int draw = 0; draw < draws; ++draw) {
            tasks.push_back({p, w, &noise, e, draw});
          }
        }
      }
    }
  }
  return tasks;
}

std::uint64_t state_stream(const ExperimentSpec &spec, const Task &t) {
  std::uint64_t s = hash_string(spec.figure);
  for (const auto &[key, value] : t.params) {
    s = mix_stream({s, hash_string(key), bits(value)});
  }
  return mix_stream({s, static_cast<std::uint64_t>(t.draw)});
}

std::uint64_t noise_stream(const ExperimentSpec &spec, const Task &t) {
  return mix_stream({state_stream(spec, t), hash_string(t.noise->label()),
                     bits(t.eps_target.value_or(-1.0)), bits(t.weight.value_or(-1.0)), 1});
}

PauliOp padded_pauli(const std::string &text, int n) {
  std::string s = text;
  std::string sign;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s.substr(0, 1);
    s = s.substr(1);
  }
  if (static_cast<int>(s.size()) > n) {
    throw std::invalid_argument("noise pauli '" + text + "' is longer than the qubit count");
  }
  s.append(static_cast<std::size_t>(n) - s.size(), 'I');
  return PauliOp::from_string(sign + s);
}

NoiseModel build_noise(const NoiseSpec &spec, int n, const Vector &sigma,
                       std::optional<double> eps, Philox &rng) {
  const std::string &m = spec.model;
  if (m == "depolarizing") {
    return spec.strength ? Depolarizing{*spec.strength} : depolarizing_for_infidelity(n, *eps);
  }
  if (m == "random_pauli") {
    if (spec.strength) {
      return random_pauli_channel(n, *spec.strength, rng);
    }
    if (spec.random_strength) {
      return random_pauli_channel(n, rng.uniform_open_closed(), rng);
    }
    return random_pauli_channel_for_infidelity(n, *eps, rng);
  }
  if (m == "random_local_rotation") {
    return random_local_rotation(n, spec.strength ? *spec.strength : *eps, rng);
  }
  if (m == "collective_rotation") {
    return spec.strength ? CollectiveRotation{*spec.strength}
                         : collective_rotation_for_infidelity(sigma, *eps);
  }
  if (m == "single_error") {
    return single_pauli_error(padded_pauli(spec.pauli, n), *spec.strength);
  }
  if (m == "random_single_error") {
    std::uint64_t count = std::uint64_t{1} << (2 * n);
    std::uint64_t index = 1 + rng.below(count - 1);
    double p = spec.strength ? *spec.strength : rng.uniform_open_closed();
    return single_pauli_error(PauliOp::from_index(n, index), p);
  }
  if (m == "random_coherent") {
    return random_coherent_rotation(n, rng);
  }
  throw std::invalid_argument("unknown noise model '" + m + "'");
}

bool is_depolarizing(const NoiseSpec &spec) { return spec.model == "depolarizing"; }

struct Evaluated {
  std::vector<ResultRow> rows;
};

class TaskEvaluator {
 public:
  TaskEvaluator(const ExperimentSpec &spec, const RunOptions &options)
      : spec_(spec), options_(options) {}

  std::vector<ResultRow> operator()(const Task &t) const {
    auto start = std::chrono::steady_clock::now();
    int n = static_cast<int>(t.params.at("n"));
    ResultRow base;
    base.figure = spec_.figure;
    base.family = spec_.family;
    base.n = n;
    if (auto it = t.params.find("k"); it != t.params.end()) {
      base.k = it->second;
    }
    if (auto it = t.params.find("theta"); it != t.params.end()) {
      base.theta = it->second;
    }
    if (auto it = t.params.find("h"); it != t.params.end()) {
      base.h = it->second;
    }
    base.weight = t.weight;
    base.noise = t.noise->label();
    base.draw = t.draw;
    base.eps_target = t.eps_target;
    base.m2 = analytic_stabilizer_renyi2(spec_.family, t.params);

    std::vector<ResultRow> rows;
    if (spec_.kind == ExperimentKind::SampleCost && can_skip_states(t, n)) {
      closed_form_depolarizing_rows(t, n, base, rows);
    } else {
      state_rows(t, n, base, rows);
    }
    if (options_.timing) {
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (ResultRow &r : rows) {
        r.wall_time_s = secs / static_cast<double>(rows.size());
      }
    }
    return rows;
  }

 private:
  /// Fidelity estimation under depolarizing noise where every requested
  /// ensemble has a closed form that needs no state vector.
  bool can_skip_states(const Task &t, int n) const {
    if (spec_.observable != "fidelity" || !is_depolarizing(*t.noise) ||
        spec_.closed_form == ClosedFormPolicy::Never) {
      return false;
    }
    bool prefer = spec_.closed_form == ClosedFormPolicy::Prefer;
    if (!prefer && n <= kDenseQubitBudget) {
      return false;
    }
    for (Ensemble e : spec_.ensembles) {
      if (e == Ensemble::LocalPauli) {
        if (n <= kDenseQubitBudget) {
          return false;
        }
      } else if (e == Ensemble::Clifford &&
                 !analytic_stabilizer_renyi2(spec_.family, t.params)) {
        return false;
      }
    }
    return !family_is_random(spec_.family);
  }

  void closed_form_depolarizing_rows(const Task &t, int n, const ResultRow &base,
                                     std::vector<ResultRow> &rows) const {
    double d = std::ldexp(1.0, n);
    double p = t.noise->strength ? *t.noise->strength : *t.eps_target / (1.0 - 1.0 / d);
    ResultRow row = base;
    row.eps = p * (1.0 - 1.0 / d);
    row.delta_norm2_sq = p * p * (1.0 - 1.0 / d);
    row.delta_norm1 = 2.0 * p * (1.0 - 1.0 / d);
    for (Ensemble e : spec_.ensembles) {
      std::optional<VarianceReport> report;
      if (e == Ensemble::Clifford) {
        report = clifford_depolarizing_report(n, p, *base.m2);
      } else if (e == Ensemble::FourDesign) {
        report = four_design_depolarizing_report(n, p);
      }
      emit(row, e, report, rows);
    }
  }

  bool pauli_closed_form_applies(Ensemble e, int n) const {
    if (spec_.observable != "z_prefix" || e == Ensemble::FourDesign ||
        spec_.closed_form == ClosedFormPolicy::Never) {
      return false;
    }
    return spec_.closed_form == ClosedFormPolicy::Prefer || n > kDenseQubitBudget;
  }

  bool depolarizing_closed_form_applies(const Task &t, Ensemble e, int n) const {
    if (spec_.observable != "fidelity" || !is_depolarizing(*t.noise) ||
        e == Ensemble::LocalPauli || spec_.closed_form == ClosedFormPolicy::Never) {
      return false;
    }
    return spec_.closed_form == ClosedFormPolicy::Prefer || n > kDenseQubitBudget;
  }

  void state_rows(const Task &t, int n, const ResultRow &base,
                  std::vector<ResultRow> &rows) const {
    require_qubits(n, kPureQubitBudget, "experiment state");
    Philox state_rng(spec_.seed, state_stream(spec_, t));
    Philox noise_rng(spec_.seed, noise_stream(spec_, t));
    Vector psi = make_state(spec_.family, t.params, &state_rng);
    QuantumState sigma = QuantumState::pure(psi);
    QuantumState rho = sigma;
    if (t.noise->model != "none") {
      rho = apply_noise(build_noise(*t.noise, n, psi, t.eps_target, noise_rng), sigma);
    }
    Operator o = spec_.observable == "fidelity"
                     ? fidelity_observable(psi)
                     : z_prefix_observable(n, static_cast<int>(*t.weight));

    ResultRow row = base;
    row.eps = infidelity(rho, sigma);
    Operator delta = rho.as_operator() - sigma.as_operator();
    row.delta_norm2_sq = trace_square(delta);
    if (delta.is_identity_plus_low_rank() || n <= 8) {
      row.delta_norm1 = trace_norm(delta);
    }
    std::optional<CharFunction> xi_sigma;
    if (n <= 10) {
      CharFunction xi_o = char_function(o);
      CharFunction xi_delta = char_function(delta);
      row.cross_char_norm2_sq = cross_char(xi_delta, xi_o).norm2_squared() / std::ldexp(1.0, n);
      if (!row.m2) {
        xi_sigma = char_function(psi);
        row.m2 = stabilizer_renyi2(*xi_sigma);
      }
    }
    if (spec_.kind == ExperimentKind::Scatter) {
      rows.push_back(row);
      return;
    }

    VarianceOptions vopt;
    vopt.pair_budget = spec_.pair_budget;
    for (Ensemble e : spec_.ensembles) {
      std::optional<VarianceReport> report;
      try {
        if (pauli_closed_form_applies(e, n)) {
          double tr_rho = rho.expectation(o);
          double tr_sigma = sigma.expectation(o);
          report = pauli_observable_report(e, n, static_cast<int>(*t.weight), 1.0, tr_rho,
                                           tr_sigma);
        } else if (depolarizing_closed_form_applies(t, e, n) &&
                   (e == Ensemble::FourDesign || row.m2)) {
          double p = t.noise->strength ? *t.noise->strength
                                       : *t.eps_target / (1.0 - std::ldexp(1.0, -n));
          report = e == Ensemble::Clifford ? clifford_depolarizing_report(n, p, *row.m2)
                                           : four_design_depolarizing_report(n, p);
        } else {
          report = compute_variances(e, o, rho, sigma, vopt);
        }
      } catch (const BudgetError &) {
        report.reset();
      }
      emit(row, e, report, rows);
    }
  }

  void emit(const ResultRow &row, Ensemble e, const std::optional<VarianceReport> &report,
            std::vector<ResultRow> &rows) const {
    for (const ReusePolicy &policy : spec_.reuse) {
      for (EstimatorMode mode : spec_.modes) {
        ResultRow r = row;
        r.ensemble = to_string(e);
        r.mode = to_string(mode);
        double eps = row.eps.value_or(0.0);
        double reuse = mode == EstimatorMode::Standard ? 1.0 : policy.evaluate(row.n, eps);
        r.reuse = reuse;
        if (!report) {
          r.method = to_string(VarianceMethod::Unavailable);
          rows.push_back(std::move(r));
          continue;
        }
        r.method = to_string(report->method);
        r.v = report->v;
        r.v_star_rho = report->v_star_rho;
        r.v_star_delta = report->v_star_delta;
        double v_r = mode == EstimatorMode::Crm ? report->v_r_crm(reuse)
                     : mode == EstimatorMode::Thrifty ? report->v_r_thrifty(reuse)
                                                       : report->v;
        v_r = std::max(0.0, v_r);
        r.v_r = v_r;
        if (spec_.eps_abs) {
          r.n_u = static_cast<double>(n_u_generic(v_r, *spec_.eps_abs, spec_.delta));
        } else if (v_r <= 0.0) {
          r.n_u = 1.0;
        } else if (eps > 0.0) {
          r.n_u = static_cast<double>(n_u_generic(v_r, spec_.r * eps, spec_.delta));
        } else {
          r.n_u = std::numeric_limits<double>::infinity();
        }
        rows.push_back(std::move(r));
      }
    }
  }

  const ExperimentSpec &spec_;
  const RunOptions &options_;
};

/// Evaluates fn(i) for i in [0, count) on a worker pool and hands results to
/// `flush` in index order.
template <typename Result, typename Fn, typename Flush>
void run_ordered(std::size_t count, int threads, Fn fn, Flush flush) {
  std::vector<std::optional<Result>> results(count);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t flushed = 0;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        Result r = fn(i);
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(r);
        while (flushed < count && results[flushed]) {
          flush(*results[flushed]);
          results[flushed].reset();
          ++flushed;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) {
          error = std::current_exception();
        }
        failed.store(true);
      }
    }
  };
  int k = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < k; ++i) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &th : pool) {
    th.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec &spec, const RunOptions &options) {
  std::vector<Task> tasks = enumerate_tasks(spec);
  TaskEvaluator eval(spec, options);
  std::vector<ResultRow> all;
  run_ordered<std::vector<ResultRow>>(
      tasks.size(), options.threads, [&](std::size_t i) { return eval(tasks[i]); },
      [&](const std::vector<ResultRow> &rows) {
        for (const ResultRow &r : rows) {
          if (options.sink) {
            options.sink(r);
          }
          all.push_back(r);
        }
      });
  return all;
}

std::vector<McCheck> mc_validate(const ExperimentSpec &spec, const RunOptions &options) {
  if (spec.kind != ExperimentKind::SampleCost) {
    throw std::invalid_argument("mc-validate needs a sample_cost config");
  }
  std::vector<Task> tasks = enumerate_tasks(spec);
  for (const Task &t : tasks) {
    int n = static_cast<int>(t.params.at("n"));
    if (n > 3) {
      throw BudgetError("mc-validate: n = " + std::to_string(n) + " exceeds the 3-qubit limit");
    }
  }
  std::vector<McCheck> out;
  run_ordered<std::vector<McCheck>>(
      tasks.size(), options.threads,
      [&](std::size_t i) {
        const Task &t = tasks[i];
        int n = static_cast<int>(t.params.at("n"));
        Philox state_rng(spec.seed, state_stream(spec, t));
        Philox noise_rng(spec.seed, noise_stream(spec, t));
        Vector psi = make_state(spec.family, t.params, &state_rng);
        QuantumState sigma = QuantumState::pure(psi);
        QuantumState rho = sigma;
        if (t.noise->model != "none") {
          rho = apply_noise(build_noise(*t.noise, n, psi, t.eps_target, noise_rng), sigma);
        }
        Operator o = spec.observable == "fidelity"
                         ? fidelity_observable(psi)
                         : z_prefix_observable(n, static_cast<int>(*t.weight));
        std::vector<McCheck> checks;
        for (Ensemble e : spec.ensembles) {
          VarianceReport rep = compute_variances(e, o, rho, sigma);
          for (const ReusePolicy &policy : spec.reuse) {
            for (EstimatorMode mode : spec.modes) {
              double eps = infidelity(rho, sigma);
              double reuse = mode == EstimatorMode::Standard ? 1.0 : policy.evaluate(n, eps);
              if (std::isinf(reuse) || reuse > 1e7) {
                throw BudgetError("mc-validate: reuse must be finite and at most 1e7");
              }
              EstimatorConfig cfg;
              cfg.ensemble = e;
              cfg.mode = mode;
              cfg.reuse = static_cast<std::int64_t>(reuse);
              cfg.circuits = spec.mc_circuits;
              Philox mc_rng(spec.seed, mix_stream({noise_stream(spec, t),
                                                   static_cast<std::uint64_t>(e),
                                                   static_cast<std::uint64_t>(mode),
                                                   bits(reuse)}));
              ProtocolResult res = run_protocol(rho, o, cfg, &sigma, mc_rng);
              double m = static_cast<double>(res.per_circuit.size());
              double m4 = 0.0;
              for (double x : res.per_circuit) {
                double dx = x - res.mean;
                m4 += dx * dx * dx * dx;
              }
              m4 /= m;
              double s2 = res.empirical_variance;
              double var_of_var = (m4 - s2 * s2 * (m - 3.0) / (m - 1.0)) / m;
              McCheck c;
              c.row.figure = spec.figure;
              c.row.family = spec.family;
              c.row.n = n;
              c.row.noise = t.noise->label();
              c.row.draw = t.draw;
              c.row.eps = eps;
              c.row.ensemble = to_string(e);
              c.row.mode = to_string(mode);
              c.row.reuse = reuse;
              c.empirical = s2;
              c.analytic = mode == EstimatorMode::Crm      ? rep.v_r_crm(reuse)
                           : mode == EstimatorMode::Thrifty ? rep.v_r_thrifty(reuse)
                                                             : rep.v;
              c.standard_error = std::sqrt(std::max(0.0, var_of_var));
              double diff = c.empirical - c.analytic;
              if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(c.analytic))) {
                c.z = 0.0;
              } else if (c.standard_error > 0.0) {
                c.z = diff / c.standard_error;
              } else {
                c.z = std::numeric_limits<double>::infinity();
              }
              c.mean = res.mean;
              c.target = rho.expectation(o);
              checks.push_back(c);
            }
          }
        }
        return checks;
      },
      [&](const std::vector<McCheck> &checks) {
        out.insert(out.end(), checks.begin(), checks.end());
      });
  return out;
}

}  // namespace crmshadow::experiments
