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


#include "crmshadow/sample_cost.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace crmshadow {

namespace {

void check_precision(double r, double delta) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("relative precision r must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("significance level delta must lie in (0, 1)");
  }
}

std::int64_t ceil_count(double value) {
  if (!(value >= 0.0) || std::isnan(value)) {
    throw std::invalid_argument("sample-cost bound is negative or undefined");
  }
  double c = std::ceil(value);
  if (c >= 9.0e18) {
    throw std::overflow_error("sample-cost bound does not fit in 64 bits");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}

double inverse_reuse(double reuse) {
  if (!(reuse >= 1.0)) {
    throw std::invalid_argument("reuse count R must be at least 1");
  }
  return std::isinf(reuse) ? 0.0 : 1.0 / reuse;
}

double require(const std::optional<double> &v, const char *what, HpfeBound b) {
  if (!v) {
    throw HypothesisError(to_string(b) + " needs " + what);
  }
  return *v;
}

}  // namespace

std::int64_t n_u_generic(double v_r, double eps_abs, double delta) {
  if (!(eps_abs > 0.0)) {
    throw std::invalid_argument("absolute error must be positive");
  }
  check_precision(1.0, delta);
  if (v_r < 0.0) {
    if (v_r < -1e-9) {
      throw std::invalid_argument("variance must be nonnegative");
    }
    v_r = 0.0;
  }
  return ceil_count(68.0 * v_r / (eps_abs * eps_abs) * std::log(2.0 / delta));
}

std::string to_string(HpfeBound b) {
  switch (b) {
    case HpfeBound::Lemma3:
      return "lemma3";
    case HpfeBound::Thm2:
      return "thm2";
    case HpfeBound::Thm4:
      return "thm4";
    case HpfeBound::Thm5Pauli:
      return "thm5_pauli";
    case HpfeBound::Thm5Depolarizing:
      return "thm5_depolarizing";
  }
  return "unknown";
}

HpfeBound parse_hpfe_bound(const std::string &name) {
  for (HpfeBound b : {HpfeBound::Lemma3, HpfeBound::Thm2, HpfeBound::Thm4, HpfeBound::Thm5Pauli,
                      HpfeBound::Thm5Depolarizing}) {
    if (to_string(b) == name) {
      return b;
    }
  }
  throw std::invalid_argument("unknown bound '" + name + "'");
}

std::int64_t n_u_hpfe(HpfeBound bound, const HpfeSetting &s, double r, double delta) {
  check_precision(r, delta);
  if (!s.sigma_pure) {
    throw HypothesisError(to_string(bound) + " requires a pure target state");
  }
  double inv_r = inverse_reuse(s.reuse);
  double log_term = std::log(2.0 / delta);
  double r2 = r * r;
  switch (bound) {
    case HpfeBound::Lemma3: {
      if (s.ensemble == Ensemble::LocalPauli) {
        throw HypothesisError("lemma3 requires a 3-design ensemble");
      }
      if (!(s.eps > 0.0)) {
        throw HypothesisError("lemma3 requires eps > 0");
      }
      double v = require(s.v_star_delta, "V*(O, Delta)", bound);
      return ceil_count(68.0 * (v + 2.0 * inv_r) / (r2 * s.eps * s.eps) * log_term);
    }
    case HpfeBound::Thm2: {
      if (s.ensemble != Ensemble::FourDesign) {
        throw HypothesisError("thm2 requires a 4-design ensemble");
      }
      if (!(s.eps > 0.0)) {
        throw HypothesisError("thm2 requires eps > 0");
      }
      double h = require(s.delta_norm2_sq, "||Delta||_2^2", bound);
      double d = std::ldexp(1.0, s.num_qubits);
      return ceil_count(136.0 * (2.0 * h / d + inv_r) / (r2 * s.eps * s.eps) * log_term);
    }
    case HpfeBound::Thm4: {
      if (s.ensemble != Ensemble::Clifford) {
        throw HypothesisError("thm4 requires the Clifford ensemble");
      }
      if (!(s.eps > 0.0)) {
        throw HypothesisError("thm4 requires eps > 0");
      }
      double h = require(s.delta_norm2_sq, "||Delta||_2^2", bound);
      double m2 = require(s.m2, "M_2(sigma)", bound);
      return ceil_count(136.0 * (std::exp2(1.0 - m2 / 2.0) * h + inv_r) / (r2 * s.eps * s.eps) *
                        log_term);
    }
    case HpfeBound::Thm5Pauli:
    case HpfeBound::Thm5Depolarizing: {
      if (s.ensemble != Ensemble::Clifford) {
        throw HypothesisError(to_string(bound) + " requires the Clifford ensemble");
      }
      bool depolarizing = s.noise == "depolarizing";
      bool pauli = depolarizing || s.noise == "pauli_channel";
      if (bound == HpfeBound::Thm5Depolarizing ? !depolarizing : !pauli) {
        throw HypothesisError(to_string(bound) + " does not apply to noise '" + s.noise + "'");
      }
      double lead = 2.0;
      if (bound == HpfeBound::Thm5Depolarizing) {
        lead = std::exp2(-require(s.m2, "M_2(sigma)", bound));
      }
      double shot = 0.0;
      if (inv_r > 0.0) {
        if (!(s.eps > 0.0)) {
          throw HypothesisError(to_string(bound) + " requires eps > 0 at finite R");
        }
        shot = inv_r / (s.eps * s.eps);
      }
      return ceil_count(136.0 * log_term * (lead + shot) / r2);
    }
  }
  throw std::invalid_argument("unknown bound");
}

std::int64_t n_u_from_report(const VarianceReport &report, double reuse, bool crm, double r,
                             double eps, double delta) {
  check_precision(r, delta);
  if (!(eps > 0.0)) {
    throw std::invalid_argument("infidelity must be positive");
  }
  double v = crm ? report.v_r_crm(reuse) : report.v_r_thrifty(reuse);
  return n_u_generic(v, r * eps, delta);
}

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("linear_fit: size mismatch");
  }
  if (x.size() < 3 || std::set<double>(x.begin(), x.end()).size() < 2) {
    throw std::invalid_argument("linear_fit: need at least three points with distinct x");
  }
  double m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

LinearFit scaling_fit(const std::vector<std::pair<double, double>> &points) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto &[x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("scaling_fit: values must be positive");
    }
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  return linear_fit(lx, ly);
}

}  // namespace crmshadow
