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

#include "crmshadow/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace crmshadow {

namespace {

constexpr double kNormTolerance = 1e-10;

int param_int(const StateParams &params, const std::string &key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("missing state parameter '" + key + "'");
  }
  double v = it->second;
  if (v != std::floor(v)) {
    throw std::invalid_argument("state parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

double param_or(const StateParams &params, const std::string &key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Vector product_state(const std::vector<Vector> &factors) {
  int n = static_cast<int>(factors.size());
  require_qubits(n, kPureQubitBudget, "product_state");
  std::size_t d = dim_of(n);
  Vector out(d);
  for (std::size_t b = 0; b < d; ++b) {
    Complex amp = 1.0;
    for (int q = 0; q < n; ++q) {
      amp *= factors[q][(b >> q) & 1];
    }
    out[b] = amp;
  }
  return out;
}

void apply_tfim(const Vector &in, Vector &out, int n, double h, double j) {
  std::size_t d = dim_of(n);
  for (std::size_t b = 0; b < d; ++b) {
    double diag = 0.0;
    for (int q = 0; q < n; ++q) {
      int nb = (q + 1) % n;
      int parity = static_cast<int>(((b >> q) ^ (b >> nb)) & 1);
      diag += parity ? 1.0 : -1.0;
    }
    Complex acc = j * diag * in[b];
    for (int q = 0; q < n; ++q) {
      acc -= h * in[b ^ (std::size_t{1} << q)];
    }
    out[b] = acc;
  }
}

void fix_gauge(Vector &v) {
  double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-10 * scale) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

Vector tfim_dense(int n, double h, double j) {
  std::size_t d = dim_of(n);
  Matrix hmat(d, d);
  Vector basis = Vector::Zero(d);
  Vector col(d);
  for (std::size_t c = 0; c < d; ++c) {
    basis.setZero();
    basis[c] = 1.0;
    apply_tfim(basis, col, n, h, j);
    hmat.col(c) = col;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hmat);
  double e0 = eig.eigenvalues()[0];
  double tol = 1e-9 * std::max(1.0, std::abs(e0));
  Eigen::Index g = 1;
  while (g < eig.eigenvalues().size() && eig.eigenvalues()[g] - e0 < tol) {
    ++g;
  }
  Matrix ground = eig.eigenvectors().leftCols(g);
  Vector reference = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  Vector proj = ground * (ground.adjoint() * reference);
  Vector out = proj.norm() > 1e-8 ? Vector(proj / proj.norm()) : Vector(ground.col(0));
  fix_gauge(out);
  return out;
}

// Lanczos with full reorthogonalization, started from |+>^n. The start vector
// and the Hamiltonian are both even under prod X, so the iteration stays in
// the even sector, which holds the ground state.
Vector tfim_lanczos(int n, double h, double j) {
  std::size_t d = dim_of(n);
  const int max_steps = 250;
  std::vector<Vector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  Vector v = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  Vector w(d);
  Vector best;
  double previous = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    apply_tfim(v, w, n, h, j);
    double a = v.dot(w).real();
    alpha.push_back(a);
    for (const Vector &u : basis) {
      w -= u.dot(w) * u;
    }
    for (const Vector &u : basis) {
      w -= u.dot(w) * u;
    }
    double b = w.norm();
    int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) {
        tri(i, i + 1) = beta[i];
        tri(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    double e0 = eig.eigenvalues()[0];
    double residual = b * std::abs(eig.eigenvectors()(m - 1, 0));
    bool converged = (step > 2 && residual < 1e-11 * std::max(1.0, std::abs(e0))) || b < 1e-13;
    if (converged || step + 1 == max_steps) {
      best = Vector::Zero(d);
      for (int i = 0; i < m; ++i) {
        best += eig.eigenvectors()(i, 0) * basis[i];
      }
      if (!converged && std::abs(previous - e0) > 1e-12) {
        throw std::runtime_error("tfim_ground_state: Lanczos did not converge");
      }
      break;
    }
    previous = e0;
    beta.push_back(b);
    v = w / b;
  }
  best /= best.norm();
  fix_gauge(best);
  return best;
}

}  // namespace

QuantumState::QuantumState(int n, std::optional<Vector> v, std::optional<Operator> op)
    : num_qubits_(n), vector_(std::move(v)), operator_(std::move(op)) {}

QuantumState QuantumState::pure(Vector v) {
  std::size_t d = static_cast<std::size_t>(v.size());
  if (d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument("QuantumState::pure: dimension must be a power of two");
  }
  if (std::abs(v.norm() - 1.0) > kNormTolerance) {
    throw PhysicalityError("QuantumState::pure: state vector is not normalized");
  }
  int n = std::countr_zero(d);
  require_qubits(n, kPureQubitBudget, "QuantumState::pure");
  return QuantumState(n, std::move(v), std::nullopt);
}

QuantumState QuantumState::mixed(Operator rho) {
  if (std::abs(rho.trace() - 1.0) > kNormTolerance) {
    throw PhysicalityError("QuantumState::mixed: trace differs from one");
  }
  bool check_psd = rho.is_identity_plus_low_rank() || rho.num_qubits() <= 10;
  if (check_psd) {
    Spectrum s = spectrum(rho);
    double lowest = *std::min_element(s.values.begin(), s.values.end());
    if (lowest < -1e-10) {
      throw PhysicalityError("QuantumState::mixed: operator is not positive semidefinite");
    }
  }
  int n = rho.num_qubits();
  return QuantumState(n, std::nullopt, std::move(rho));
}

QuantumState QuantumState::mixture(const std::vector<double> &probs,
                                   const std::vector<Vector> &vecs) {
  if (probs.size() != vecs.size() || probs.empty()) {
    throw std::invalid_argument("QuantumState::mixture: size mismatch");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw PhysicalityError("QuantumState::mixture: negative weight");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw PhysicalityError("QuantumState::mixture: weights do not sum to one");
  }
  Operator op = Operator::projector(vecs[0], probs[0]);
  for (std::size_t i = 1; i < vecs.size(); ++i) {
    op += Operator::projector(vecs[i], probs[i]);
  }
  for (const Vector &v : vecs) {
    if (std::abs(v.norm() - 1.0) > kNormTolerance) {
      throw PhysicalityError("QuantumState::mixture: component is not normalized");
    }
  }
  int n = op.num_qubits();
  return QuantumState(n, std::nullopt, std::move(op));
}

const Vector &QuantumState::vector() const {
  if (!vector_) {
    throw std::logic_error("QuantumState::vector: state is not stored as a vector");
  }
  return *vector_;
}

Operator QuantumState::as_operator() const {
  if (vector_) {
    return Operator::projector(*vector_);
  }
  return *operator_;
}

Matrix QuantumState::density_matrix() const {
  if (vector_) {
    require_qubits(num_qubits_, kDenseQubitBudget, "QuantumState::density_matrix");
    return *vector_ * vector_->adjoint();
  }
  return operator_->to_dense();
}

double QuantumState::purity() const {
  if (vector_) {
    return 1.0;
  }
  return trace_square(*operator_);
}

double QuantumState::expectation(const Operator &o) const {
  if (vector_) {
    return o.expectation(*vector_);
  }
  return trace_product(*operator_, o);
}

Vector t_state() { return s_nk_state(1, 1, std::numbers::pi / 4); }

Vector s_nk_state(int n, int k, double theta) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("s_nk_state: need 0 <= k <= n");
  }
  Vector zero(2);
  zero << 1.0, 0.0;
  Vector t(2);
  t << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), theta);
  std::vector<Vector> factors;
  for (int q = 0; q < n; ++q) {
    factors.push_back(q < n - k ? zero : t);
  }
  return product_state(factors);
}

Vector magic_cluster_state(int n) {
  Vector v = s_nk_state(n, n, std::numbers::pi / 4);
  for (std::size_t b = 0; b < static_cast<std::size_t>(v.size()); ++b) {
    int parity = 0;
    for (int q = 0; q + 1 < n; ++q) {
      parity ^= static_cast<int>((b >> q) & (b >> (q + 1)) & 1);
    }
    if (parity) {
      v[b] = -v[b];
    }
  }
  return v;
}

Vector ghz_state(int n) {
  require_qubits(n, kPureQubitBudget, "ghz_state");
  std::size_t d = dim_of(n);
  Vector v = Vector::Zero(d);
  v[0] = 1.0 / std::sqrt(2.0);
  v[d - 1] = 1.0 / std::sqrt(2.0);
  return v;
}

Vector tfim_ground_state(int n, double h, double j) {
  require_qubits(n, 16, "tfim_ground_state");
  if (n < 2) {
    throw std::invalid_argument("tfim_ground_state: need at least two sites");
  }
  return n <= 8 ? tfim_dense(n, h, j) : tfim_lanczos(n, h, j);
}

Vector haar_state(int n, Philox &rng) {
  require_qubits(n, kPureQubitBudget, "haar_state");
  std::size_t d = dim_of(n);
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = rng.complex_normal();
  }
  return v / v.norm();
}

Vector structured_random_state(int n, Philox &rng) {
  if (n < 2) {
    throw std::invalid_argument("structured_random_state: need at least two qubits");
  }
  double alpha = std::exp(rng.uniform(-5.0, 0.0));
  double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  Vector phi0 = haar_state(n - 1, rng);
  Vector phi1 = haar_state(n - 1, rng);
  std::size_t d = dim_of(n);
  Vector v(d);
  for (std::size_t b = 0; b < d; ++b) {
    v[b] = (b & 1) ? beta * phi1[b >> 1] : alpha * phi0[b >> 1];
  }
  return v / v.norm();
}

const std::vector<std::string> &state_families() {
  static const std::vector<std::string> kFamilies = {
      "s_nk",        "s_nk_theta", "magic_cluster",    "ghz",
      "tfim_ground", "haar_random", "structured_random"};
  return kFamilies;
}

bool family_is_random(const std::string &family) {
  return family == "haar_random" || family == "structured_random";
}

Vector make_state(const std::string &family, const StateParams &params, Philox *rng) {
  int n = param_int(params, "n");
  if (family == "s_nk") {
    return s_nk_state(n, param_int(params, "k"), std::numbers::pi / 4);
  }
  if (family == "s_nk_theta") {
    return s_nk_state(n, param_int(params, "k"), param_or(params, "theta", std::numbers::pi / 4));
  }
  if (family == "magic_cluster") {
    return magic_cluster_state(n);
  }
  if (family == "ghz") {
    return ghz_state(n);
  }
  if (family == "tfim_ground") {
    return tfim_ground_state(n, param_or(params, "h", 1.0), param_or(params, "J", 1.0));
  }
  if (family_is_random(family)) {
    if (rng == nullptr) {
      throw std::invalid_argument("make_state: family '" + family + "' needs a random generator");
    }
    return family == "haar_random" ? haar_state(n, *rng) : structured_random_state(n, *rng);
  }
  throw std::invalid_argument("make_state: unknown family '" + family + "'");
}

std::optional<double> analytic_stabilizer_renyi2(const std::string &family,
                                                 const StateParams &params) {
  if (family == "s_nk" || family == "s_nk_theta") {
    double theta = family == "s_nk" ? std::numbers::pi / 4 : param_or(params, "theta", std::numbers::pi / 4);
    int k = param_int(params, "k");
    return k == 0 ? 0.0 : -k * std::log2((7.0 + std::cos(4.0 * theta)) / 8.0);
  }
  if (family == "magic_cluster") {
    return param_int(params, "n") * std::log2(4.0 / 3.0);
  }
  if (family == "ghz") {
    return 0.0;
  }
  return std::nullopt;
}

Matrix haar_unitary(std::size_t dim, Philox &rng) {
  Matrix z(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      z(r, c) = rng.complex_normal() / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < dim; ++i) {
    Complex diag = r(i, i);
    q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

double infidelity(const QuantumState &rho, const QuantumState &sigma) {
  if (rho.num_qubits() != sigma.num_qubits()) {
    throw std::invalid_argument("infidelity: qubit count mismatch");
  }
  if (sigma.is_pure()) {
    return 1.0 - rho.expectation(Operator::projector(sigma.vector()));
  }
  if (rho.is_pure()) {
    return 1.0 - sigma.expectation(Operator::projector(rho.vector()));
  }
  // sqrt(F) = ||sqrt(rho) sqrt(sigma)||_1, evaluated on the numerical
  // supports so that eigenvalue noise does not enter through a square root.
  auto support_root = [](const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const Eigen::VectorXd &ev = es.eigenvalues();
    double cut = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > cut) {
        keep.push_back(i);
      }
    }
    Matrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]) * std::sqrt(ev(keep[j]));
    }
    return out;
  };
  Matrix a = support_root(rho.density_matrix());
  Matrix b = support_root(sigma.density_matrix());
  Matrix overlap = a.adjoint() * b;
  double root_fid = overlap.size() == 0 ? 0.0 : Eigen::BDCSVD<Matrix>(overlap).singularValues().sum();
  return 1.0 - root_fid * root_fid;
}

Deviation deviation(const QuantumState &rho, const QuantumState &sigma) {
  if (rho.num_qubits() != sigma.num_qubits()) {
    throw std::invalid_argument("deviation: qubit count mismatch");
  }
  return Deviation{rho.as_operator() - sigma.as_operator()};
}

Operator fidelity_observable(const Vector &sigma) {
  Operator o = Operator::projector(sigma);
  int n = o.num_qubits();
  o += Operator::identity(n, -1.0 / static_cast<double>(dim_of(n)));
  return o;
}

Operator z_prefix_observable(int n, int weight) {
  if (weight < 1 || weight > n) {
    throw std::invalid_argument("z_prefix_observable: weight out of range");
  }
  std::uint64_t zbits = (weight == 64) ? ~0ull : ((1ull << weight) - 1);
  return Operator::pauli(PauliOp(n, 0, zbits, 0));
}

}  // namespace crmshadow
