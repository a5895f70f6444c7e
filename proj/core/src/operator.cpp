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

#include "crmshadow/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace crmshadow {

namespace {

double pauli_trace_against_dense(const PauliOp &p, const Matrix &m) {
  // Tr(M P) = sum_b <b|M P|b>, with P|b> = phase(b) |b ^ x>.
  std::size_t d = dim_of(p.num_qubits);
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex base = kIPowers[(p.phase + std::popcount(p.x & p.z)) & 3];
  Complex acc = 0.0;
  for (std::size_t b = 0; b < d; ++b) {
    Complex term = m(b, b ^ p.x);
    acc += (std::popcount(p.z & b) & 1) ? -term : term;
  }
  return (acc * base).real();
}

Matrix pauli_sum_dense(const std::vector<PauliTerm> &terms, int n) {
  std::size_t d = dim_of(n);
  Matrix m = Matrix::Zero(d, d);
  for (const PauliTerm &t : terms) {
    m += t.coeff * pauli_dense(t.pauli);
  }
  return m;
}

}  // namespace

Operator::Operator(int num_qubits) : num_qubits_(num_qubits) {
  require_qubits(num_qubits, kPureQubitBudget, "Operator");
}

Operator Operator::identity(int num_qubits, double coeff) {
  Operator op(num_qubits);
  op.identity_ = coeff;
  return op;
}

Operator Operator::projector(const Vector &v, double weight) {
  std::size_t d = static_cast<std::size_t>(v.size());
  if (d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument("Operator::projector: dimension must be a power of two");
  }
  Operator op(std::countr_zero(d));
  op.rank_one_.push_back({weight, v});
  return op;
}

Operator Operator::pauli(const PauliOp &p, double coeff) {
  if (!p.is_hermitian()) {
    throw std::invalid_argument("Operator::pauli: Pauli term must be Hermitian");
  }
  Operator op(p.num_qubits);
  if (p.is_identity()) {
    op.identity_ = coeff * p.sign();
  } else {
    op.pauli_.push_back({coeff * p.sign(), p.unsigned_part()});
  }
  return op;
}

Operator Operator::dense(const Matrix &m) {
  std::size_t d = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument("Operator::dense: matrix must be square with power-of-two size");
  }
  int n = std::countr_zero(d);
  require_qubits(n, kDenseQubitBudget, "Operator::dense");
  if ((m - m.adjoint()).norm() > 1e-10 * std::max(1.0, m.norm())) {
    throw std::invalid_argument("Operator::dense: matrix is not Hermitian");
  }
  Operator op(n);
  op.dense_ = 0.5 * (m + m.adjoint());
  return op;
}

bool Operator::is_low_rank() const { return identity_ == 0.0 && pauli_.empty() && !dense_; }

bool Operator::is_identity_plus_low_rank() const { return pauli_.empty() && !dense_; }

bool Operator::is_single_pauli() const {
  return identity_ == 0.0 && rank_one_.empty() && !dense_ && pauli_.size() == 1;
}

void Operator::check_compatible(const Operator &other) const {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("Operator: qubit count mismatch");
  }
}

Operator &Operator::operator+=(const Operator &other) {
  check_compatible(other);
  identity_ += other.identity_;
  rank_one_.insert(rank_one_.end(), other.rank_one_.begin(), other.rank_one_.end());
  for (const PauliTerm &t : other.pauli_) {
    bool merged = false;
    for (PauliTerm &mine : pauli_) {
      if (mine.pauli == t.pauli) {
        mine.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) {
      pauli_.push_back(t);
    }
  }
  if (other.dense_) {
    if (dense_) {
      *dense_ += *other.dense_;
    } else {
      dense_ = other.dense_;
    }
  }
  return *this;
}

Operator &Operator::operator-=(const Operator &other) { return *this += other * -1.0; }

Operator &Operator::operator*=(double s) {
  identity_ *= s;
  for (RankOneTerm &t : rank_one_) {
    t.weight *= s;
  }
  for (PauliTerm &t : pauli_) {
    t.coeff *= s;
  }
  if (dense_) {
    *dense_ *= s;
  }
  return *this;
}

Vector Operator::apply(const Vector &v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) {
    throw std::invalid_argument("Operator::apply: dimension mismatch");
  }
  Vector out = identity_ * v;
  for (const RankOneTerm &t : rank_one_) {
    out += (t.weight * t.vec.dot(v)) * t.vec;
  }
  for (const PauliTerm &t : pauli_) {
    out += t.coeff * apply_pauli(t.pauli, v);
  }
  if (dense_) {
    out += *dense_ * v;
  }
  return out;
}

Matrix Operator::apply(const Matrix &m) const {
  if (static_cast<std::size_t>(m.rows()) != dim()) {
    throw std::invalid_argument("Operator::apply: dimension mismatch");
  }
  Matrix out(m.rows(), m.cols());
  if (dense_ && rank_one_.empty() && pauli_.empty()) {
    out = *dense_ * m + identity_ * m;
    return out;
  }
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    out.col(c) = apply(Vector(m.col(c)));
  }
  return out;
}

double Operator::expectation(const Vector &v) const {
  double acc = identity_ * v.squaredNorm();
  for (const RankOneTerm &t : rank_one_) {
    acc += t.weight * std::norm(t.vec.dot(v));
  }
  for (const PauliTerm &t : pauli_) {
    acc += t.coeff * pauli_expectation(t.pauli, v).real();
  }
  if (dense_) {
    acc += v.dot(*dense_ * v).real();
  }
  return acc;
}

double Operator::trace() const {
  double acc = identity_ * static_cast<double>(dim());
  for (const RankOneTerm &t : rank_one_) {
    acc += t.weight * t.vec.squaredNorm();
  }
  if (dense_) {
    acc += dense_->trace().real();
  }
  return acc;
}

Matrix Operator::to_dense() const {
  require_qubits(num_qubits_, kDenseQubitBudget, "Operator::to_dense");
  std::size_t d = dim();
  Matrix m = dense_ ? *dense_ : Matrix::Zero(d, d);
  m.diagonal().array() += identity_;
  for (const RankOneTerm &t : rank_one_) {
    m += t.weight * t.vec * t.vec.adjoint();
  }
  if (!pauli_.empty()) {
    m += pauli_sum_dense(pauli_, num_qubits_);
  }
  return m;
}

Operator Operator::conjugated(const std::function<void(Vector &)> &apply_unitary) const {
  Operator out(num_qubits_);
  out.identity_ = identity_;
  for (const RankOneTerm &t : rank_one_) {
    Vector v = t.vec;
    apply_unitary(v);
    out.rank_one_.push_back({t.weight, std::move(v)});
  }
  if (dense_ || !pauli_.empty()) {
    require_qubits(num_qubits_, kDenseQubitBudget, "Operator::conjugated");
    std::size_t d = dim();
    Matrix m = dense_ ? *dense_ : Matrix::Zero(d, d);
    if (!pauli_.empty()) {
      m += pauli_sum_dense(pauli_, num_qubits_);
    }
    for (std::size_t c = 0; c < d; ++c) {
      Vector col = m.col(c);
      apply_unitary(col);
      m.col(c) = col;
    }
    m.adjointInPlace();
    for (std::size_t c = 0; c < d; ++c) {
      Vector col = m.col(c);
      apply_unitary(col);
      m.col(c) = col;
    }
    out.dense_ = 0.5 * (m + m.adjoint());
  }
  return out;
}

double trace_product(const Operator &a, const Operator &b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("trace_product: qubit count mismatch");
  }
  double d = static_cast<double>(a.dim());
  double acc = a.identity_coefficient() * b.trace();
  acc += b.identity_coefficient() * (a.trace() - a.identity_coefficient() * d);
  // Remaining parts of a (without identity) against parts of b (without identity).
  for (const RankOneTerm &t : a.rank_one_terms()) {
    for (const RankOneTerm &u : b.rank_one_terms()) {
      acc += t.weight * u.weight * std::norm(t.vec.dot(u.vec));
    }
    for (const PauliTerm &u : b.pauli_terms()) {
      acc += t.weight * u.coeff * pauli_expectation(u.pauli, t.vec).real();
    }
    if (b.dense_part()) {
      acc += t.weight * t.vec.dot(*b.dense_part() * t.vec).real();
    }
  }
  for (const PauliTerm &t : a.pauli_terms()) {
    for (const RankOneTerm &u : b.rank_one_terms()) {
      acc += t.coeff * u.weight * pauli_expectation(t.pauli, u.vec).real();
    }
    for (const PauliTerm &u : b.pauli_terms()) {
      if (t.pauli == u.pauli) {
        acc += t.coeff * u.coeff * d;
      }
    }
    if (b.dense_part()) {
      acc += t.coeff * pauli_trace_against_dense(t.pauli, *b.dense_part());
    }
  }
  if (a.dense_part()) {
    const Matrix &m = *a.dense_part();
    for (const RankOneTerm &u : b.rank_one_terms()) {
      acc += u.weight * u.vec.dot(m * u.vec).real();
    }
    for (const PauliTerm &u : b.pauli_terms()) {
      acc += u.coeff * pauli_trace_against_dense(u.pauli, m);
    }
    if (b.dense_part()) {
      acc += m.cwiseProduct(b.dense_part()->transpose()).sum().real();
    }
  }
  return acc;
}

Spectrum spectrum(const Operator &a) {
  Spectrum out;
  double d = static_cast<double>(a.dim());
  if (a.is_identity_plus_low_rank()) {
    const auto &terms = a.rank_one_terms();
    double c = a.identity_coefficient();
    if (terms.empty()) {
      out.values.push_back(c);
      out.multiplicities.push_back(d);
      return out;
    }
    Eigen::Index r = static_cast<Eigen::Index>(terms.size());
    Matrix v(a.dim(), r);
    Eigen::VectorXd w(r);
    for (Eigen::Index k = 0; k < r; ++k) {
      v.col(k) = terms[k].vec;
      w[k] = terms[k].weight;
    }
    Matrix gram = v.adjoint() * v;
    Eigen::SelfAdjointEigenSolver<Matrix> gram_eig(gram);
    double scale = std::max(1.0, gram_eig.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < r; ++k) {
      if (gram_eig.eigenvalues()[k] > 1e-12 * scale) {
        keep.push_back(k);
      }
    }
    Eigen::Index rank = static_cast<Eigen::Index>(keep.size());
    // Orthonormal basis B = V E Lambda^{-1/2}; then B^dagger V = Lambda^{-1/2} E^dagger G.
    Matrix coords(rank, r);
    for (Eigen::Index i = 0; i < rank; ++i) {
      Eigen::Index k = keep[i];
      coords.row(i) = gram_eig.eigenvectors().col(k).adjoint() * gram /
                      std::sqrt(gram_eig.eigenvalues()[k]);
    }
    Matrix small = coords * w.cast<Complex>().asDiagonal() * coords.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> small_eig(0.5 * (small + small.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < rank; ++i) {
      out.values.push_back(c + small_eig.eigenvalues()[i]);
      out.multiplicities.push_back(1.0);
    }
    if (d - rank > 0) {
      out.values.push_back(c);
      out.multiplicities.push_back(d - static_cast<double>(rank));
    }
    return out;
  }
  Matrix m = a.to_dense();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    out.values.push_back(eig.eigenvalues()[i]);
    out.multiplicities.push_back(1.0);
  }
  return out;
}

double trace_norm(const Operator &a) {
  Spectrum s = spectrum(a);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    acc += std::abs(s.values[i]) * s.multiplicities[i];
  }
  return acc;
}

}  // namespace crmshadow
