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

#include "crmshadow/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace crmshadow {

namespace {

inline int bit(std::uint64_t v, int q) { return static_cast<int>((v >> q) & 1); }

inline void flip_sign(PauliOp &p) { p.phase = static_cast<std::uint8_t>((p.phase + 2) & 3); }

void check_gate(const Gate &g, int n) {
  bool two = g.kind == GateKind::CX || g.kind == GateKind::Swap;
  if (g.q0 < 0 || g.q0 >= n || (two && (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0))) {
    throw std::invalid_argument("Clifford gate addresses an invalid qubit");
  }
}

void push(std::vector<Gate> &gates, PauliOp &a, PauliOp &b, Gate g) {
  a = conjugate_by_gate(g, a);
  b = conjugate_by_gate(g, b);
  gates.push_back(g);
}

// Makes `p` X-type by H/S on every qubit of `qubits` where it has a Z part.
void clear_z(std::vector<Gate> &gates, PauliOp &p, PauliOp &other, std::uint64_t qubits) {
  std::uint64_t todo = p.z & qubits;
  while (todo != 0) {
    int q = std::countr_zero(todo);
    todo &= todo - 1;
    push(gates, p, other, {bit(p.x, q) ? GateKind::S : GateKind::H, q});
  }
}

PauliOp embed(const PauliOp &local, int n, int offset) {
  return PauliOp(n, local.x << offset, local.z << offset, local.phase);
}

CliffordElement compose_stages(int n, const std::vector<std::vector<Gate>> &stages) {
  // U = C_0 C_1 ... C_{n-1}; the last factor acts first.
  std::vector<Gate> gates;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    gates.insert(gates.end(), it->begin(), it->end());
  }
  return CliffordElement(n, std::move(gates));
}

std::vector<Gate> stage_for_pair(const PauliOp &a, const PauliOp &b, int t) {
  std::vector<Gate> sweep = sweep_pair_to_qubit(a, b, t);
  std::vector<Gate> out;
  out.reserve(sweep.size());
  for (auto it = sweep.rbegin(); it != sweep.rend(); ++it) {
    out.push_back(inverse(*it));
  }
  return out;
}

void sample_pair(int m, Philox &rng, PauliOp &a, PauliOp &b) {
  std::uint64_t count = std::uint64_t{1} << (2 * m);
  std::uint64_t ia = 1 + rng.below(count - 1);
  while (true) {
    std::uint64_t ib = rng.below(count);
    if (!index_commutes(ia, ib)) {
      a = PauliOp::from_index(m, ia);
      b = PauliOp::from_index(m, ib);
      break;
    }
  }
  if (rng.bit()) {
    flip_sign(a);
  }
  if (rng.bit()) {
    flip_sign(b);
  }
}

}  // namespace

Gate inverse(const Gate &g) {
  switch (g.kind) {
    case GateKind::S:
      return {GateKind::Sdg, g.q0, g.q1};
    case GateKind::Sdg:
      return {GateKind::S, g.q0, g.q1};
    default:
      return g;
  }
}

PauliOp conjugate_by_gate(const Gate &g, const PauliOp &p) {
  PauliOp out = p;
  int a = g.q0;
  std::uint64_t ma = 1ull << a;
  int xa = bit(p.x, a);
  int za = bit(p.z, a);
  switch (g.kind) {
    case GateKind::H:
      if (xa && za) {
        flip_sign(out);
      }
      out.x = (p.x & ~ma) | (static_cast<std::uint64_t>(za) << a);
      out.z = (p.z & ~ma) | (static_cast<std::uint64_t>(xa) << a);
      break;
    case GateKind::S:
      if (xa && za) {
        flip_sign(out);
      }
      if (xa) {
        out.z ^= ma;
      }
      break;
    case GateKind::Sdg:
      if (xa && !za) {
        flip_sign(out);
      }
      if (xa) {
        out.z ^= ma;
      }
      break;
    case GateKind::X:
      if (za) {
        flip_sign(out);
      }
      break;
    case GateKind::Z:
      if (xa) {
        flip_sign(out);
      }
      break;
    case GateKind::CX: {
      int t = g.q1;
      int xt = bit(p.x, t);
      int zt = bit(p.z, t);
      if (xa && zt && (xt ^ za ^ 1)) {
        flip_sign(out);
      }
      if (xa) {
        out.x ^= 1ull << t;
      }
      if (zt) {
        out.z ^= ma;
      }
      break;
    }
    case GateKind::Swap: {
      int t = g.q1;
      std::uint64_t mt = 1ull << t;
      int xt = bit(p.x, t);
      int zt = bit(p.z, t);
      out.x = (p.x & ~(ma | mt)) | (static_cast<std::uint64_t>(xa) << t) |
              (static_cast<std::uint64_t>(xt) << a);
      out.z = (p.z & ~(ma | mt)) | (static_cast<std::uint64_t>(za) << t) |
              (static_cast<std::uint64_t>(zt) << a);
      break;
    }
  }
  return out;
}

void apply_gate(const Gate &g, Vector &v) {
  std::size_t d = static_cast<std::size_t>(v.size());
  std::size_t ma = std::size_t{1} << g.q0;
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t b = 0; b < d; ++b) {
        if (!(b & ma)) {
          Complex u = v[b];
          Complex w = v[b | ma];
          v[b] = r * (u + w);
          v[b | ma] = r * (u - w);
        }
      }
      break;
    case GateKind::S:
    case GateKind::Sdg: {
      Complex ph = g.kind == GateKind::S ? i_unit : -i_unit;
      for (std::size_t b = 0; b < d; ++b) {
        if (b & ma) {
          v[b] *= ph;
        }
      }
      break;
    }
    case GateKind::X:
      for (std::size_t b = 0; b < d; ++b) {
        if (!(b & ma)) {
          std::swap(v[b], v[b | ma]);
        }
      }
      break;
    case GateKind::Z:
      for (std::size_t b = 0; b < d; ++b) {
        if (b & ma) {
          v[b] = -v[b];
        }
      }
      break;
    case GateKind::CX: {
      std::size_t mt = std::size_t{1} << g.q1;
      for (std::size_t b = 0; b < d; ++b) {
        if ((b & ma) && !(b & mt)) {
          std::swap(v[b], v[b | mt]);
        }
      }
      break;
    }
    case GateKind::Swap: {
      std::size_t mt = std::size_t{1} << g.q1;
      for (std::size_t b = 0; b < d; ++b) {
        if ((b & ma) && !(b & mt)) {
          std::swap(v[b], v[(b & ~ma) | mt]);
        }
      }
      break;
    }
  }
}

CliffordElement::CliffordElement(int num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits), gates_(std::move(gates)) {
  require_qubits(num_qubits, kMaxPauliQubits, "CliffordElement");
  for (const Gate &g : gates_) {
    check_gate(g, num_qubits_);
  }
  for (int q = 0; q < num_qubits_; ++q) {
    PauliOp px(num_qubits_, 1ull << q, 0);
    PauliOp pz(num_qubits_, 0, 1ull << q);
    for (const Gate &g : gates_) {
      px = conjugate_by_gate(g, px);
      pz = conjugate_by_gate(g, pz);
    }
    images_x_.push_back(px);
    images_z_.push_back(pz);
  }
}

PauliOp CliffordElement::conjugate(const PauliOp &p) const {
  if (p.num_qubits != num_qubits_) {
    throw std::invalid_argument("CliffordElement::conjugate: qubit count mismatch");
  }
  // P(x, z) = i^{|x & z|} X^x Z^z.
  std::uint8_t ph = static_cast<std::uint8_t>((p.phase + std::popcount(p.x & p.z)) & 3);
  PauliOp out(num_qubits_, 0, 0, ph);
  for (int q = 0; q < num_qubits_; ++q) {
    if (bit(p.x, q)) {
      out = out * images_x_[q];
    }
  }
  for (int q = 0; q < num_qubits_; ++q) {
    if (bit(p.z, q)) {
      out = out * images_z_[q];
    }
  }
  return out;
}

void CliffordElement::apply(Vector &v) const {
  if (static_cast<std::size_t>(v.size()) != dim_of(num_qubits_)) {
    throw std::invalid_argument("CliffordElement::apply: dimension mismatch");
  }
  for (const Gate &g : gates_) {
    apply_gate(g, v);
  }
}

void CliffordElement::apply_adjoint(Vector &v) const {
  if (static_cast<std::size_t>(v.size()) != dim_of(num_qubits_)) {
    throw std::invalid_argument("CliffordElement::apply_adjoint: dimension mismatch");
  }
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    apply_gate(crmshadow::inverse(*it), v);
  }
}

Matrix CliffordElement::dense() const {
  require_qubits(num_qubits_, kDenseQubitBudget, "CliffordElement::dense");
  std::size_t d = dim_of(num_qubits_);
  Matrix u(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Vector e = Vector::Zero(d);
    e[c] = 1.0;
    apply(e);
    u.col(c) = e;
  }
  return u;
}

CliffordElement CliffordElement::inverse() const {
  std::vector<Gate> inv;
  inv.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    inv.push_back(crmshadow::inverse(*it));
  }
  return CliffordElement(num_qubits_, std::move(inv));
}

std::string CliffordElement::tableau_key() const {
  std::string key;
  for (int q = 0; q < num_qubits_; ++q) {
    key += images_x_[q].str();
    key += '|';
    key += images_z_[q].str();
    key += ';';
  }
  return key;
}

std::vector<Gate> sweep_pair_to_qubit(PauliOp a, PauliOp b, int t) {
  if (!a.is_hermitian() || !b.is_hermitian() || commutes(a, b)) {
    throw std::invalid_argument("sweep_pair_to_qubit: need Hermitian anticommuting Paulis");
  }
  int n = a.num_qubits;
  std::uint64_t all = (n == 64 ? ~0ull : ((1ull << n) - 1));
  std::uint64_t allowed = all & ~((1ull << t) - 1);
  if (((a.x | a.z | b.x | b.z) & ~allowed) != 0) {
    throw std::invalid_argument("sweep_pair_to_qubit: support below target qubit");
  }
  std::vector<Gate> gates;
  std::uint64_t mt = 1ull << t;

  clear_z(gates, a, b, allowed);
  int collector = std::countr_zero(a.x);
  std::uint64_t rest = a.x & ~(1ull << collector);
  while (rest != 0) {
    int q = std::countr_zero(rest);
    rest &= rest - 1;
    push(gates, a, b, {GateKind::CX, collector, q});
  }
  if (collector != t) {
    push(gates, a, b, {GateKind::Swap, t, collector});
  }

  bool b_is_z = b.x == 0 && b.z == mt;
  if (!b_is_z) {
    push(gates, a, b, {GateKind::H, t});
    clear_z(gates, b, a, allowed);
    std::uint64_t others = b.x & ~mt;
    while (others != 0) {
      int q = std::countr_zero(others);
      others &= others - 1;
      push(gates, a, b, {GateKind::CX, t, q});
    }
    push(gates, a, b, {GateKind::H, t});
  }
  if (a.phase == 2) {
    push(gates, a, b, {GateKind::Z, t});
  }
  if (b.phase == 2) {
    push(gates, a, b, {GateKind::X, t});
  }
  if (!(a.x == mt && a.z == 0 && a.phase == 0 && b.x == 0 && b.z == mt && b.phase == 0)) {
    throw std::logic_error("sweep_pair_to_qubit: sweep did not reach the target");
  }
  return gates;
}

CliffordElement sample_clifford(int n, Philox &rng) {
  require_qubits(n, kMaxPauliQubits / 2, "sample_clifford");
  std::vector<std::vector<Gate>> stages;
  for (int t = 0; t < n; ++t) {
    PauliOp a, b;
    sample_pair(n - t, rng, a, b);
    stages.push_back(stage_for_pair(embed(a, n, t), embed(b, n, t), t));
  }
  return compose_stages(n, stages);
}

CliffordElement sample_local_clifford(int n, Philox &rng) {
  require_qubits(n, kMaxPauliQubits, "sample_local_clifford");
  std::vector<Gate> gates;
  for (int q = 0; q < n; ++q) {
    PauliOp a, b;
    sample_pair(1, rng, a, b);
    std::vector<Gate> stage = stage_for_pair(embed(a, n, q), embed(b, n, q), q);
    gates.insert(gates.end(), stage.begin(), stage.end());
  }
  return CliffordElement(n, std::move(gates));
}

namespace {

// All signed anticommuting (A, B) pairs on m qubits.
std::vector<std::pair<PauliOp, PauliOp>> all_pairs(int m) {
  std::vector<std::pair<PauliOp, PauliOp>> out;
  std::uint64_t count = std::uint64_t{1} << (2 * m);
  for (std::uint64_t ia = 1; ia < count; ++ia) {
    for (std::uint64_t ib = 0; ib < count; ++ib) {
      if (index_commutes(ia, ib)) {
        continue;
      }
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          PauliOp a = PauliOp::from_index(m, ia);
          PauliOp b = PauliOp::from_index(m, ib);
          a.phase = static_cast<std::uint8_t>(2 * sa);
          b.phase = static_cast<std::uint8_t>(2 * sb);
          out.emplace_back(a, b);
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<CliffordElement> enumerate_cliffords(int n) {
  if (n < 1 || n > 2) {
    throw BudgetError("enumerate_cliffords: only n = 1 or 2 is supported");
  }
  std::vector<std::vector<std::vector<Gate>>> per_stage(n);
  for (int t = 0; t < n; ++t) {
    for (const auto &[a, b] : all_pairs(n - t)) {
      per_stage[t].push_back(stage_for_pair(embed(a, n, t), embed(b, n, t), t));
    }
  }
  std::vector<CliffordElement> out;
  std::vector<std::vector<Gate>> chosen(n);
  std::function<void(int)> recurse = [&](int t) {
    if (t == n) {
      out.push_back(compose_stages(n, chosen));
      return;
    }
    for (const auto &stage : per_stage[t]) {
      chosen[t] = stage;
      recurse(t + 1);
    }
  };
  recurse(0);
  return out;
}

std::vector<CliffordElement> enumerate_local_cliffords(int n) {
  if (n < 1 || n > 3) {
    throw BudgetError("enumerate_local_cliffords: only n <= 3 is supported");
  }
  std::vector<std::vector<std::vector<Gate>>> per_qubit(n);
  for (int q = 0; q < n; ++q) {
    for (const auto &[a, b] : all_pairs(1)) {
      per_qubit[q].push_back(stage_for_pair(embed(a, n, q), embed(b, n, q), q));
    }
  }
  std::vector<CliffordElement> out;
  std::vector<Gate> gates;
  std::function<void(int)> recurse = [&](int q) {
    if (q == n) {
      out.emplace_back(n, gates);
      return;
    }
    for (const auto &stage : per_qubit[q]) {
      std::size_t mark = gates.size();
      gates.insert(gates.end(), stage.begin(), stage.end());
      recurse(q + 1);
      gates.resize(mark);
    }
  };
  recurse(0);
  return out;
}

}  // namespace crmshadow
