// Copyright 2026 The hbqme Authors
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

#include "hbqme/operators.hpp"

#include <cmath>
#include <string>

#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

OperatorUnit combine(OperatorUnit a, OperatorUnit b) {
  return (a == OperatorUnit::energy_ev || b == OperatorUnit::energy_ev) ? OperatorUnit::energy_ev
                                                                        : OperatorUnit::dimensionless;
}

int& label_of(BasisState& s, Register reg) {
  switch (reg) {
    case Register::dist: return s.d;
    case Register::prot: return s.p;
    case Register::phn: return s.n;
  }
  return s.n;
}

void check_label(const Basis& basis, Register reg, int label, const char* name) {
  bool ok = false;
  switch (reg) {
    case Register::dist: ok = label >= -1 && label <= 2; break;
    case Register::prot: ok = label == 0 || label == 1; break;
    case Register::phn: ok = label >= 0 && label <= basis.n_max(); break;
  }
  if (!ok) throw DomainError(name, "label " + std::to_string(label) + " is invalid for this register");
}

}  // namespace

std::string_view to_string(PhononConvention c) {
  return c == PhononConvention::bosonic ? "bosonic" : "unit";
}

PhononConvention phonon_convention_from_string(std::string_view name) {
  if (name == "bosonic") return PhononConvention::bosonic;
  if (name == "unit") return PhononConvention::unit;
  throw DomainError("convention", "expected 'bosonic' or 'unit', got '" + std::string(name) + "'");
}

OperatorMatrix::OperatorMatrix(BasisPtr basis, ComplexMatrix entries, OperatorUnit unit)
    : basis_(std::move(basis)), entries_(std::move(entries)), unit_(unit) {
  if (!basis_) throw DomainError("basis", "operator needs a basis");
  const auto d = idx(basis_->dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw DomainError("entries", "matrix shape does not match basis dimension " + std::to_string(d));
  }
}

OperatorMatrix OperatorMatrix::zero(BasisPtr basis, OperatorUnit unit) {
  const auto d = idx(basis->dim());
  return {std::move(basis), ComplexMatrix::Zero(d, d), unit};
}

OperatorMatrix OperatorMatrix::identity(BasisPtr basis) {
  const auto d = idx(basis->dim());
  return {std::move(basis), ComplexMatrix::Identity(d, d)};
}

Complex OperatorMatrix::element(const BasisState& bra, const BasisState& ket) const {
  const auto i = basis_->index(bra);
  const auto j = basis_->index(ket);
  if (!i || !j) return {0.0, 0.0};
  return (*this)(*i, *j);
}

OperatorMatrix OperatorMatrix::adjoint() const { return {basis_, entries_.adjoint(), unit_}; }

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexVector OperatorMatrix::apply(const ComplexVector& v) const {
  if (v.size() != entries_.cols()) throw DomainError("vector", "length does not match basis dimension");
  return entries_ * v;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_space(*basis_, rhs.basis(), "operator sum");
  entries_ += rhs.entries_;
  unit_ = combine(unit_, rhs.unit_);
  return *this;
}

OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) {
  require_same_space(lhs.basis(), rhs.basis(), "operator difference");
  lhs.entries_ -= rhs.entries_;
  lhs.unit_ = combine(lhs.unit_, rhs.unit_);
  return lhs;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_space(lhs.basis(), rhs.basis(), "operator product");
  return {lhs.basis_, lhs.entries_ * rhs.entries_, combine(lhs.unit_, rhs.unit_)};
}

OperatorMatrix operator*(Complex s, OperatorMatrix op) {
  op.entries_ *= s;
  return op;
}

void require_same_space(const Basis& a, const Basis& b, std::string_view what) {
  if (!a.same_space(b)) {
    throw DomainError("basis", std::string(what) + ": basis mismatch (" + std::string(to_string(a.mode())) +
                                   "/" + std::to_string(a.n_max()) + " vs " +
                                   std::string(to_string(b.mode())) + "/" + std::to_string(b.n_max()) + ")");
  }
}

ComplexVector basis_vector(const Basis& basis, const BasisState& s) {
  const auto i = basis.index(s);
  if (!i) throw DomainError("state", s.label() + " is not in the basis");
  ComplexVector v = ComplexVector::Zero(idx(basis.dim()));
  v(idx(*i)) = 1.0;
  return v;
}

OperatorMatrix transition_operator(BasisPtr basis, Register reg, int from_label, int to_label) {
  check_label(*basis, reg, from_label, "from_label");
  check_label(*basis, reg, to_label, "to_label");
  auto op = OperatorMatrix::zero(basis);
  ComplexMatrix m = op.matrix();
  for (std::size_t j = 0; j < basis->dim(); ++j) {
    BasisState s = (*basis)[j];
    if (label_of(s, reg) != from_label) continue;
    label_of(s, reg) = to_label;
    if (const auto i = basis->index(s)) m(idx(*i), idx(j)) = 1.0;
  }
  return {basis, std::move(m)};
}

OperatorMatrix phonon_annihilator(BasisPtr basis, PhononConvention convention) {
  const auto d = idx(basis->dim());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < basis->dim(); ++j) {
    const BasisState& s = (*basis)[j];
    if (s.n == 0) continue;
    if (const auto i = basis->index({s.d, s.p, s.n - 1})) {
      m(idx(*i), idx(j)) = convention == PhononConvention::bosonic ? std::sqrt(static_cast<double>(s.n)) : 1.0;
    }
  }
  return {std::move(basis), std::move(m)};
}

OperatorMatrix phonon_number(BasisPtr basis) {
  const auto d = idx(basis->dim());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < basis->dim(); ++j) m(idx(j), idx(j)) = static_cast<double>((*basis)[j].n);
  return {std::move(basis), std::move(m)};
}

OperatorMatrix projector(BasisPtr basis, const StatePredicate& condition) {
  const auto d = idx(basis->dim());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < basis->dim(); ++j) {
    if (condition((*basis)[j])) m(idx(j), idx(j)) = 1.0;
  }
  return {std::move(basis), std::move(m)};
}

OperatorMatrix conditional_gate(const OperatorMatrix& op, const StatePredicate& condition) {
  if (!op.is_hermitian()) throw DomainError("op", "conditional gate requires a Hermitian operator");
  const Basis& basis = op.basis();
  ComplexMatrix m = op.matrix();
  // Zeroing every off-diagonal element that touches a state failing the
  // condition is exactly D + P C P for a diagonal projector P.
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    const bool keep_j = condition(basis[j]);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
      if (i == j) continue;
      if (!keep_j || !condition(basis[i])) m(idx(i), idx(j)) = 0.0;
    }
  }
  return {op.basis_ptr(), std::move(m), op.unit()};
}

OperatorMatrix restrict_to(const OperatorMatrix& op, BasisPtr target) {
  const Basis& source = op.basis();
  if (source.same_space(*target)) return {std::move(target), op.matrix(), op.unit()};
  std::vector<Eigen::Index> map(target->dim());
  for (std::size_t i = 0; i < target->dim(); ++i) {
    const auto k = source.index((*target)[i]);
    if (!k) throw DomainError("basis", "state " + (*target)[i].label() + " missing from source basis");
    map[i] = idx(*k);
  }
  const auto d = idx(target->dim());
  ComplexMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = op.matrix()(map[i], map[j]);
  }
  return {std::move(target), std::move(m), op.unit()};
}

HamiltonianParams HamiltonianParams::reference(double hbond_energy_ev) {
  HamiltonianParams hp;
  hp.hbar_omega_prot = 0.5 * hbond_energy_ev;
  hp.hbar_omega_dist = 0.5 * hbond_energy_ev;
  hp.hbar_omega_phn = hp.hbar_omega_prot;
  hp.g_dist = 2e-3;
  hp.g_prot = 2e-3;
  return hp;
}

void HamiltonianParams::validate() const {
  const auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError(name, "must be a finite non-negative energy, got " + std::to_string(v));
    }
  };
  nonneg(hbar_omega_dist, "hbar_omega_dist");
  nonneg(hbar_omega_prot, "hbar_omega_prot");
  nonneg(hbar_omega_phn, "hbar_omega_phn");
  nonneg(g_dist, "g_dist");
  nonneg(g_prot, "g_prot");
  const double scale = std::max({hbar_omega_phn, hbar_omega_prot, 1e-300});
  if (std::abs(hbar_omega_phn - hbar_omega_prot) > 1e-12 * scale) {
    throw DomainError("hbar_omega_phn", "resonance requires hbar_omega_phn == hbar_omega_prot");
  }
}

OperatorMatrix build_hamiltonian(BasisPtr basis, const HamiltonianParams& hp) {
  hp.validate();
  const auto full = basis->mode() == BasisMode::full ? basis : Basis::build(BasisMode::full, basis->n_max());

  const auto sigma_dist = transition_operator(full, Register::dist, 1, 0);
  const auto sigma_prot = transition_operator(full, Register::prot, 1, 0);
  const auto a = phonon_annihilator(full, hp.coupling_convention);

  const auto h_dist = hp.hbar_omega_dist * (sigma_dist.adjoint() * sigma_dist) +
                      hp.g_dist * (sigma_dist.adjoint() + sigma_dist);
  const auto h_prot = hp.hbar_omega_phn * phonon_number(full) +
                      hp.hbar_omega_prot * (sigma_prot.adjoint() * sigma_prot) +
                      hp.g_prot * (a * sigma_prot.adjoint() + a.adjoint() * sigma_prot);

  auto h = conditional_gate(h_dist, [](const BasisState& s) { return s.p == 1; }) +
           conditional_gate(h_prot, [](const BasisState& s) { return s.d == 0; });

  ComplexMatrix m = h.matrix();
  if (hp.zero_rest_energies) m.diagonal().setZero();
  return restrict_to(OperatorMatrix(full, std::move(m), OperatorUnit::energy_ev), std::move(basis));
}

}  // namespace hbqme
