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

#include "hbqme/generator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseComplex to_sparse(const ComplexMatrix& m) {
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) t.emplace_back(i, j, m(i, j));
    }
  }
  SparseComplex s(m.rows(), m.cols());
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

// Accumulates scale * (B (x) A) into the triplet list.
void add_kron(std::vector<Triplet>& out, const SparseComplex& b, const SparseComplex& a, Complex scale) {
  const Eigen::Index da = a.rows();
  for (Eigen::Index jb = 0; jb < b.outerSize(); ++jb) {
    for (SparseComplex::InnerIterator eb(b, jb); eb; ++eb) {
      for (Eigen::Index ja = 0; ja < a.outerSize(); ++ja) {
        for (SparseComplex::InnerIterator ea(a, ja); ea; ++ea) {
          out.emplace_back(eb.row() * da + ea.row(), eb.col() * da + ea.col(), scale * eb.value() * ea.value());
        }
      }
    }
  }
}

SparseComplex sparse_identity(Eigen::Index d) {
  SparseComplex s(d, d);
  s.setIdentity();
  return s;
}

double max_rate(std::span<const Channel> channels) {
  double r = 0.0;
  for (const auto& ch : channels) r = std::max({r, ch.gamma_out(), ch.gamma_in()});
  return r;
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (v.size() != d * d) throw DomainError("v", "length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

SparseComplex generator_matrix(const OperatorMatrix& h, std::span<const Channel> channels) {
  for (const auto& ch : channels) require_same_space(h.basis(), ch.jump().basis(), "generator_matrix");
  const auto d = static_cast<Eigen::Index>(h.dim());
  const SparseComplex id = sparse_identity(d);
  const SparseComplex hs = to_sparse(h.matrix());
  const SparseComplex hst = hs.transpose();

  std::vector<Triplet> t;
  const Complex minus_i(0.0, -1.0);
  add_kron(t, id, hs, minus_i);
  add_kron(t, hst, id, -minus_i);

  auto add_lindblad = [&](const SparseComplex& x, double rate) {
    if (rate == 0.0) return;
    const SparseComplex xd = x.adjoint();
    const SparseComplex k = xd * x;
    const SparseComplex kt = k.transpose();
    const SparseComplex xc = x.conjugate();
    add_kron(t, xc, x, rate);
    add_kron(t, id, k, -0.5 * rate);
    add_kron(t, kt, id, -0.5 * rate);
  };
  for (const auto& ch : channels) {
    const SparseComplex a = to_sparse(ch.jump().matrix());
    add_lindblad(a, ch.gamma_out());
    add_lindblad(SparseComplex(a.adjoint()), ch.gamma_in());
  }

  SparseComplex g(d * d, d * d);
  g.setFromTriplets(t.begin(), t.end());
  g /= kHbarEvS;
  g.prune(Complex(0.0, 0.0));
  return g;
}

double steady_residual_ev(const ComplexMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels) {
  return (kHbarEvS * qme_rhs(rho, h, channels)).cwiseAbs().maxCoeff();
}

DensityMatrix steady_state(const OperatorMatrix& h, std::span<const Channel> channels, const DensityMatrix& rho0,
                           const SteadyStateOptions& options) {
  require_same_space(h.basis(), rho0.basis(), "steady_state");
  const double rate = max_rate(channels);
  if (rate == 0.0) {
    throw SteadyStateError("no unique steady state in the unitary limit: every dissipation rate is zero");
  }
  // Work in energy units so the shift is well scaled.
  const SparseComplex g = kHbarEvS * generator_matrix(h, channels);
  double diag = 0.0;
  for (Eigen::Index k = 0; k < g.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(g, k); it; ++it) {
      if (it.row() == it.col()) diag = std::max(diag, std::abs(it.value()));
    }
  }
  const double s = options.relative_shift * std::max(diag, rate);
  const ComplexVector v0 = vectorize(rho0.matrix());
  const SparseComplex id = sparse_identity(g.rows());

  auto limit_at = [&](double shift) {
    SparseComplex a = shift * id - g;
    a.makeCompressed();
    Eigen::SparseLU<SparseComplex, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw SteadyStateError("resolvent factorization failed");
    ComplexVector x = shift * lu.solve(v0);
    if (lu.info() != Eigen::Success || !x.allFinite()) throw SteadyStateError("resolvent solve failed");
    return x;
  };
  // f(s) = x0 + c1 s + c2 s^2 + ...; eliminate the first two orders.
  const ComplexVector f1 = limit_at(s);
  const ComplexVector f2 = limit_at(2.0 * s);
  const ComplexVector f4 = limit_at(4.0 * s);
  const ComplexVector x = (8.0 * f1 - 6.0 * f2 + f4) / 3.0;

  ComplexMatrix rho = unvectorize(x, h.dim());
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex tr = rho.trace();
  if (std::abs(tr) < 0.5) throw SteadyStateError("steady state lost normalization");
  rho /= tr.real();

  const double residual = steady_residual_ev(rho, h, channels);
  if (residual > options.relative_residual_limit * rate) {
    throw SteadyStateError("steady state residual " + std::to_string(residual) + " eV exceeds limit");
  }
  if (auto err = DensityMatrix::check(rho, 1e-8)) throw SteadyStateError("steady state is not physical: " + *err);
  // Remove residual rounding so the result meets the strict invariants.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho0.basis_ptr(), std::move(rho));
}

QmeKernel::QmeKernel(const OperatorMatrix& h, std::span<const Channel> channels) : dim_(h.dim()) {
  const auto d = static_cast<Eigen::Index>(dim_);
  ComplexMatrix k = ComplexMatrix::Zero(d, d);
  auto add = [&](const ComplexMatrix& x, double rate) {
    if (rate == 0.0) return;
    k += rate * x.adjoint() * x;
    SparseComplex xs = to_sparse(x);
    jumps_.push_back({rate, xs, SparseComplex(xs.adjoint())});
  };
  for (const auto& ch : channels) {
    require_same_space(h.basis(), ch.jump().basis(), "QmeKernel");
    add(ch.jump().matrix(), ch.gamma_out());
    add(ch.jump().matrix().adjoint(), ch.gamma_in());
  }
  m_dissip_ = to_sparse(-0.5 * k);
  m_full_ = to_sparse(Complex(0.0, -1.0) * h.matrix() - 0.5 * k);
  scratch_.resize(d, d);
}

void QmeKernel::apply(const SparseComplex& m, const ComplexMatrix& rho, ComplexMatrix& out) {
  // M rho + rho M^+ = X + X^+ for Hermitian rho.
  scratch_.noalias() = m * rho;
  out = scratch_ + scratch_.adjoint();
  for (const auto& j : jumps_) {
    scratch_.noalias() = j.op * rho;
    out.noalias() += j.rate * (scratch_ * j.op_adjoint);
  }
  out /= kHbarEvS;
}

void QmeKernel::rhs(const ComplexMatrix& rho, ComplexMatrix& out) { apply(m_full_, rho, out); }

void QmeKernel::dissipation(const ComplexMatrix& rho, ComplexMatrix& out) { apply(m_dissip_, rho, out); }

}  // namespace hbqme
