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

#include "hbqme/lindblad.hpp"

#include <cmath>
#include <limits>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

void require_square(const ComplexMatrix& m, std::size_t dim, const char* what) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (m.rows() != d || m.cols() != d) {
    throw DomainError(what, "matrix shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                " does not match basis dimension " + std::to_string(dim));
  }
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::bond: return "bond";
    case ChannelKind::isol: return "isol";
    case ChannelKind::phn: return "phn";
  }
  return "?";
}

OperatorMatrix jump_operator(BasisPtr basis, ChannelKind kind, PhononConvention phonon_convention) {
  const auto full = basis->mode() == BasisMode::full ? basis : Basis::build(BasisMode::full, basis->n_max());
  OperatorMatrix a = OperatorMatrix::zero(full);
  switch (kind) {
    case ChannelKind::bond:
      a = transition_operator(full, Register::dist, 0, -1) *
          projector(full, [](const BasisState& s) { return s.p == 0; });
      break;
    case ChannelKind::isol:
      a = transition_operator(full, Register::dist, 1, 2);
      break;
    case ChannelKind::phn:
      a = phonon_annihilator(full, phonon_convention);
      break;
  }
  return restrict_to(a, std::move(basis));
}

Channel::Channel(ChannelKind kind, OperatorMatrix jump, double gamma_out, double mu, double hbar_omega)
    : kind_(kind), jump_(std::move(jump)), gamma_out_(gamma_out), mu_(mu), hbar_omega_(hbar_omega) {
  const std::string name(to_string(kind));
  if (!std::isfinite(gamma_out) || gamma_out < 0.0) {
    throw DomainError("gamma_" + name, "dissipation rate must be finite and >= 0");
  }
  if (!std::isfinite(mu) || mu < 0.0 || mu >= 1.0) {
    throw DomainError("mu_" + name, "inflow ratio must lie in [0, 1); a stable temperature needs gamma_in < gamma_out");
  }
  if (!std::isfinite(hbar_omega) || hbar_omega < 0.0) {
    throw DomainError("hbar_omega", "channel energy must be finite and >= 0");
  }
}

DensityMatrix::DensityMatrix(BasisPtr basis, ComplexMatrix entries)
    : DensityMatrix(std::move(basis), std::move(entries), true) {}

DensityMatrix::DensityMatrix(BasisPtr basis, ComplexMatrix entries, bool validate)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (!basis_) throw DomainError("basis", "density matrix needs a basis");
  require_square(entries_, basis_->dim(), "rho");
  if (validate) {
    if (auto err = check(entries_)) throw DomainError("rho", *err);
  }
}

DensityMatrix DensityMatrix::pure(BasisPtr basis, const BasisState& s) {
  const ComplexVector v = basis_vector(*basis, s);
  return {basis, v * v.adjoint(), false};
}

DensityMatrix DensityMatrix::maximally_mixed(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->dim());
  return {basis, ComplexMatrix::Identity(d, d) / static_cast<double>(d), false};
}

DensityMatrix DensityMatrix::diagonal(BasisPtr basis, std::span<const double> populations) {
  if (populations.size() != basis->dim()) throw DomainError("populations", "length does not match basis");
  const auto d = static_cast<Eigen::Index>(basis->dim());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = populations[static_cast<std::size_t>(i)];
  return {std::move(basis), std::move(m)};
}

DensityMatrix DensityMatrix::trusted(BasisPtr basis, ComplexMatrix entries) {
  return {std::move(basis), std::move(entries), false};
}

std::optional<std::string> DensityMatrix::check(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return "matrix is not square";
  if (!m.allFinite()) return "matrix has non-finite entries";
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) return "not Hermitian (deviation " + std::to_string(herm) + ")";
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol) return "trace " + std::to_string(tr) + " differs from 1";
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    return "negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff());
  }
  return std::nullopt;
}

ComplexMatrix dissipator(const DensityMatrix& rho, const Channel& ch) {
  require_same_space(rho.basis(), ch.jump().basis(), "dissipator");
  return dissipator(rho.matrix(), ch);
}

ComplexMatrix dissipator(const ComplexMatrix& rho, const Channel& ch) {
  require_square(rho, ch.jump().dim(), "rho");
  const ComplexMatrix& a = ch.jump().matrix();
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix ada = ad * a;
  const ComplexMatrix aad = a * ad;
  ComplexMatrix out = ch.gamma_out() * (a * rho * ad - 0.5 * (ada * rho + rho * ada));
  if (ch.gamma_in() != 0.0) out += ch.gamma_in() * (ad * rho * a - 0.5 * (aad * rho + rho * aad));
  return out;
}

ComplexMatrix qme_rhs(const DensityMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels) {
  require_same_space(rho.basis(), h.basis(), "qme_rhs");
  for (const auto& ch : channels) require_same_space(rho.basis(), ch.jump().basis(), "qme_rhs");
  return qme_rhs(rho.matrix(), h, channels);
}

ComplexMatrix qme_rhs(const ComplexMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels) {
  require_square(rho, h.dim(), "rho");
  const ComplexMatrix& hm = h.matrix();
  ComplexMatrix out = Complex(0.0, -1.0) * (hm * rho - rho * hm);
  for (const auto& ch : channels) out += dissipator(rho, ch);
  return out / kHbarEvS;
}

double mu_from_temperature(double hbar_omega, double temperature_k) {
  if (!(hbar_omega > 0.0) || !std::isfinite(hbar_omega)) {
    throw DomainError("hbar_omega", "must be a finite positive energy");
  }
  if (!(temperature_k >= 0.0) || !std::isfinite(temperature_k)) {
    throw DomainError("temperature", "must be finite and >= 0");
  }
  if (temperature_k == 0.0) return 0.0;
  return std::exp(-hbar_omega / (kBoltzmannEvPerK * temperature_k));
}

std::vector<double> thermal_phonon_weights(double hbar_omega, double temperature_k, int n_max) {
  if (!(hbar_omega >= 0.0) || !std::isfinite(hbar_omega)) throw DomainError("hbar_omega", "must be finite and >= 0");
  if (!(temperature_k >= 0.0) || !std::isfinite(temperature_k)) {
    throw DomainError("temperature", "must be finite and >= 0");
  }
  if (n_max < 0) throw DomainError("n_max", "must be >= 0");
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (temperature_k == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double ratio = std::exp(-hbar_omega / (kBoltzmannEvPerK * temperature_k));
  double term = 1.0;
  double sum = 0.0;
  for (auto& x : w) {
    x = term;
    sum += term;
    term *= ratio;
  }
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace hbqme
