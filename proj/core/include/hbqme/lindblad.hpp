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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hbqme/operators.hpp"

namespace hbqme {

enum class ChannelKind { bond, isol, phn };

std::string_view to_string(ChannelKind kind);

/// Jump operators of the model:
///   bond  d: 0 -> -1, only from the proton ground state p = 0,
///   isol  d: 1 -> 2,
///   phn   phonon lowering with the given amplitude convention.
/// Built on the full tensor space and compressed onto `basis`, so on a
/// restricted basis the adjoint only repopulates states in the basis.
OperatorMatrix jump_operator(BasisPtr basis, ChannelKind kind,
                             PhononConvention phonon_convention = PhononConvention::bosonic);

/// One dissipation channel with its inflow: gamma_in = mu * gamma_out.
class Channel {
 public:
  Channel(ChannelKind kind, OperatorMatrix jump, double gamma_out, double mu, double hbar_omega);

  ChannelKind kind() const noexcept { return kind_; }
  const OperatorMatrix& jump() const noexcept { return jump_; }
  double gamma_out() const noexcept { return gamma_out_; }
  double mu() const noexcept { return mu_; }
  double gamma_in() const noexcept { return mu_ * gamma_out_; }
  double hbar_omega() const noexcept { return hbar_omega_; }

 private:
  ChannelKind kind_;
  OperatorMatrix jump_;
  double gamma_out_;
  double mu_;
  double hbar_omega_;
};

/// Hermitian, positive semidefinite, unit-trace matrix over a basis.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates the invariants to kTolerance; throws DomainError otherwise.
  DensityMatrix(BasisPtr basis, ComplexMatrix entries);

  static DensityMatrix pure(BasisPtr basis, const BasisState& s);
  static DensityMatrix maximally_mixed(BasisPtr basis);
  static DensityMatrix diagonal(BasisPtr basis, std::span<const double> populations);
  /// Skips validation; for states produced by the projection step.
  static DensityMatrix trusted(BasisPtr basis, ComplexMatrix entries);

  /// Returns a description of the first violated invariant, if any.
  static std::optional<std::string> check(const ComplexMatrix& m, double tol = kTolerance);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return basis_->dim(); }

 private:
  DensityMatrix(BasisPtr basis, ComplexMatrix entries, bool validate);

  BasisPtr basis_;
  ComplexMatrix entries_;
};

/// gamma_out (A r A+ - {A+A, r}/2) + mu gamma_out (A+ r A - {A A+, r}/2), in eV.
ComplexMatrix dissipator(const DensityMatrix& rho, const Channel& ch);
/// Same, for an arbitrary square matrix of the channel's dimension.
ComplexMatrix dissipator(const ComplexMatrix& rho, const Channel& ch);

/// d rho / dt = (-i/hbar)[H, rho] + (1/hbar) sum_ch dissipator(rho, ch), in 1/s.
ComplexMatrix qme_rhs(const DensityMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels);
ComplexMatrix qme_rhs(const ComplexMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels);

/// Inflow ratio exp(-hbar w / K T); 0 at T = 0.
double mu_from_temperature(double hbar_omega, double temperature_k);

/// Truncated thermal phonon distribution w_n ~ exp(-hbar w n / K T).
std::vector<double> thermal_phonon_weights(double hbar_omega, double temperature_k, int n_max);

}  // namespace hbqme
