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

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "hbqme/basis.hpp"

namespace hbqme {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Register { dist, prot, phn };
enum class PhononConvention { bosonic, unit };
enum class OperatorUnit { dimensionless, energy_ev };

std::string_view to_string(PhononConvention c);
PhononConvention phonon_convention_from_string(std::string_view name);

using StatePredicate = std::function<bool(const BasisState&)>;

/// Dense complex square matrix over a basis.
class OperatorMatrix {
 public:
  OperatorMatrix(BasisPtr basis, ComplexMatrix entries,
                 OperatorUnit unit = OperatorUnit::dimensionless);

  static OperatorMatrix zero(BasisPtr basis, OperatorUnit unit = OperatorUnit::dimensionless);
  static OperatorMatrix identity(BasisPtr basis);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  OperatorUnit unit() const noexcept { return unit_; }
  std::size_t dim() const noexcept { return basis_->dim(); }

  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  /// <bra| O |ket>; zero when either state is not in the basis.
  Complex element(const BasisState& bra, const BasisState& ket) const;

  OperatorMatrix adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  ComplexVector apply(const ComplexVector& v) const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs);
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
  friend OperatorMatrix operator*(Complex s, OperatorMatrix op);
  friend OperatorMatrix operator*(double s, OperatorMatrix op) { return Complex(s, 0.0) * std::move(op); }

 private:
  BasisPtr basis_;
  ComplexMatrix entries_;
  OperatorUnit unit_;
};

/// Throws DomainError when the two bases describe different spaces.
void require_same_space(const Basis& a, const Basis& b, std::string_view what);

/// Unit column vector for a basis state; throws if s is absent.
ComplexVector basis_vector(const Basis& basis, const BasisState& s);

/// |to><from| on one register, identity on the others. Elements whose image
/// falls outside the basis are dropped, so on a restricted basis this is the
/// compression of the full-space operator.
OperatorMatrix transition_operator(BasisPtr basis, Register reg, int from_label, int to_label);

/// Phonon lowering n -> n-1 with amplitude sqrt(n) or 1; annihilates n = 0.
OperatorMatrix phonon_annihilator(BasisPtr basis, PhononConvention convention);

/// Diagonal phonon number operator diag(n).
OperatorMatrix phonon_number(BasisPtr basis);

/// Diagonal projector onto the basis states satisfying the predicate.
OperatorMatrix projector(BasisPtr basis, const StatePredicate& condition);

/// Keeps the diagonal of a Hermitian operator and the off-diagonal part only
/// between states satisfying the condition: D + P C P.
OperatorMatrix conditional_gate(const OperatorMatrix& op, const StatePredicate& condition);

/// Matrix elements of an operator between the states of `target`. The source
/// space must contain every state of the target.
OperatorMatrix restrict_to(const OperatorMatrix& op, BasisPtr target);

struct HamiltonianParams {
  double hbar_omega_dist = 0.0;
  double hbar_omega_prot = 0.0;
  double hbar_omega_phn = 0.0;
  double g_dist = 0.0;
  double g_prot = 0.0;
  /// Drop every diagonal (rest-energy) term.
  bool zero_rest_energies = true;
  /// Amplitude of the proton-phonon exchange a sigma^dag for n > 1.
  PhononConvention coupling_convention = PhononConvention::unit;

  /// Reference partition: hbar w_prot = hbar w_dist = E_Hbond / 2,
  /// w_phn = w_prot, g_dist = g_prot = g.
  static HamiltonianParams reference(double hbond_energy_ev);

  void validate() const;
};

/// H = H_dist Cond(p=1) + H_prot Cond(d=0) with
///   H_dist = hw_dist s+s + g_dist (s+ + s)           on the d: 1 <-> 0 pair,
///   H_prot = hw_phn N + hw_prot s+s + g_prot (a s+ + a+ s).
/// Built on the full tensor space and compressed onto the basis.
OperatorMatrix build_hamiltonian(BasisPtr basis, const HamiltonianParams& hp);

}  // namespace hbqme
