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

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "hbqme/lindblad.hpp"

namespace hbqme {

using SparseComplex = Eigen::SparseMatrix<Complex>;

/// Column-major vectorization: vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim);

/// Sparse dim^2 x dim^2 matrix G with vec(qme_rhs(rho)) = G vec(rho), in 1/s.
/// Assembled from Kronecker products, independently of qme_rhs.
SparseComplex generator_matrix(const OperatorMatrix& h, std::span<const Channel> channels);

/// ||hbar qme_rhs(rho)||_max in eV.
double steady_residual_ev(const ComplexMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels);

struct SteadyStateOptions {
  /// Resolvent shift relative to the largest diagonal generator entry.
  double relative_shift = 1e-7;
  /// Residual above which the result is rejected, relative to the largest rate.
  double relative_residual_limit = 1e-6;
};

/// Long-time limit of exp(G t) vec(rho0), via the resolvent s (s - G)^-1
/// with Richardson extrapolation s -> 0. Depends on rho0 when the null space
/// is degenerate. Throws SteadyStateError when every rate vanishes (no
/// unique limit) or the result does not solve G x = 0.
DensityMatrix steady_state(const OperatorMatrix& h, std::span<const Channel> channels, const DensityMatrix& rho0,
                           const SteadyStateOptions& options = {});

/// Sparse right-hand-side engine for time stepping. Assumes Hermitian input.
/// Holds scratch buffers, so one instance per trajectory.
class QmeKernel {
 public:
  QmeKernel(const OperatorMatrix& h, std::span<const Channel> channels);

  bool dissipative() const noexcept { return !jumps_.empty(); }
  std::size_t dim() const noexcept { return dim_; }

  /// out = qme_rhs(rho), 1/s.
  void rhs(const ComplexMatrix& rho, ComplexMatrix& out);
  /// out = (1/hbar) sum_ch dissipator(rho, ch), 1/s.
  void dissipation(const ComplexMatrix& rho, ComplexMatrix& out);

 private:
  struct Jump {
    double rate;
    SparseComplex op;
    SparseComplex op_adjoint;
  };

  void apply(const SparseComplex& m, const ComplexMatrix& rho, ComplexMatrix& out);

  std::size_t dim_;
  SparseComplex m_full_;     // -i H - K / 2, eV
  SparseComplex m_dissip_;   // -K / 2, eV
  std::vector<Jump> jumps_;  // rate-scaled sandwich terms
  ComplexMatrix scratch_;
};

}  // namespace hbqme
