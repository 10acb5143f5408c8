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
#include <vector>

#include "hbqme/generator.hpp"
#include "hbqme/model.hpp"
#include "hbqme/observables.hpp"

namespace hbqme {

/// exp(-i H dt / hbar) by eigendecomposition of each connected block of H.
OperatorMatrix propagator(const OperatorMatrix& h, double dt);

/// Hermitize, clip negative eigenvalues, renormalize. Throws
/// IntegrationError when nothing positive is left.
DensityMatrix project_physical(const ComplexMatrix& raw, const BasisPtr& basis);
/// In-place variant; returns false when the matrix was already PSD.
bool project_physical_inplace(ComplexMatrix& rho);

/// rho~ = U rho U+, then rho~ + (dt / hbar) L(rho~), then optional projection.
DensityMatrix euler_step(const DensityMatrix& rho, const OperatorMatrix& u, std::span<const Channel> channels,
                         double dt, bool project = true);

/// Classical fourth-order Runge-Kutta step on the full right-hand side.
DensityMatrix rk4_step(const DensityMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels,
                       double dt, bool project = true);

/// In-place stepping engine over precomputed sparse operators.
class Stepper {
 public:
  Stepper(const Model& model, const IntegratorConfig& cfg);

  /// One time step; throws IntegrationError on a non-finite state or a
  /// trace deviation above 1e-3 before projection.
  void step(ComplexMatrix& rho);

  std::size_t steps() const noexcept { return steps_; }
  double max_trace_deviation() const noexcept { return max_trace_dev_; }

 private:
  IntegratorConfig cfg_;
  QmeKernel kernel_;
  SparseComplex u_;
  SparseComplex u_adjoint_;
  ComplexMatrix tmp_, k1_, k2_, k3_, k4_, stage_;
  std::size_t steps_ = 0;
  double max_trace_dev_ = 0.0;
};

struct Trajectory {
  BasisPtr basis;
  ModelParams params;
  std::vector<double> times;
  std::vector<std::vector<double>> populations;
  std::vector<double> p_stable;
  std::vector<double> p_broken;
  std::vector<double> purity;
  std::optional<double> steady_time;
  std::size_t steps = 0;
  double max_trace_deviation = 0.0;
  ComplexMatrix final_state;

  DensityMatrix final_density() const { return DensityMatrix::trusted(basis, final_state); }
};

/// Runs until cfg.t_end or the steady-stop criterion. Deterministic.
Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params, const IntegratorConfig& cfg);
Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params);
/// Reuses prebuilt operators; `model` must match `params`.
Trajectory evolve(const Model& model, const DensityMatrix& rho0, const ModelParams& params,
                  const IntegratorConfig& cfg);

std::optional<double> detect_steady(const Trajectory& traj, double tol, std::size_t window);

}  // namespace hbqme
