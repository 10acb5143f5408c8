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

#include <string_view>
#include <vector>

#include "hbqme/integrator_config.hpp"
#include "hbqme/lindblad.hpp"

namespace hbqme {

enum class SteadyMethod { evolve, oracle, cross_check };

std::string_view to_string(SteadyMethod m);
SteadyMethod steady_method_from_string(std::string_view name);

struct ChannelParams {
  double gamma_out = kReferenceRateEv;
  double mu = 0.0;
};

struct InitialState {
  enum class Kind { basis_state, thermal };
  Kind kind = Kind::basis_state;
  /// The state itself, or the (d, p) registers of the thermal product.
  BasisState state{0, 0, 1};
  /// Thermal phonon occupation at this temperature, weighted with the
  /// channel energy.
  double temperature_k = 0.0;
};

/// Complete, serializable description of one simulation.
struct ModelParams {
  BasisMode basis_mode = BasisMode::restricted;
  int n_max = 1;
  double hbond_energy_ev = kHydrogenBondEnergyEv;
  HamiltonianParams hamiltonian = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  ChannelParams bond;
  ChannelParams isol;
  ChannelParams phn;
  /// Amplitude convention of the phonon jump operator.
  PhononConvention jump_convention = PhononConvention::bosonic;
  /// Shared hbar omega of the three channels (temperature conversion).
  double channel_hbar_omega = kHydrogenBondEnergyEv / 2.0;
  IntegratorConfig integrator;
  InitialState initial;
  SteadyMethod steady_method = SteadyMethod::evolve;
  /// Cross-check disagreement above which a sweep cell is flagged.
  double cross_check_tol = 1e-4;

  static ModelParams reference() { return {}; }

  /// Throws DomainError naming the offending parameter.
  void validate() const;

  bool all_rates_zero() const { return bond.gamma_out == 0.0 && isol.gamma_out == 0.0 && phn.gamma_out == 0.0; }
  bool all_mu_zero() const { return bond.mu == 0.0 && isol.mu == 0.0 && phn.mu == 0.0; }
};

/// Operators instantiated from ModelParams, shareable read-only.
struct Model {
  BasisPtr basis;
  OperatorMatrix hamiltonian;
  std::vector<Channel> channels;
};

Model build_model(const ModelParams& params);

/// Initial density matrix over the model basis.
DensityMatrix initial_density(const ModelParams& params, const BasisPtr& basis);

}  // namespace hbqme
