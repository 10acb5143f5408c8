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

#include "hbqme/model.hpp"

#include <cmath>
#include <string>

#include "hbqme/errors.hpp"

namespace hbqme {

std::string_view to_string(Scheme s) { return s == Scheme::rk4 ? "rk4" : "euler"; }

Scheme scheme_from_string(std::string_view name) {
  if (name == "euler" || name == "euler_split") return Scheme::euler_split;
  if (name == "rk4") return Scheme::rk4;
  throw DomainError("scheme", "unknown scheme '" + std::string(name) + "' (expected euler or rk4)");
}

void IntegratorConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau", "must be a finite positive time");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt", "must be a finite positive time");
  if (dt > kMaxDtOverTau * tau * (1.0 + 1e-12)) {
    throw DomainError("dt", "dt = " + std::to_string(dt / tau) + " tau exceeds the stability guard of 0.05 tau");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end", "must be finite and >= 0");
  if (!(steady_tol > 0.0)) throw DomainError("steady_tol", "must be > 0");
  if (record_stride == 0) throw DomainError("record_stride", "must be >= 1");
  if (steady_window < record_stride) throw DomainError("steady_window", "must span at least one record stride");
}

std::size_t IntegratorConfig::max_steps() const {
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

std::string_view to_string(SteadyMethod m) {
  switch (m) {
    case SteadyMethod::evolve: return "evolve";
    case SteadyMethod::oracle: return "oracle";
    case SteadyMethod::cross_check: return "cross_check";
  }
  return "?";
}

SteadyMethod steady_method_from_string(std::string_view name) {
  if (name == "evolve") return SteadyMethod::evolve;
  if (name == "oracle") return SteadyMethod::oracle;
  if (name == "cross_check") return SteadyMethod::cross_check;
  throw DomainError("steady_method", "unknown method '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  if (basis_mode == BasisMode::restricted ? n_max < 1 : n_max < 0) {
    throw DomainError("n_max", "too small for the basis mode");
  }
  if (!(hbond_energy_ev > 0.0) || !std::isfinite(hbond_energy_ev)) {
    throw DomainError("hbond_energy_ev", "must be a finite positive energy");
  }
  hamiltonian.validate();
  auto check_channel = [](const ChannelParams& c, const std::string& name) {
    if (!std::isfinite(c.gamma_out) || c.gamma_out < 0.0) throw DomainError("gamma_" + name, "must be finite and >= 0");
    if (!std::isfinite(c.mu) || c.mu < 0.0 || c.mu >= 1.0) throw DomainError("mu_" + name, "must lie in [0, 1)");
  };
  check_channel(bond, "bond");
  check_channel(isol, "isol");
  check_channel(phn, "phn");
  if (!std::isfinite(channel_hbar_omega) || channel_hbar_omega < 0.0) {
    throw DomainError("channel_hbar_omega", "must be finite and >= 0");
  }
  integrator.validate();
  if (initial.kind == InitialState::Kind::basis_state) {
    const auto basis = Basis::build(basis_mode, n_max);
    if (!basis->contains(initial.state)) {
      throw DomainError("initial", "state " + initial.state.label() + " is not in the " +
                                       std::string(to_string(basis_mode)) + " basis with n_max " +
                                       std::to_string(n_max));
    }
  } else if (!(initial.temperature_k >= 0.0) || !std::isfinite(initial.temperature_k)) {
    throw DomainError("temperature_k", "must be finite and >= 0");
  }
  if (!(cross_check_tol > 0.0)) throw DomainError("cross_check_tol", "must be > 0");
}

Model build_model(const ModelParams& params) {
  params.validate();
  auto basis = Basis::build(params.basis_mode, params.n_max);
  auto h = build_hamiltonian(basis, params.hamiltonian);
  std::vector<Channel> channels;
  auto add = [&](ChannelKind kind, const ChannelParams& c) {
    channels.emplace_back(kind, jump_operator(basis, kind, params.jump_convention), c.gamma_out, c.mu,
                          params.channel_hbar_omega);
  };
  add(ChannelKind::bond, params.bond);
  add(ChannelKind::isol, params.isol);
  add(ChannelKind::phn, params.phn);
  return {std::move(basis), std::move(h), std::move(channels)};
}

DensityMatrix initial_density(const ModelParams& params, const BasisPtr& basis) {
  if (params.initial.kind == InitialState::Kind::basis_state) return DensityMatrix::pure(basis, params.initial.state);
  const auto w = thermal_phonon_weights(params.channel_hbar_omega, params.initial.temperature_k, basis->n_max());
  std::vector<double> pops(basis->dim(), 0.0);
  double kept = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const BasisState s{params.initial.state.d, params.initial.state.p, static_cast<int>(n)};
    if (auto i = basis->index(s)) {
      pops[*i] = w[n];
      kept += w[n];
    }
  }
  if (kept == 0.0) throw DomainError("initial", "thermal state has no support in the basis");
  for (auto& x : pops) x /= kept;
  return DensityMatrix::diagonal(basis, pops);
}

}  // namespace hbqme
