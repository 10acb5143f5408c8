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

#include "hbqme/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

constexpr std::string_view kSweepParams[] = {"g_dist",  "g_prot", "gamma_bond", "gamma_isol", "gamma_phn",
                                             "mu_bond", "mu_isol", "mu_phn",     "n_phn"};

}  // namespace

bool is_sweep_parameter(std::string_view path) {
  for (auto p : kSweepParams) {
    if (p == path) return true;
  }
  return false;
}

void apply_parameter(ModelParams& params, std::string_view path, double value) {
  if (path == "g_dist") params.hamiltonian.g_dist = value;
  else if (path == "g_prot") params.hamiltonian.g_prot = value;
  else if (path == "gamma_bond") params.bond.gamma_out = value;
  else if (path == "gamma_isol") params.isol.gamma_out = value;
  else if (path == "gamma_phn") params.phn.gamma_out = value;
  else if (path == "mu_bond") params.bond.mu = value;
  else if (path == "mu_isol") params.isol.mu = value;
  else if (path == "mu_phn") params.phn.mu = value;
  else if (path == "n_phn") {
    const double r = std::round(value);
    if (r != value || r < 1.0 || r > 1000.0) throw DomainError("n_phn", "phonon number must be an integer >= 1");
    params.n_max = static_cast<int>(r);
    params.initial.kind = InitialState::Kind::basis_state;
    params.initial.state = {0, 0, params.n_max};
  } else {
    throw DomainError(std::string(path), "not a sweepable parameter");
  }
}

std::string_view to_string(Observable o) { return o == Observable::p_broken ? "p_broken_steady" : "p_stable_steady"; }

Observable observable_from_string(std::string_view name) {
  if (name == "p_stable_steady" || name == "p_stable") return Observable::p_stable;
  if (name == "p_broken_steady" || name == "p_broken") return Observable::p_broken;
  throw DomainError("observable", "unknown observable '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  for (const auto* axis : {&x, &y}) {
    const std::string name = axis == &x ? "x" : "y";
    if (!is_sweep_parameter(axis->param)) throw DomainError(name + ".param", "unknown parameter '" + axis->param + "'");
    if (axis->values.empty()) throw DomainError(name + ".values", "axis has no values");
    const bool up = axis->values.size() < 2 || axis->values[1] > axis->values[0];
    for (std::size_t i = 1; i < axis->values.size(); ++i) {
      const bool ok = up ? axis->values[i] > axis->values[i - 1] : axis->values[i] < axis->values[i - 1];
      if (!ok) throw DomainError(name + ".values", "axis values must be strictly monotone");
    }
  }
  if (x.param == y.param) throw DomainError("y.param", "both axes sweep '" + x.param + "'");
  for (const auto& p : panels) {
    for (const auto& [path, v] : p.set) {
      if (!is_sweep_parameter(path)) throw DomainError("panels.set", "unknown parameter '" + path + "'");
    }
  }
}

SteadyResult steady_observables(const ModelParams& params) {
  SteadyResult r;
  auto fill = [&](const Basis& basis, std::vector<double> pops) {
    r.p_stable = stable_bond_probability(basis, pops);
    r.p_broken = broken_bond_probability(basis, pops);
    r.populations = std::move(pops);
  };
  try {
    const Model model = build_model(params);
    const DensityMatrix rho0 = initial_density(params, model.basis);
    std::optional<SteadyResult> evolved;
    if (params.steady_method != SteadyMethod::oracle) {
      const Trajectory traj = evolve(model, rho0, params, params.integrator);
      fill(*model.basis, traj.populations.back());
      r.steady_time = traj.steady_time;
      if (!traj.steady_time && params.integrator.steady_stop) r.status = "not_steady";
      if (params.steady_method == SteadyMethod::evolve) return r;
      evolved = r;
    }
    const DensityMatrix ss = steady_state(model.hamiltonian, model.channels, rho0);
    fill(*model.basis, populations(ss));
    if (evolved) {
      // Report the evolved value; the oracle only flags disagreement.
      const double diff = std::abs(evolved->p_stable - r.p_stable);
      const bool mismatch = diff > params.cross_check_tol;
      r = *evolved;
      if (mismatch) r.status = "mismatch";
    }
  } catch (const DomainError& e) {
    r.failed = true;
    r.status = std::string("error: ") + e.what();
  } catch (const IntegrationError& e) {
    r.failed = true;
    r.status = std::string("error: ") + e.what();
  } catch (const SteadyStateError& e) {
    r.failed = true;
    r.status = std::string("error: ") + e.what();
  }
  return r;
}

void parallel_for(std::size_t count, std::size_t parallelism, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(parallelism, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ModelParams panel_params(const ModelParams& fixed, const SweepPanel& panel) {
  ModelParams p = fixed;
  for (const auto& [path, v] : panel.set) apply_parameter(p, path, v);
  if (panel.initial) {
    p.initial.kind = InitialState::Kind::basis_state;
    p.initial.state = *panel.initial;
  }
  return p;
}

std::vector<HeatMap> run_sweep(const SweepSpec& spec, const ModelParams& fixed, std::size_t parallelism) {
  spec.validate();
  std::vector<SweepPanel> panels = spec.panels;
  if (panels.empty()) panels.push_back({});

  const std::size_t nx = spec.x.values.size();
  const std::size_t ny = spec.y.values.size();
  const std::size_t per_panel = nx * ny;

  std::vector<HeatMap> maps;
  maps.reserve(panels.size());
  for (const auto& panel : panels) {
    HeatMap m;
    m.panel = panel.label;
    m.x_param = spec.x.param;
    m.y_param = spec.y.param;
    m.nx = nx;
    m.ny = ny;
    m.base = panel_params(fixed, panel);
    m.cells.resize(per_panel);
    maps.push_back(std::move(m));
  }

  parallel_for(maps.size() * per_panel, parallelism, [&](std::size_t task) {
    HeatMap& m = maps[task / per_panel];
    const std::size_t cell = task % per_panel;
    HeatCell& c = m.cells[cell];
    c.x = spec.x.values[cell % nx];
    c.y = spec.y.values[cell / nx];
    SteadyResult r;
    try {
      ModelParams p = m.base;
      apply_parameter(p, spec.x.param, c.x);
      apply_parameter(p, spec.y.param, c.y);
      r = steady_observables(p);
    } catch (const DomainError& e) {
      r.failed = true;
      r.status = std::string("error: ") + e.what();
    }
    c.status = r.status;
    c.steady_time = r.steady_time;
    if (!r.failed) {
      c.value = spec.observable == Observable::p_broken ? r.p_broken : r.p_stable;
      c.region = classify_region(*c.value);
    }
  });
  return maps;
}

std::vector<SeriesPoint> run_phonon_series(const ModelParams& params, const std::vector<int>& n_values,
                                           std::size_t parallelism) {
  std::vector<SeriesPoint> out(n_values.size());
  parallel_for(n_values.size(), parallelism, [&](std::size_t i) {
    out[i].n = n_values[i];
    try {
      ModelParams p = params;
      apply_parameter(p, "n_phn", n_values[i]);
      out[i].result = steady_observables(p);
    } catch (const DomainError& e) {
      out[i].result.failed = true;
      out[i].result.status = std::string("error: ") + e.what();
    }
  });
  return out;
}

}  // namespace hbqme
