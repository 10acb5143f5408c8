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

// hbqme: evolve | sweep | steady | validate
//
// Exit codes: 0 success, 1 configuration or validation error, 2 numerical
// failure.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hbqme/config.hpp"
#include "hbqme/errors.hpp"
#include "hbqme/generator.hpp"
#include "hbqme/integrate.hpp"
#include "hbqme/io.hpp"
#include "hbqme/sweep.hpp"
#include "hbqme/validation.hpp"

namespace fs = std::filesystem;
using namespace hbqme;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

struct Options {
  std::string config;
  std::string out = ".";
  std::size_t parallelism = 0;
  std::string basis;
  std::string scheme;
};

ScenarioConfig load(const Options& o) {
  if (o.config.empty()) throw ConfigError("config", "--config is required");
  ScenarioConfig s = load_scenario(o.config);
  if (!o.basis.empty()) s.model.basis_mode = basis_mode_from_string(o.basis);
  if (!o.scheme.empty()) s.model.integrator.scheme = scheme_from_string(o.scheme);
  s.model.validate();
  return s;
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

std::string file_stem(const ScenarioConfig& s, const std::string& suffix) {
  return suffix.empty() ? s.name : s.name + "_" + suffix;
}

int cmd_evolve(const Options& o) {
  const ScenarioConfig s = load(o);
  const Model model = build_model(s.model);
  const Trajectory traj = evolve(model, initial_density(s.model, model.basis), s.model, s.model.integrator);
  const fs::path dir = out_dir(o);
  const std::string stem = file_stem(s, "trajectory");
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  write_text(dir / (stem + ".csv"), csv.str());
  Json extra{{"steps", traj.steps}, {"max_trace_deviation", traj.max_trace_deviation}};
  extra["steady_time_s"] = traj.steady_time ? Json(*traj.steady_time) : Json(nullptr);
  write_json(dir / (stem + ".json"), sidecar("evolve", s, extra));
  std::cout << "evolve " << s.name << ": " << traj.steps << " steps, final p_stable "
            << format_double(traj.p_stable.back());
  if (traj.steady_time) std::cout << ", steady from " << format_double(*traj.steady_time) << " s";
  std::cout << "\n";
  return kOk;
}

int cmd_sweep(const Options& o) {
  const ScenarioConfig s = load(o);
  const std::size_t workers = o.parallelism ? o.parallelism : std::max(1u, std::thread::hardware_concurrency());
  const fs::path dir = out_dir(o);
  if (s.series) {
    const auto series = run_phonon_series(s.model, s.series->n_values, workers);
    std::ostringstream csv;
    write_series_csv(csv, series);
    write_text(dir / (file_stem(s, "series") + ".csv"), csv.str());
    write_json(dir / (file_stem(s, "series") + ".json"), sidecar("sweep", s));
    std::cout << "series " << s.name << ": " << series.size() << " points\n";
    return kOk;
  }
  if (!s.sweep) throw ConfigError("sweep", "scenario has neither a sweep nor a series");
  const auto maps = run_sweep(*s.sweep, s.model, workers);
  std::size_t failed = 0;
  for (const auto& m : maps) {
    const std::string stem = file_stem(s, m.panel);
    std::ostringstream csv;
    write_heatmap_csv(csv, m);
    write_text(dir / (stem + ".csv"), csv.str());
    write_json(dir / (stem + ".json"), sidecar("sweep", s, Json{{"panel", m.panel}, {"panel_model", to_json(m.base)}}));
    for (const auto& c : m.cells) failed += c.value ? 0 : 1;
  }
  std::cout << "sweep " << s.name << ": " << maps.size() << " panel(s), " << failed << " failed cell(s)\n";
  return kOk;
}

int cmd_steady(const Options& o) {
  const ScenarioConfig s = load(o);
  const Model model = build_model(s.model);
  const DensityMatrix ss = steady_state(model.hamiltonian, model.channels, initial_density(s.model, model.basis));
  const auto pops = populations(ss);
  const fs::path dir = out_dir(o);
  const std::string stem = file_stem(s, "steady");
  std::ostringstream csv;
  write_steady_csv(csv, *model.basis, pops);
  write_text(dir / (stem + ".csv"), csv.str());
  write_json(dir / (stem + ".json"),
             sidecar("steady", s, Json{{"residual_ev", steady_residual_ev(ss.matrix(), model.hamiltonian, model.channels)}}));
  std::cout << "steady " << s.name << ": p_stable " << format_double(stable_bond_probability(*model.basis, pops))
            << "\n";
  return kOk;
}

int cmd_validate(const Options& o) {
  std::vector<CheckResult> results = run_invariant_suite();
  bool config_failed = false;
  if (!o.config.empty()) {
    try {
      const ScenarioConfig s = load(o);
      for (auto& r : check_model(s.model)) results.push_back(std::move(r));
    } catch (const DomainError& e) {
      results.push_back({"config", "load", false, e.what()});
    }
  }
  std::size_t failures = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.group << "/" << r.name;
    if (!r.passed) std::cout << ": " << r.detail;
    std::cout << "\n";
    if (!r.passed) {
      ++failures;
      config_failed = config_failed || r.group == "config" || r.group == "guards";
    }
  }
  std::cout << (failures ? "validation failed: " : "validation passed: ") << results.size() - failures << "/"
            << results.size() << " checks\n";
  if (!failures) return kOk;
  return config_failed ? kConfigError : kNumericalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hydrogen-bond open quantum system simulator"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "Scenario JSON (or a metadata sidecar)");
    if (needs_config) c->required();
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--basis", o.basis, "Override the basis mode")->check(CLI::IsMember({"restricted", "full"}));
    sub->add_option("--scheme", o.scheme, "Override the integrator")->check(CLI::IsMember({"euler", "rk4"}));
  };
  auto* evolve_cmd = app.add_subcommand("evolve", "Time-evolve one scenario and write its trajectory");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a heat-map sweep or phonon series");
  auto* steady_cmd = app.add_subcommand("steady", "Solve for the steady state with the generator oracle");
  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite");
  add_common(evolve_cmd, true);
  add_common(sweep_cmd, true);
  add_common(steady_cmd, true);
  add_common(validate_cmd, false);
  sweep_cmd->add_option("--parallelism", o.parallelism, "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*evolve_cmd) return cmd_evolve(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*steady_cmd) return cmd_steady(o);
    return cmd_validate(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const SteadyStateError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}
