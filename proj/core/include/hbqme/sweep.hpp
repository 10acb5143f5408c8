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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbqme/integrate.hpp"

namespace hbqme {

/// Sets a sweepable parameter: g_dist, g_prot, gamma_{bond,isol,phn},
/// mu_{bond,isol,phn}, or n_phn (phonon cap and initial |0,0,N>).
void apply_parameter(ModelParams& params, std::string_view path, double value);
bool is_sweep_parameter(std::string_view path);

enum class Observable { p_stable, p_broken };

std::string_view to_string(Observable o);
Observable observable_from_string(std::string_view name);

struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

/// One heat map of a multi-panel figure: parameter overrides on top of the
/// fixed model.
struct SweepPanel {
  std::string label;
  std::vector<std::pair<std::string, double>> set;
  std::optional<BasisState> initial;
};

struct SweepSpec {
  SweepAxis x;
  SweepAxis y;
  Observable observable = Observable::p_stable;
  std::vector<SweepPanel> panels;

  /// Throws DomainError on empty or non-monotone axes and unknown paths.
  void validate() const;
};

/// Steady-state readout of one parameter point.
struct SteadyResult {
  std::vector<double> populations;
  double p_stable = 0.0;
  double p_broken = 0.0;
  std::optional<double> steady_time;
  /// "ok", "not_steady", "mismatch", or "error: ..."
  std::string status = "ok";
  bool failed = false;
};

/// Evolves (or solves) to the steady state per params.steady_method.
/// Numerical failures are reported in the status, not thrown.
SteadyResult steady_observables(const ModelParams& params);

struct HeatCell {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> value;
  std::optional<Region> region;
  std::optional<double> steady_time;
  std::string status;
};

struct HeatMap {
  std::string panel;
  std::string x_param;
  std::string y_param;
  std::size_t nx = 0;
  std::size_t ny = 0;
  ModelParams base;
  /// Row-major: y outer, x inner.
  std::vector<HeatCell> cells;

  const HeatCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
};

/// Parameters of one panel before the axis values are applied.
ModelParams panel_params(const ModelParams& fixed, const SweepPanel& panel);

/// One heat map per panel (a single unnamed map when there are none).
/// Identical output for every parallelism.
std::vector<HeatMap> run_sweep(const SweepSpec& spec, const ModelParams& fixed, std::size_t parallelism = 1);

struct SeriesPoint {
  int n = 0;
  SteadyResult result;
};

/// Steady p_stable / p_broken from |0,0,N> with n_max = N for each N.
std::vector<SeriesPoint> run_phonon_series(const ModelParams& params, const std::vector<int>& n_values,
                                           std::size_t parallelism = 1);

/// Runs fn(0 .. count-1) on a fixed pool; results must be written by index.
void parallel_for(std::size_t count, std::size_t parallelism, const std::function<void(std::size_t)>& fn);

}  // namespace hbqme
