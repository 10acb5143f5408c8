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
#include <string_view>

#include "hbqme/constants.hpp"

namespace hbqme {

enum class Scheme { euler_split, rk4 };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

struct IntegratorConfig {
  /// Characteristic time hbar / E_Hbond.
  double tau = characteristic_time(kHydrogenBondEnergyEv);
  double dt = 0.01 * characteristic_time(kHydrogenBondEnergyEv);
  Scheme scheme = Scheme::euler_split;
  /// Apply the physical projection every k steps; 0 disables it.
  std::size_t project_every = 1;
  /// Hard stop. 10^6 reference steps, about 30 ps.
  double t_end = 1e4 * characteristic_time(kHydrogenBondEnergyEv);
  /// Stop once every population varies by less than steady_tol over
  /// steady_window steps.
  bool steady_stop = true;
  double steady_tol = 1e-7;
  std::size_t steady_window = 1000;
  /// Record observables every k steps.
  std::size_t record_stride = 10;

  static constexpr double kMaxDtOverTau = 0.05;

  /// Throws DomainError naming the offending field.
  void validate() const;

  std::size_t max_steps() const;
  /// Number of recorded samples spanned by the steady window.
  std::size_t window_samples() const { return steady_window / record_stride + 1; }
};

}  // namespace hbqme
