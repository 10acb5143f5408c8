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
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hbqme/lindblad.hpp"

namespace hbqme {

/// Real diagonal, clipped to [0, 1].
std::vector<double> populations(const DensityMatrix& rho);

/// Total population of the d = -1 (bonded) states.
double stable_bond_probability(const DensityMatrix& rho);
double stable_bond_probability(const Basis& basis, std::span<const double> pops);

/// Total population of the d = 2 (separated) states.
double broken_bond_probability(const DensityMatrix& rho);
double broken_bond_probability(const Basis& basis, std::span<const double> pops);

/// tr(rho^2), clipped to (0, 1].
double purity(const DensityMatrix& rho);
double purity(const ComplexMatrix& rho);

enum class Region { I, II, III, IV };

std::string_view to_string(Region r);

/// [0, 0.1) -> I, [0.1, 0.5) -> II, [0.5, 0.9) -> III, [0.9, 1] -> IV.
Region classify_region(double p);

/// Sliding-window flatness test over recorded population vectors.
class SteadyWindow {
 public:
  SteadyWindow(double tol, std::size_t window);

  /// Adds a sample; true once the last `window` samples all vary by < tol.
  bool push(std::span<const double> pops);
  std::size_t window() const noexcept { return window_; }

 private:
  double tol_;
  std::size_t window_;
  std::deque<std::vector<double>> samples_;
};

/// Earliest times[k] such that samples k .. k + window - 1 vary by < tol in
/// every component.
std::optional<double> detect_steady(std::span<const double> times, const std::vector<std::vector<double>>& pops,
                                    double tol, std::size_t window);

}  // namespace hbqme
