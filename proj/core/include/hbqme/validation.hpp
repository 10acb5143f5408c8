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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hbqme/lindblad.hpp"
#include "hbqme/model.hpp"

namespace hbqme {

/// Hermitian matrix with entries of order one.
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);
/// Full-rank density matrix G G+ / tr(G G+).
DensityMatrix random_density(const BasisPtr& basis, std::mt19937_64& rng);

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The built-in invariant suite: basis closure, Hamiltonian structure,
/// Lindblad properties, propagator and projection, parameter guards.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 20260101);

/// Config-level checks of one parameter set (guards and invariants).
std::vector<CheckResult> check_model(const ModelParams& params);

}  // namespace hbqme
