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

namespace hbqme {

// Unit system: energies in eV, times in s, temperatures in K.

inline constexpr double kHbarEvS = 6.582119569e-16;
inline constexpr double kBoltzmannEvPerK = 8.617333262e-5;

/// Energy of a single water hydrogen bond, 21 kJ/mol divided by N_A.
inline constexpr double kHydrogenBondEnergyEv = 0.217655;

/// Reference interaction strength g and dissipation intensity gamma.
inline constexpr double kReferenceCouplingEv = 2e-3;
inline constexpr double kReferenceRateEv = 5e-3;

/// Characteristic time hbar / E for a system energy E.
constexpr double characteristic_time(double energy_ev = kHydrogenBondEnergyEv) {
  return kHbarEvS / energy_ev;
}

}  // namespace hbqme
