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

#include "hbqme/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hbqme/errors.hpp"

namespace hbqme {

std::vector<double> populations(const DensityMatrix& rho) {
  std::vector<double> out(rho.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(), 0.0, 1.0);
  }
  return out;
}

namespace {

double sum_where_d(const Basis& basis, std::span<const double> pops, int d) {
  if (pops.size() != basis.dim()) throw DomainError("populations", "length does not match basis");
  double p = 0.0;
  for (std::size_t i = 0; i < pops.size(); ++i) {
    if (basis[i].d == d) p += pops[i];
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double stable_bond_probability(const Basis& basis, std::span<const double> pops) {
  return sum_where_d(basis, pops, -1);
}

double stable_bond_probability(const DensityMatrix& rho) {
  return stable_bond_probability(rho.basis(), populations(rho));
}

double broken_bond_probability(const Basis& basis, std::span<const double> pops) {
  return sum_where_d(basis, pops, 2);
}

double broken_bond_probability(const DensityMatrix& rho) {
  return broken_bond_probability(rho.basis(), populations(rho));
}

double purity(const ComplexMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  const double p = rho.cwiseAbs2().sum();
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
  }
  return "?";
}

Region classify_region(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p", "probability " + std::to_string(p) + " outside [0, 1]");
  if (p < 0.1) return Region::I;
  if (p < 0.5) return Region::II;
  if (p < 0.9) return Region::III;
  return Region::IV;
}

SteadyWindow::SteadyWindow(double tol, std::size_t window) : tol_(tol), window_(window) {
  if (!(tol > 0.0)) throw DomainError("tol", "must be > 0");
  if (window < 2) throw DomainError("window", "must be >= 2");
}

bool SteadyWindow::push(std::span<const double> pops) {
  samples_.emplace_back(pops.begin(), pops.end());
  if (samples_.size() > window_) samples_.pop_front();
  if (samples_.size() < window_) return false;
  const std::size_t n = samples_.front().size();
  for (std::size_t j = 0; j < n; ++j) {
    double lo = samples_.front()[j];
    double hi = lo;
    for (const auto& s : samples_) {
      lo = std::min(lo, s[j]);
      hi = std::max(hi, s[j]);
    }
    if (hi - lo >= tol_) return false;
  }
  return true;
}

std::optional<double> detect_steady(std::span<const double> times, const std::vector<std::vector<double>>& pops,
                                    double tol, std::size_t window) {
  if (times.size() != pops.size()) throw DomainError("times", "length does not match populations");
  SteadyWindow w(tol, window);
  for (std::size_t j = 0; j < pops.size(); ++j) {
    if (w.push(pops[j])) return times[j + 1 - window];
  }
  return std::nullopt;
}

}  // namespace hbqme
