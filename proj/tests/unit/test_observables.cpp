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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hbqme/errors.hpp"
#include "hbqme/observables.hpp"
#include "hbqme/validation.hpp"
#include "test_support.hpp"

namespace hbqme {
namespace {

TEST(Populations, PureStateIsIndicator) {
  const auto b = Basis::build(BasisMode::restricted, 2);
  for (std::size_t i = 0; i < b->dim(); ++i) {
    const auto pops = populations(DensityMatrix::pure(b, (*b)[i]));
    for (std::size_t j = 0; j < pops.size(); ++j) EXPECT_EQ(pops[j], i == j ? 1.0 : 0.0);
  }
}

TEST(Populations, SumToOneForRandomStates) {
  std::mt19937_64 rng(31);
  for (auto mode : {BasisMode::restricted, BasisMode::full}) {
    const auto b = Basis::build(mode, 3);
    for (int k = 0; k < 20; ++k) {
      const auto pops = populations(random_density(b, rng));
      double sum = 0.0;
      for (double x : pops) {
        EXPECT_GE(x, 0.0);
        sum += x;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(StableBond, SumsOverBondedStates) {
  const auto b = Basis::build(BasisMode::full, 2);
  std::vector<double> pops(b->dim(), 0.0);
  double want_stable = 0.0;
  double want_broken = 0.0;
  for (std::size_t i = 0; i < b->dim(); ++i) {
    pops[i] = static_cast<double>(i + 1);
    if ((*b)[i].d == -1) want_stable += pops[i];
    if ((*b)[i].d == 2) want_broken += pops[i];
  }
  double total = 0.0;
  for (double& x : pops) total += x;
  for (double& x : pops) x /= total;
  EXPECT_NEAR(stable_bond_probability(*b, pops), want_stable / total, 1e-15);
  EXPECT_NEAR(broken_bond_probability(*b, pops), want_broken / total, 1e-15);
}

TEST(StableBond, PureStates) {
  const auto b = Basis::build(BasisMode::restricted, 1);
  EXPECT_EQ(stable_bond_probability(DensityMatrix::pure(b, {-1, 0, 1})), 1.0);
  EXPECT_EQ(stable_bond_probability(DensityMatrix::pure(b, {0, 0, 1})), 0.0);
  EXPECT_EQ(broken_bond_probability(DensityMatrix::pure(b, {2, 1, 0})), 1.0);
  EXPECT_EQ(stable_bond_probability(DensityMatrix::maximally_mixed(b)), 2.0 / 7.0);
}

TEST(StableBond, LengthMismatch) {
  const auto b = Basis::build(BasisMode::restricted, 1);
  const std::vector<double> pops(3, 0.0);
  EXPECT_THROW(stable_bond_probability(*b, pops), DomainError);
}

TEST(Purity, PureAndMixedBounds) {
  std::mt19937_64 rng(32);
  const auto b = Basis::build(BasisMode::restricted, 2);
  EXPECT_NEAR(purity(DensityMatrix::pure(b, {1, 1, 0})), 1.0, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(b)), 1.0 / 12.0, 1e-15);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_density(b, rng);
    const double p = purity(rho);
    EXPECT_GE(p, 1.0 / 12.0 - 1e-12);
    EXPECT_LE(p, 1.0);
    EXPECT_NEAR(p, (rho.matrix() * rho.matrix()).trace().real(), 1e-12);
  }
}

TEST(Region, BoundariesBelongToUpperBin) {
  EXPECT_EQ(classify_region(0.0), Region::I);
  EXPECT_EQ(classify_region(std::nextafter(0.1, 0.0)), Region::I);
  EXPECT_EQ(classify_region(0.1), Region::II);
  EXPECT_EQ(classify_region(std::nextafter(0.5, 0.0)), Region::II);
  EXPECT_EQ(classify_region(0.5), Region::III);
  EXPECT_EQ(classify_region(std::nextafter(0.9, 0.0)), Region::III);
  EXPECT_EQ(classify_region(0.9), Region::IV);
  EXPECT_EQ(classify_region(1.0), Region::IV);
}

TEST(Region, DenseGridIsMonotoneAndTotal) {
  int last = 0;
  for (int k = 0; k <= 100000; ++k) {
    const double p = k / 100000.0;
    const int r = static_cast<int>(classify_region(p));
    EXPECT_GE(r, last);
    const int expect = p < 0.1 ? 0 : p < 0.5 ? 1 : p < 0.9 ? 2 : 3;
    ASSERT_EQ(r, expect) << p;
    last = r;
  }
}

TEST(Region, OutOfRangeRejected) {
  EXPECT_THROW(classify_region(-1e-9), DomainError);
  EXPECT_THROW(classify_region(1.0 + 1e-9), DomainError);
  EXPECT_THROW(classify_region(std::nan("")), DomainError);
}

TEST(Region, Labels) {
  EXPECT_EQ(to_string(Region::I), "I");
  EXPECT_EQ(to_string(Region::IV), "IV");
}

TEST(SteadyWindow, FiresOnceFlat) {
  SteadyWindow w(1e-3, 3);
  const std::vector<double> a{0.5, 0.5};
  const std::vector<double> b{0.5005, 0.4995};
  EXPECT_FALSE(w.push(a));
  EXPECT_FALSE(w.push(b));
  EXPECT_TRUE(w.push(a));
  const std::vector<double> jump{0.6, 0.4};
  EXPECT_FALSE(w.push(jump));
}

TEST(SteadyWindow, RejectsBadArguments) {
  EXPECT_THROW(SteadyWindow(0.0, 3), DomainError);
  EXPECT_THROW(SteadyWindow(1e-3, 1), DomainError);
}

TEST(DetectSteady, ReturnsWindowStart) {
  // Exponential relaxation: the first window whose spread is below tol.
  std::vector<double> times;
  std::vector<std::vector<double>> pops;
  for (int k = 0; k < 400; ++k) {
    const double x = std::exp(-k / 20.0);
    times.push_back(k * 1e-15);
    pops.push_back({x, 1.0 - x});
  }
  const double tol = 1e-4;
  const std::size_t window = 10;
  const auto t = detect_steady(times, pops, tol, window);
  ASSERT_TRUE(t.has_value());
  std::size_t start = 0;
  while (pops[start][0] - pops[start + window - 1][0] >= tol) ++start;
  EXPECT_DOUBLE_EQ(*t, times[start]);
}

TEST(DetectSteady, NeverFiresOnOscillation) {
  std::vector<double> times;
  std::vector<std::vector<double>> pops;
  for (int k = 0; k < 500; ++k) {
    const double x = 0.5 + 0.25 * std::sin(k * 0.3);
    times.push_back(k);
    pops.push_back({x, 1.0 - x});
  }
  EXPECT_FALSE(detect_steady(times, pops, 1e-6, 10).has_value());
  times.pop_back();
  EXPECT_THROW(detect_steady(times, pops, 1e-6, 10), DomainError);
}

}  // namespace
}  // namespace hbqme
