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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"
#include "hbqme/lindblad.hpp"
#include "hbqme/operators.hpp"
#include "test_support.hpp"

namespace hbqme {
namespace {

const BasisPtr& restricted1() {
  static const BasisPtr b = Basis::build(BasisMode::restricted, 1);
  return b;
}

ComplexVector ket(const Basis& b, BasisState s) { return basis_vector(b, s); }

TEST(Transition, DistanceLowering) {
  const auto& b = restricted1();
  const auto s = transition_operator(b, Register::dist, 1, 0);
  EXPECT_TRUE(s.apply(ket(*b, {1, 1, 0})).isApprox(ket(*b, {0, 1, 0})));
  EXPECT_EQ(s.apply(ket(*b, {0, 0, 1})).norm(), 0.0);
}

TEST(Transition, IsolationJump) {
  const auto& b = restricted1();
  const auto a = transition_operator(b, Register::dist, 1, 2);
  EXPECT_TRUE(a.apply(ket(*b, {1, 1, 0})).isApprox(ket(*b, {2, 1, 0})));
  EXPECT_TRUE(jump_operator(b, ChannelKind::isol).matrix().isApprox(a.matrix()));
}

TEST(Transition, AdjointPairs) {
  const auto f = Basis::build(BasisMode::full, 2);
  for (auto reg : {Register::dist, Register::prot}) {
    const std::vector<int> labels = reg == Register::dist ? std::vector<int>{-1, 0, 1, 2} : std::vector<int>{0, 1};
    for (int a : labels) {
      for (int b : labels) {
        const auto x = transition_operator(f, reg, a, b);
        const auto y = transition_operator(f, reg, b, a);
        EXPECT_EQ(x.adjoint().matrix(), y.matrix());
      }
    }
  }
}

TEST(Transition, InvalidLabelsRejected) {
  const auto& b = restricted1();
  EXPECT_THROW(transition_operator(b, Register::dist, 3, 0), DomainError);
  EXPECT_THROW(transition_operator(b, Register::prot, 0, 2), DomainError);
  EXPECT_THROW(transition_operator(b, Register::phn, 0, 5), DomainError);
}

TEST(PhononAnnihilator, OnePhonon) {
  const auto& b = restricted1();
  for (auto c : {PhononConvention::bosonic, PhononConvention::unit}) {
    const auto a = phonon_annihilator(b, c);
    EXPECT_TRUE(a.apply(ket(*b, {0, 0, 1})).isApprox(ket(*b, {0, 0, 0})));
    EXPECT_EQ(a.apply(ket(*b, {0, 0, 0})).norm(), 0.0);
  }
}

TEST(PhononAnnihilator, BosonicMatchesHandBuiltLadder) {
  const auto b = Basis::build(BasisMode::restricted, 3);
  const auto a = phonon_annihilator(b, PhononConvention::bosonic);
  // a|n> = sqrt(n)|n-1> on a four-level ladder.
  Eigen::Matrix4cd ladder = Eigen::Matrix4cd::Zero();
  ladder(0, 1) = 1.0;
  ladder(1, 2) = std::sqrt(2.0);
  ladder(2, 3) = std::sqrt(3.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(std::abs(a.element({0, 0, i}, {0, 0, j}) - ladder(i, j)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(a.element({-1, 0, i}, {-1, 0, j}) - ladder(i, j)), 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(a.apply(ket(*b, {0, 0, 3})).isApprox(std::sqrt(3.0) * ket(*b, {0, 0, 2})));
  const auto u = phonon_annihilator(b, PhononConvention::unit);
  EXPECT_TRUE(u.apply(ket(*b, {0, 0, 3})).isApprox(ket(*b, {0, 0, 2})));
}

TEST(ConditionalGate, DiagonalUnchanged) {
  const auto& b = restricted1();
  const auto n = phonon_number(b);
  const auto g = conditional_gate(n, [](const BasisState& s) { return s.p == 1; });
  EXPECT_EQ(g.matrix(), n.matrix());
}

TEST(ConditionalGate, DistanceCouplingSurvivesOnlyAtPOne) {
  const auto f = Basis::build(BasisMode::full, 1);
  const auto s = transition_operator(f, Register::dist, 1, 0);
  const auto x = 2e-3 * (s.adjoint() + s);
  const auto g = conditional_gate(x, [](const BasisState& st) { return st.p == 1; });
  EXPECT_DOUBLE_EQ(g.element({1, 1, 0}, {0, 1, 0}).real(), 2e-3);
  EXPECT_EQ(g.element({1, 0, 0}, {0, 0, 0}), Complex(0.0));
  EXPECT_DOUBLE_EQ(x.element({1, 0, 0}, {0, 0, 0}).real(), 2e-3);
}

TEST(ConditionalGate, ProtonCouplingSurvivesOnlyAtDZero) {
  const auto f = Basis::build(BasisMode::full, 1);
  const auto sp = transition_operator(f, Register::prot, 1, 0);
  const auto a = phonon_annihilator(f, PhononConvention::bosonic);
  const double g_prot = 3e-3;
  const auto x = g_prot * (a * sp.adjoint() + a.adjoint() * sp);
  const auto g = conditional_gate(x, [](const BasisState& st) { return st.d == 0; });
  EXPECT_DOUBLE_EQ(g.element({0, 1, 0}, {0, 0, 1}).real(), g_prot);
  EXPECT_EQ(g.element({1, 1, 0}, {1, 0, 1}), Complex(0.0));
}

TEST(ConditionalGate, IdempotentAndHermitian) {
  std::mt19937_64 rng(7);
  const auto f = Basis::build(BasisMode::full, 2);
  for (int k = 0; k < 10; ++k) {
    ComplexMatrix m(f->dim(), f->dim());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
    }
    const OperatorMatrix x(f, 0.5 * (m + m.adjoint()));
    const auto cond = [](const BasisState& s) { return s.d == 0; };
    const auto once = conditional_gate(x, cond);
    EXPECT_EQ(conditional_gate(once, cond).matrix(), once.matrix());
    EXPECT_TRUE(once.is_hermitian(0.0));
  }
}

TEST(ConditionalGate, RejectsNonHermitian) {
  const auto& b = restricted1();
  const auto s = transition_operator(b, Register::dist, 1, 0);
  try {
    conditional_gate(s, [](const BasisState&) { return true; });
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.parameter(), "op");
  }
}

TEST(Hamiltonian, CouplingElements) {
  const auto& b = restricted1();
  HamiltonianParams hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  hp.g_dist = 1.5e-3;
  hp.g_prot = 2.5e-3;
  const auto h = build_hamiltonian(b, hp);
  EXPECT_DOUBLE_EQ(h.element({0, 1, 0}, {0, 0, 1}).real(), 2.5e-3);
  EXPECT_DOUBLE_EQ(h.element({1, 1, 0}, {0, 1, 0}).real(), 1.5e-3);
  EXPECT_TRUE(h.is_hermitian(1e-12));
  EXPECT_EQ(h.unit(), OperatorUnit::energy_ev);
}

TEST(Hamiltonian, RestEnergiesByTermExpansion) {
  HamiltonianParams hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  hp.zero_rest_energies = false;
  hp.hbar_omega_dist = 0.08;
  hp.hbar_omega_prot = 0.13;
  hp.hbar_omega_phn = 0.13;
  for (auto mode : {BasisMode::restricted, BasisMode::full}) {
    const auto b = Basis::build(mode, 2);
    const auto h = build_hamiltonian(b, hp);
    for (const auto& s : b->states()) {
      // hw_dist [d = 1] + hw_prot [p = 1] + hw_phn n
      const double expected = (s.d == 1 ? 0.08 : 0.0) + (s.p == 1 ? 0.13 : 0.0) + 0.13 * s.n;
      EXPECT_NEAR(h.element(s, s).real(), expected, 1e-15) << s.label();
    }
    EXPECT_NEAR(h.element({1, 1, 0}, {1, 1, 0}).real(), 0.08 + 0.13, 1e-15);
  }
}

TEST(Hamiltonian, ZeroRestEnergiesDropsDiagonal) {
  const auto b = Basis::build(BasisMode::restricted, 3);
  const auto h = build_hamiltonian(b, HamiltonianParams::reference(kHydrogenBondEnergyEv));
  EXPECT_EQ(h.matrix().diagonal().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hamiltonian, BondedStatesAreDecoupled) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    HamiltonianParams hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
    hp.g_dist = testing::uniform(rng, 0, 5e-3);
    hp.g_prot = testing::uniform(rng, 0, 5e-3);
    hp.zero_rest_energies = k % 2 == 0;
    for (auto mode : {BasisMode::restricted, BasisMode::full}) {
      const auto b = Basis::build(mode, 1 + k % 4);
      const auto h = build_hamiltonian(b, hp);
      for (std::size_t i = 0; i < b->dim(); ++i) {
        if ((*b)[i].d != -1) continue;
        for (std::size_t j = 0; j < b->dim(); ++j) {
          if (i == j) continue;
          EXPECT_EQ(h(i, j), Complex(0.0));
          EXPECT_EQ(h(j, i), Complex(0.0));
        }
      }
      EXPECT_TRUE(h.is_hermitian(1e-12));
    }
  }
}

TEST(Hamiltonian, CoherentSupportIsThreeStateChain) {
  const auto& b = restricted1();
  const auto h = build_hamiltonian(b, HamiltonianParams::reference(kHydrogenBondEnergyEv));
  const std::vector<BasisState> chain{{0, 0, 1}, {0, 1, 0}, {1, 1, 0}};
  for (std::size_t i = 0; i < b->dim(); ++i) {
    for (std::size_t j = 0; j < b->dim(); ++j) {
      if (i == j || h(i, j) == Complex(0.0)) continue;
      const bool in_chain = std::count(chain.begin(), chain.end(), (*b)[i]) && std::count(chain.begin(), chain.end(), (*b)[j]);
      EXPECT_TRUE(in_chain) << (*b)[i].label() << " - " << (*b)[j].label();
    }
  }
  EXPECT_NE(h.element({0, 0, 1}, {0, 1, 0}), Complex(0.0));
  EXPECT_NE(h.element({0, 1, 0}, {1, 1, 0}), Complex(0.0));
  EXPECT_EQ(h.element({0, 0, 1}, {1, 1, 0}), Complex(0.0));
}

TEST(Hamiltonian, ResonanceAndSignsEnforced) {
  HamiltonianParams hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  hp.hbar_omega_phn = 0.2;
  EXPECT_THROW(hp.validate(), DomainError);
  hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  hp.g_dist = -1e-3;
  try {
    hp.validate();
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.parameter(), "g_dist");
  }
  const auto ref = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  EXPECT_DOUBLE_EQ(ref.hbar_omega_prot + ref.hbar_omega_dist, kHydrogenBondEnergyEv);
  EXPECT_EQ(ref.hbar_omega_phn, ref.hbar_omega_prot);
}

TEST(Operators, BasisMismatchRejected) {
  const auto a = phonon_number(Basis::build(BasisMode::restricted, 1));
  const auto b = phonon_number(Basis::build(BasisMode::restricted, 2));
  EXPECT_THROW(a + b, DomainError);
  EXPECT_THROW(a * b, DomainError);
}

}  // namespace
}  // namespace hbqme
