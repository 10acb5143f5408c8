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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"
#include "hbqme/integrate.hpp"
#include "hbqme/validation.hpp"
#include "test_support.hpp"

namespace hbqme {
namespace {

ModelParams unitary_params() {
  ModelParams p = ModelParams::reference();
  p.bond.gamma_out = p.isol.gamma_out = p.phn.gamma_out = 0.0;
  return p;
}

TEST(Propagator, ZeroHamiltonianIsIdentity) {
  const auto b = Basis::build(BasisMode::restricted, 2);
  const auto u = propagator(OperatorMatrix::zero(b, OperatorUnit::energy_ev), 1e-15);
  EXPECT_EQ(u.matrix(), ComplexMatrix::Identity(12, 12));
}

TEST(Propagator, UnitaryForRandomHermitian) {
  std::mt19937_64 rng(21);
  const auto b = Basis::build(BasisMode::full, 2);
  for (int k = 0; k < 20; ++k) {
    const OperatorMatrix h(b, 1e-2 * random_hermitian(b->dim(), rng), OperatorUnit::energy_ev);
    const ComplexMatrix u = propagator(h, testing::uniform(rng, 1e-17, 1e-13)).matrix();
    EXPECT_LE((u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Propagator, TwoLevelClosedForm) {
  // Only g_dist: the pair |0,1,0> <-> |1,1,0> is an isolated two-level system.
  const auto b = Basis::build(BasisMode::restricted, 1);
  HamiltonianParams hp = HamiltonianParams::reference(kHydrogenBondEnergyEv);
  hp.g_prot = 0.0;
  const double g = hp.g_dist;
  const auto h = build_hamiltonian(b, hp);
  for (double dt : {3e-17, 1e-13, 7.3e-13}) {
    const auto u = propagator(h, dt);
    const double th = g * dt / kHbarEvS;
    EXPECT_NEAR(std::abs(u.element({0, 1, 0}, {0, 1, 0}) - std::cos(th)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(u.element({1, 1, 0}, {1, 1, 0}) - std::cos(th)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(u.element({1, 1, 0}, {0, 1, 0}) - Complex(0.0, -std::sin(th))), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(u.element({0, 1, 0}, {1, 1, 0}) - Complex(0.0, -std::sin(th))), 0.0, 1e-13);
    EXPECT_EQ(u.element({-1, 0, 0}, {-1, 0, 0}), Complex(1.0));
    EXPECT_EQ(u.element({0, 0, 1}, {0, 1, 0}), Complex(0.0));
  }
}

TEST(Propagator, RejectsNonHermitian) {
  const auto b = Basis::build(BasisMode::restricted, 1);
  const OperatorMatrix x(b, 1e-3 * transition_operator(b, Register::dist, 1, 0).matrix(), OperatorUnit::energy_ev);
  EXPECT_THROW(propagator(x, 1e-15), DomainError);
}

TEST(Projection, ValidStateUnchanged) {
  std::mt19937_64 rng(22);
  const auto b = Basis::build(BasisMode::restricted, 2);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_density(b, rng);
    const auto once = project_physical(rho.matrix(), b);
    EXPECT_LE((once.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    const auto twice = project_physical(once.matrix(), b);
    EXPECT_LE((twice.matrix() - once.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Projection, ClipsAndRenormalizes) {
  ComplexMatrix m(2, 2);
  m << 1.1, 0.0, 0.0, -0.1;
  EXPECT_TRUE(project_physical_inplace(m));
  EXPECT_NEAR(std::abs(m(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1)), 0.0, 1e-15);
}

TEST(Projection, SymmetrizesPerturbation) {
  std::mt19937_64 rng(23);
  const auto b = Basis::build(BasisMode::restricted, 1);
  ComplexMatrix x = random_density(b, rng).matrix();
  x(0, 3) += Complex(1e-6, -2e-6);
  const auto out = project_physical(x, b);
  EXPECT_LE((out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_FALSE(DensityMatrix::check(out.matrix()).has_value());
}

TEST(Projection, NothingLeftIsAnError) {
  ComplexMatrix m(2, 2);
  m << -0.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(project_physical_inplace(m), IntegrationError);
  m << std::nan(""), 0.0, 0.0, 1.0;
  EXPECT_THROW(project_physical_inplace(m), IntegrationError);
}

TEST(EulerStep, UnitaryLimitIsConjugation) {
  std::mt19937_64 rng(24);
  ModelParams p = unitary_params();
  const Model m = build_model(p);
  const auto rho = random_density(m.basis, rng);
  const auto u = propagator(m.hamiltonian, p.integrator.dt);
  const auto next = euler_step(rho, u, m.channels, p.integrator.dt, false);
  const ComplexMatrix expect = u.matrix() * rho.matrix() * u.matrix().adjoint();
  EXPECT_LE((next.matrix() - expect).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(EulerStep, TraceExactAfterProjection) {
  std::mt19937_64 rng(25);
  const ModelParams p = ModelParams::reference();
  const Model m = build_model(p);
  const auto u = propagator(m.hamiltonian, p.integrator.dt);
  auto rho = DensityMatrix::pure(m.basis, {0, 0, 1});
  for (int k = 0; k < 100; ++k) {
    rho = euler_step(rho, u, m.channels, p.integrator.dt);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_FALSE(DensityMatrix::check(rho.matrix()).has_value());
  }
}

TEST(EulerStep, PhononLossFirstOrder) {
  ModelParams p = ModelParams::reference();
  p.bond.gamma_out = p.isol.gamma_out = 0.0;
  p.hamiltonian.g_dist = p.hamiltonian.g_prot = 0.0;
  const Model m = build_model(p);
  const double dt = p.integrator.dt;
  const auto u = propagator(m.hamiltonian, dt);
  const auto next = euler_step(DensityMatrix::pure(m.basis, {0, 0, 1}), u, m.channels, dt);
  const auto i = static_cast<Eigen::Index>(*m.basis->index({0, 0, 0}));
  EXPECT_NEAR(next.matrix()(i, i).real(), p.phn.gamma_out * dt / kHbarEvS, 1e-15);
}

TEST(EulerStep, BasisMismatch) {
  const Model m = build_model(ModelParams::reference());
  const auto u = propagator(m.hamiltonian, 1e-17);
  const auto rho = DensityMatrix::pure(Basis::build(BasisMode::full, 1), {0, 0, 1});
  EXPECT_THROW(euler_step(rho, u, m.channels, 1e-17), DomainError);
}

TEST(Stepper, MatchesFreeFunctions) {
  std::mt19937_64 rng(26);
  for (auto scheme : {Scheme::euler_split, Scheme::rk4}) {
    ModelParams p = ModelParams::reference();
    p.phn.mu = 0.3;
    p.integrator.scheme = scheme;
    const Model m = build_model(p);
    Stepper s(m, p.integrator);
    auto ref = random_density(m.basis, rng);
    ComplexMatrix rho = ref.matrix();
    const auto u = propagator(m.hamiltonian, p.integrator.dt);
    for (int k = 0; k < 50; ++k) {
      s.step(rho);
      ref = scheme == Scheme::euler_split ? euler_step(ref, u, m.channels, p.integrator.dt)
                                          : rk4_step(ref, m.hamiltonian, m.channels, p.integrator.dt);
    }
    EXPECT_LE((rho - ref.matrix()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Stepper, LocalErrorIsSecondOrderAndTraceIsExact) {
  // Pre-projection trace deviation stays at rounding level; the local error
  // of the split step against a fine RK4 reference falls by ~4x per halving.
  std::mt19937_64 rng(27);
  ModelParams p = ModelParams::reference();
  p.bond.mu = 0.2;
  const Model m = build_model(p);
  const auto rho = random_density(m.basis, rng);
  auto reference = [&](double dt) {
    DensityMatrix r = rho;
    for (int k = 0; k < 200; ++k) r = rk4_step(r, m.hamiltonian, m.channels, dt / 200, false);
    return r.matrix();
  };
  std::vector<double> err;
  for (double dt : {0.04 * p.integrator.tau, 0.02 * p.integrator.tau, 0.01 * p.integrator.tau}) {
    const auto next = euler_step(rho, propagator(m.hamiltonian, dt), m.channels, dt, false);
    EXPECT_LE(std::abs(next.matrix().trace().real() - 1.0), 1e-14);
    err.push_back((next.matrix() - reference(dt)).cwiseAbs().maxCoeff());
  }
  for (std::size_t k = 0; k + 1 < err.size(); ++k) {
    const double ratio = err[k] / err[k + 1];
    EXPECT_GT(ratio, 3.6) << k;
    EXPECT_LT(ratio, 4.4) << k;
  }
}

TEST(Stepper, InstabilityNamesDt) {
  // The validated path rejects dt = tau outright.
  ModelParams p = ModelParams::reference();
  p.integrator.dt = p.integrator.tau;
  try {
    evolve(DensityMatrix::pure(Basis::build(BasisMode::restricted, 1), {0, 0, 1}), p);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.parameter(), "dt");
  }
}

TEST(Evolve, UnitaryRevivalMatchesThreeLevelChain) {
  const ModelParams p = unitary_params();
  const Model m = build_model(p);
  const double g = p.hamiltonian.g_dist;
  const double period = 2.0 * std::numbers::pi * kHbarEvS / (std::sqrt(2.0) * g);
  const auto steps = static_cast<std::size_t>(std::llround(period / p.integrator.dt));
  Stepper s(m, p.integrator);
  ComplexMatrix rho = DensityMatrix::pure(m.basis, {0, 0, 1}).matrix();
  for (std::size_t k = 0; k < steps; ++k) s.step(rho);

  // Closed-form chain |0,0,1> - |0,1,0> - |1,1,0> with equal couplings g.
  Eigen::Matrix3d chain;
  chain << 0, g, 0, g, 0, g, 0, g, 0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(chain);
  const double t = static_cast<double>(steps) * p.integrator.dt;
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  for (int k = 0; k < 3; ++k) {
    psi += std::exp(Complex(0, -es.eigenvalues()(k) * t / kHbarEvS)) * es.eigenvectors()(0, k) *
           es.eigenvectors().col(k).cast<Complex>();
  }
  const BasisState chain_states[] = {{0, 0, 1}, {0, 1, 0}, {1, 1, 0}};
  double to_oracle = 0.0;
  double to_initial = 0.0;
  for (int k = 0; k < 3; ++k) {
    const auto i = static_cast<Eigen::Index>(*m.basis->index(chain_states[k]));
    to_oracle = std::max(to_oracle, std::abs(rho(i, i).real() - std::norm(psi(k))));
    to_initial = std::max(to_initial, std::abs(rho(i, i).real() - (k == 0 ? 1.0 : 0.0)));
  }
  EXPECT_LE(to_oracle, 1e-9);
  EXPECT_LE(to_initial, 1e-3);
}

TEST(Evolve, UnitaryPurityAndLeakage) {
  ModelParams p = unitary_params();
  p.integrator.steady_stop = false;
  p.integrator.t_end = 1e5 * p.integrator.dt;
  p.integrator.record_stride = 100;
  const Trajectory t = evolve(DensityMatrix::pure(Basis::build(BasisMode::restricted, 1), {0, 0, 1}), p);
  EXPECT_EQ(t.steps, 100000u);
  const auto& b = *t.basis;
  double drift = 0.0;
  double leak = 0.0;
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    drift = std::max(drift, std::abs(t.purity[k] - 1.0));
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const auto& s = b[i];
      const bool chain = s == BasisState{0, 0, 1} || s == BasisState{0, 1, 0} || s == BasisState{1, 1, 0};
      if (!chain) leak = std::max(leak, t.populations[k][i]);
    }
  }
  EXPECT_LE(drift, 1e-8);
  EXPECT_LE(leak, 1e-12);
  EXPECT_FALSE(t.steady_time.has_value());
}

TEST(Evolve, DissipationReachesSteadyState) {
  const ModelParams p = ModelParams::reference();
  const Trajectory t = evolve(DensityMatrix::pure(Basis::build(BasisMode::restricted, 1), {0, 0, 1}), p);
  ASSERT_TRUE(t.steady_time.has_value());
  EXPECT_GT(*t.steady_time, 0.2e-12);
  EXPECT_LT(*t.steady_time, 5e-12);
  EXPECT_EQ(detect_steady(t, p.integrator.steady_tol, p.integrator.window_samples()), t.steady_time);
  for (const auto& pops : t.populations) {
    double sum = 0.0;
    for (double x : pops) {
      EXPECT_GE(x, -1e-10);
      EXPECT_LE(x, 1.0 + 1e-10);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-8);
  }
}

TEST(Evolve, ProjectionCadenceKeepsInvariants) {
  for (std::size_t every : {0u, 1u, 7u}) {
    ModelParams p = ModelParams::reference();
    p.phn.mu = 0.1;
    p.integrator.project_every = every;
    p.integrator.t_end = 2e4 * p.integrator.dt;
    p.integrator.steady_stop = false;
    const Trajectory t = evolve(DensityMatrix::pure(Basis::build(BasisMode::restricted, 1), {1, 1, 0}), p);
    EXPECT_LE(std::abs(t.final_state.trace().real() - 1.0), 1e-10) << every;
    EXPECT_FALSE(DensityMatrix::check(t.final_state).has_value()) << every;
  }
}

TEST(Evolve, Deterministic) {
  ModelParams p = ModelParams::reference();
  p.phn.mu = 0.05;
  p.integrator.t_end = 5e3 * p.integrator.dt;
  const auto rho0 = DensityMatrix::pure(Basis::build(BasisMode::restricted, 1), {0, 0, 1});
  const Trajectory a = evolve(rho0, p);
  const Trajectory b = evolve(rho0, p);
  EXPECT_EQ(a.populations, b.populations);
  EXPECT_EQ(a.times, b.times);
}

TEST(Evolve, RestrictedAndFullAgreeWithoutInflow) {
  std::mt19937_64 rng(28);
  for (int k = 0; k < 20; ++k) {
    ModelParams p = ModelParams::reference();
    p.n_max = 1 + k % 3;
    p.hamiltonian.g_dist = testing::uniform(rng, 0.5, 2) * kReferenceCouplingEv;
    p.hamiltonian.g_prot = testing::uniform(rng, 0.5, 2) * kReferenceCouplingEv;
    p.hamiltonian.zero_rest_energies = k % 5 != 4;
    p.bond.gamma_out = testing::uniform(rng, 0, 2) * kReferenceRateEv;
    p.isol.gamma_out = testing::uniform(rng, 0, 2) * kReferenceRateEv;
    p.phn.gamma_out = testing::uniform(rng, 0, 2) * kReferenceRateEv;
    p.integrator.scheme = k % 2 ? Scheme::rk4 : Scheme::euler_split;
    p.integrator.t_end = 1.5e4 * p.integrator.dt;
    p.integrator.steady_stop = false;
    p.integrator.record_stride = 50;
    const auto restricted = Basis::build(BasisMode::restricted, p.n_max);
    p.initial.state = (*restricted)[std::uniform_int_distribution<std::size_t>(0, restricted->dim() - 1)(rng)];

    const Trajectory r = evolve(initial_density(p, restricted), p);
    ModelParams pf = p;
    pf.basis_mode = BasisMode::full;
    const Trajectory f = evolve(initial_density(pf, Basis::build(BasisMode::full, p.n_max)), pf);
    ASSERT_EQ(r.times.size(), f.times.size());
    double worst = 0.0;
    for (std::size_t t = 0; t < r.times.size(); ++t) {
      for (std::size_t i = 0; i < f.basis->dim(); ++i) {
        const auto j = r.basis->index((*f.basis)[i]);
        const double pr = j ? r.populations[t][*j] : 0.0;
        worst = std::max(worst, std::abs(pr - f.populations[t][i]));
      }
    }
    EXPECT_LE(worst, 1e-9) << "draw " << k;
  }
}

}  // namespace
}  // namespace hbqme
