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

#include "hbqme/integrate.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

constexpr double kTraceGuard = 1e-3;

SparseComplex sparse_of(const ComplexMatrix& m) {
  SparseComplex s = m.sparseView(Complex(1.0, 0.0), 0.0);
  s.makeCompressed();
  return s;
}

// Connected components of the off-diagonal sparsity graph.
std::vector<std::vector<Eigen::Index>> blocks_of(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (h(i, j) != Complex(0.0, 0.0) || h(j, i) != Complex(0.0, 0.0)) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<std::ptrdiff_t> slot(static_cast<std::size_t>(d), -1);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto r = static_cast<std::size_t>(find(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

void check_step(const ComplexMatrix& rho, double dt, double& max_dev) {
  if (!rho.allFinite()) {
    throw IntegrationError("non-finite density matrix; reduce dt (dt = " + std::to_string(dt) + " s)");
  }
  const double dev = std::abs(rho.trace().real() - 1.0);
  max_dev = std::max(max_dev, dev);
  if (dev > kTraceGuard) {
    throw IntegrationError("trace deviation " + std::to_string(dev) + " before projection; reduce dt (dt = " +
                           std::to_string(dt) + " s)");
  }
}

}  // namespace

OperatorMatrix propagator(const OperatorMatrix& h, double dt) {
  const ComplexMatrix& m = h.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!h.is_hermitian(1e-12 * scale)) throw DomainError("H", "propagator requires a Hermitian Hamiltonian");
  const Eigen::Index d = m.rows();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (const auto& blk : blocks_of(m)) {
    const auto n = static_cast<Eigen::Index>(blk.size());
    if (n == 1) {
      const Eigen::Index i = blk[0];
      u(i, i) = std::exp(Complex(0.0, -m(i, i).real() * dt / kHbarEvS));
      continue;
    }
    ComplexMatrix sub(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = m(blk[a], blk[b]);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sub);
    ComplexVector phase(n);
    for (Eigen::Index k = 0; k < n; ++k) phase(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * dt / kHbarEvS));
    const ComplexMatrix ub = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) u(blk[a], blk[b]) = ub(a, b);
    }
  }
  return {h.basis_ptr(), std::move(u)};
}

bool project_physical_inplace(ComplexMatrix& rho) {
  if (!rho.allFinite()) throw IntegrationError("projection of a non-finite matrix");
  rho = 0.5 * (rho + rho.adjoint()).eval();
  // An LDLT factorization with non-negative pivots certifies rho >= 0.
  Eigen::LDLT<ComplexMatrix> ldlt(rho);
  bool clipped = false;
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().real().array() < 0.0).any()) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    clipped = true;
  }
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw IntegrationError("density matrix vanished after clipping negative eigenvalues");
  rho /= tr;
  return clipped;
}

DensityMatrix project_physical(const ComplexMatrix& raw, const BasisPtr& basis) {
  ComplexMatrix rho = raw;
  project_physical_inplace(rho);
  return DensityMatrix::trusted(basis, std::move(rho));
}

DensityMatrix euler_step(const DensityMatrix& rho, const OperatorMatrix& u, std::span<const Channel> channels,
                         double dt, bool project) {
  require_same_space(rho.basis(), u.basis(), "euler_step");
  const ComplexMatrix& um = u.matrix();
  ComplexMatrix next = um * rho.matrix() * um.adjoint();
  for (const auto& ch : channels) {
    require_same_space(rho.basis(), ch.jump().basis(), "euler_step");
  }
  ComplexMatrix l = ComplexMatrix::Zero(next.rows(), next.cols());
  for (const auto& ch : channels) l += dissipator(next, ch);
  next += (dt / kHbarEvS) * l;
  if (project) project_physical_inplace(next);
  return DensityMatrix::trusted(rho.basis_ptr(), std::move(next));
}

DensityMatrix rk4_step(const DensityMatrix& rho, const OperatorMatrix& h, std::span<const Channel> channels,
                       double dt, bool project) {
  require_same_space(rho.basis(), h.basis(), "rk4_step");
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix k1 = qme_rhs(r, h, channels);
  const ComplexMatrix k2 = qme_rhs(r + 0.5 * dt * k1, h, channels);
  const ComplexMatrix k3 = qme_rhs(r + 0.5 * dt * k2, h, channels);
  const ComplexMatrix k4 = qme_rhs(r + dt * k3, h, channels);
  ComplexMatrix next = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (project) project_physical_inplace(next);
  return DensityMatrix::trusted(rho.basis_ptr(), std::move(next));
}

Stepper::Stepper(const Model& model, const IntegratorConfig& cfg)
    : cfg_(cfg), kernel_(model.hamiltonian, model.channels) {
  cfg_.validate();
  if (cfg_.scheme == Scheme::euler_split) {
    u_ = sparse_of(propagator(model.hamiltonian, cfg_.dt).matrix());
    u_adjoint_ = u_.adjoint();
  }
}

void Stepper::step(ComplexMatrix& rho) {
  const double dt = cfg_.dt;
  if (cfg_.scheme == Scheme::euler_split) {
    tmp_.noalias() = u_ * rho;
    rho.noalias() = tmp_ * u_adjoint_;
    if (kernel_.dissipative()) {
      kernel_.dissipation(rho, k1_);
      rho += dt * k1_;
    }
  } else {
    kernel_.rhs(rho, k1_);
    stage_ = rho + (0.5 * dt) * k1_;
    kernel_.rhs(stage_, k2_);
    stage_ = rho + (0.5 * dt) * k2_;
    kernel_.rhs(stage_, k3_);
    stage_ = rho + dt * k3_;
    kernel_.rhs(stage_, k4_);
    rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }
  ++steps_;
  check_step(rho, dt, max_trace_dev_);
  if (cfg_.project_every != 0 && steps_ % cfg_.project_every == 0) project_physical_inplace(rho);
}

Trajectory evolve(const Model& model, const DensityMatrix& rho0, const ModelParams& params,
                  const IntegratorConfig& cfg) {
  require_same_space(rho0.basis(), *model.basis, "evolve");
  Stepper stepper(model, cfg);
  Trajectory traj;
  traj.basis = model.basis;
  traj.params = params;
  traj.params.integrator = cfg;

  ComplexMatrix rho = rho0.matrix();
  const Basis& basis = *model.basis;
  std::optional<SteadyWindow> window;
  if (cfg.steady_stop) window.emplace(cfg.steady_tol, cfg.window_samples());

  auto record = [&](std::size_t step) {
    std::vector<double> pops(basis.dim());
    for (std::size_t i = 0; i < pops.size(); ++i) {
      pops[i] = std::clamp(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(), 0.0, 1.0);
    }
    traj.times.push_back(static_cast<double>(step) * cfg.dt);
    traj.p_stable.push_back(stable_bond_probability(basis, pops));
    traj.p_broken.push_back(broken_bond_probability(basis, pops));
    traj.purity.push_back(purity(rho));
    traj.populations.push_back(std::move(pops));
    if (window && window->push(traj.populations.back())) {
      traj.steady_time = traj.times[traj.times.size() - window->window()];
      return true;
    }
    return false;
  };

  const std::size_t max_steps = cfg.max_steps();
  bool done = record(0);
  for (std::size_t k = 1; k <= max_steps && !done; ++k) {
    stepper.step(rho);
    if (k % cfg.record_stride == 0) {
      done = record(k);
    } else if (k == max_steps) {
      record(k);
    }
  }
  traj.steps = stepper.steps();
  traj.max_trace_deviation = stepper.max_trace_deviation();
  traj.final_state = std::move(rho);
  return traj;
}

Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params, const IntegratorConfig& cfg) {
  ModelParams p = params;
  p.integrator = cfg;
  const Model model = build_model(p);
  return evolve(model, rho0, p, cfg);
}

Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params) {
  return evolve(rho0, params, params.integrator);
}

std::optional<double> detect_steady(const Trajectory& traj, double tol, std::size_t window) {
  return detect_steady(traj.times, traj.populations, tol, window);
}

}  // namespace hbqme
