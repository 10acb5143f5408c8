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

#include "hbqme/validation.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hbqme/constants.hpp"
#include "hbqme/errors.hpp"
#include "hbqme/generator.hpp"
#include "hbqme/integrate.hpp"
#include "hbqme/observables.hpp"

namespace hbqme {

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(n(rng), n(rng));
  }
  return 0.5 * (m + m.adjoint());
}

DensityMatrix random_density(const BasisPtr& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(basis->dim());
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(n(rng), n(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(basis, std::move(rho));
}

namespace {

class Suite {
 public:
  void check(const std::string& group, const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{group, name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

std::string fail_if(bool bad, const std::string& what, double value) {
  if (!bad) return {};
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

template <class F>
std::string expect_domain_error(F&& f, const std::string& parameter) {
  try {
    f();
  } catch (const DomainError& e) {
    if (std::string(e.what()).find(parameter) == std::string::npos) {
      return std::string("rejected without naming '") + parameter + "': " + e.what();
    }
    return {};
  }
  return "accepted an invalid value for '" + parameter + "'";
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  Suite s;
  std::mt19937_64 rng(seed);

  s.check("basis", "dimensions", [] {
    for (int n = 1; n <= 30; ++n) {
      if (Basis::build(BasisMode::restricted, n)->dim() != static_cast<std::size_t>(5 * n + 2)) return std::string("restricted");
      if (Basis::build(BasisMode::full, n)->dim() != static_cast<std::size_t>(8 * (n + 1))) return std::string("full");
    }
    return std::string();
  });
  s.check("basis", "closure under H and jumps", [] {
    for (int n : {1, 2, 5}) {
      const auto full = Basis::build(BasisMode::full, n);
      const auto r = Basis::build(BasisMode::restricted, n);
      std::vector<OperatorMatrix> ops{build_hamiltonian(full, HamiltonianParams::reference(kHydrogenBondEnergyEv))};
      for (auto k : {ChannelKind::bond, ChannelKind::isol, ChannelKind::phn}) {
        ops.push_back(jump_operator(full, k));
      }
      for (const auto& op : ops) {
        for (std::size_t j = 0; j < full->dim(); ++j) {
          if (!r->contains((*full)[j])) continue;
          for (std::size_t i = 0; i < full->dim(); ++i) {
            if (std::abs(op(i, j)) > 0.0 && !r->contains((*full)[i])) {
              return "image " + (*full)[i].label() + " of " + (*full)[j].label() + " leaves the basis";
            }
          }
        }
      }
    }
    return std::string();
  });

  const auto basis = Basis::build(BasisMode::restricted, 1);
  ModelParams ref = ModelParams::reference();
  const Model model = build_model(ref);

  s.check("operators", "hamiltonian hermitian", [&] {
    return fail_if(!model.hamiltonian.is_hermitian(1e-12), "non-Hermitian", 0.0);
  });
  s.check("operators", "no coherent coupling of bonded states", [&] {
    for (std::size_t i = 0; i < basis->dim(); ++i) {
      if ((*basis)[i].d != -1) continue;
      for (std::size_t j = 0; j < basis->dim(); ++j) {
        if (i != j && (std::abs(model.hamiltonian(i, j)) > 0.0 || std::abs(model.hamiltonian(j, i)) > 0.0)) {
          return (*basis)[i].label() + " is coupled";
        }
      }
    }
    return std::string();
  });

  s.check("lindblad", "dissipator trace-free", [&] {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const ComplexMatrix rho = random_hermitian(basis->dim(), rng);
      for (const auto& ch : model.channels) {
        Channel c(ch.kind(), ch.jump(), ch.gamma_out(), 0.5, ch.hbar_omega());
        worst = std::max(worst, std::abs(dissipator(rho, c).trace()));
      }
    }
    return fail_if(worst > 1e-12, "trace", worst);
  });
  s.check("lindblad", "generator matches right-hand side", [&] {
    const SparseComplex g = generator_matrix(model.hamiltonian, model.channels);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix rho = random_hermitian(basis->dim(), rng);
      const ComplexVector a = g * vectorize(rho);
      const ComplexVector b = vectorize(qme_rhs(rho, model.hamiltonian, model.channels));
      worst = std::max(worst, kHbarEvS * (a - b).cwiseAbs().maxCoeff());
    }
    return fail_if(worst > 1e-12, "max deviation in eV", worst);
  });
  s.check("lindblad", "generator spectrum dissipative", [&] {
    const ComplexMatrix g = kHbarEvS * ComplexMatrix(generator_matrix(model.hamiltonian, model.channels));
    Eigen::ComplexEigenSolver<ComplexMatrix> es(g, false);
    const double max_re = es.eigenvalues().real().maxCoeff();
    return fail_if(max_re > 1e-10, "max real part in eV", max_re);
  });

  s.check("integrate", "propagator unitary", [&] {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const OperatorMatrix h(basis, 1e-2 * random_hermitian(basis->dim(), rng), OperatorUnit::energy_ev);
      const ComplexMatrix u = propagator(h, ref.integrator.dt).matrix();
      worst = std::max(worst, (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
    }
    return fail_if(worst > 1e-12, "|U U+ - I|", worst);
  });
  s.check("integrate", "projection idempotent", [&] {
    const DensityMatrix rho = random_density(basis, rng);
    const DensityMatrix once = project_physical(rho.matrix(), basis);
    const DensityMatrix twice = project_physical(once.matrix(), basis);
    const double d = std::max((once.matrix() - rho.matrix()).cwiseAbs().maxCoeff(),
                              (twice.matrix() - once.matrix()).cwiseAbs().maxCoeff());
    return fail_if(d > 1e-14, "change", d);
  });

  s.check("observables", "region bins", [] {
    if (classify_region(0.05) != Region::I || classify_region(0.1) != Region::II ||
        classify_region(0.5) != Region::III || classify_region(0.9) != Region::IV || classify_region(1.0) != Region::IV) {
      return std::string("bin edges");
    }
    return std::string();
  });

  s.check("guards", "dt = tau rejected", [&] {
    ModelParams p = ref;
    p.integrator.dt = p.integrator.tau;
    return expect_domain_error([&] { p.validate(); }, "dt");
  });
  s.check("guards", "mu = 1.2 rejected", [&] {
    ModelParams p = ref;
    p.bond.mu = 1.2;
    return expect_domain_error([&] { p.validate(); }, "mu_bond");
  });
  s.check("guards", "channel with mu >= 1 rejected", [&] {
    return expect_domain_error([&] { Channel(ChannelKind::phn, model.channels[2].jump(), kReferenceRateEv, 1.0, 0.1); },
                               "mu_phn");
  });
  return s.take();
}

std::vector<CheckResult> check_model(const ModelParams& params) {
  Suite s;
  s.check("config", "parameters valid", [&] {
    try {
      params.validate();
    } catch (const DomainError& e) {
      return std::string(e.what());
    }
    return std::string();
  });
  auto results = s.take();
  if (!results.front().passed) return results;
  s.check("config", "hamiltonian hermitian", [&] {
    const Model m = build_model(params);
    return fail_if(!m.hamiltonian.is_hermitian(1e-12), "non-Hermitian", 0.0);
  });
  s.check("config", "short run stays physical", [&] {
    ModelParams p = params;
    p.integrator.t_end = 1000 * p.integrator.dt;
    p.integrator.steady_stop = false;
    const Model m = build_model(p);
    const Trajectory t = evolve(m, initial_density(p, m.basis), p, p.integrator);
    if (auto err = DensityMatrix::check(t.final_state)) return *err;
    return std::string();
  });
  for (auto& r : s.take()) results.push_back(std::move(r));
  return results;
}

}  // namespace hbqme
