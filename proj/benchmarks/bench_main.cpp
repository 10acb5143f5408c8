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

#include <random>

#include <benchmark/benchmark.h>

#include "hbqme/generator.hpp"
#include "hbqme/integrate.hpp"
#include "hbqme/validation.hpp"

namespace hbqme {
namespace {

ModelParams params_for(int n_max, Scheme scheme, std::size_t project_every) {
  ModelParams p = ModelParams::reference();
  p.n_max = n_max;
  p.phn.mu = 0.01;
  p.initial.state = {0, 0, n_max};
  p.integrator.scheme = scheme;
  p.integrator.project_every = project_every;
  return p;
}

void BM_EulerStep(benchmark::State& state) {
  const ModelParams p = params_for(static_cast<int>(state.range(0)), Scheme::euler_split, state.range(1));
  const Model m = build_model(p);
  Stepper s(m, p.integrator);
  ComplexMatrix rho = initial_density(p, m.basis).matrix();
  for (auto _ : state) {
    s.step(rho);
    benchmark::DoNotOptimize(rho.data());
  }
  state.counters["dim"] = static_cast<double>(m.basis->dim());
}
BENCHMARK(BM_EulerStep)->ArgsProduct({{1, 5, 20}, {0, 1}});

void BM_Rk4Step(benchmark::State& state) {
  const ModelParams p = params_for(static_cast<int>(state.range(0)), Scheme::rk4, 1);
  const Model m = build_model(p);
  Stepper s(m, p.integrator);
  ComplexMatrix rho = initial_density(p, m.basis).matrix();
  for (auto _ : state) {
    s.step(rho);
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_Rk4Step)->Arg(1)->Arg(5)->Arg(20);

void BM_Projection(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto basis = Basis::build(BasisMode::restricted, static_cast<int>(state.range(0)));
  const ComplexMatrix valid = random_density(basis, rng).matrix();
  ComplexMatrix indefinite = valid;
  indefinite(0, 0) -= 0.5;
  const ComplexMatrix& source = state.range(1) ? indefinite : valid;
  for (auto _ : state) {
    ComplexMatrix m = source;
    benchmark::DoNotOptimize(project_physical_inplace(m));
  }
}
BENCHMARK(BM_Projection)->ArgsProduct({{1, 5, 20}, {0, 1}});

void BM_SteadyOracle(benchmark::State& state) {
  const ModelParams p = params_for(static_cast<int>(state.range(0)), Scheme::euler_split, 1);
  const Model m = build_model(p);
  const DensityMatrix rho0 = initial_density(p, m.basis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state(m.hamiltonian, m.channels, rho0));
  }
}
BENCHMARK(BM_SteadyOracle)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GeneratorAssembly(benchmark::State& state) {
  const ModelParams p = params_for(static_cast<int>(state.range(0)), Scheme::euler_split, 1);
  const Model m = build_model(p);
  for (auto _ : state) benchmark::DoNotOptimize(generator_matrix(m.hamiltonian, m.channels));
}
BENCHMARK(BM_GeneratorAssembly)->Arg(1)->Arg(5)->Arg(20);

}  // namespace
}  // namespace hbqme

BENCHMARK_MAIN();
