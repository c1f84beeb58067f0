// Copyright 2026 The Thermoforge Authors
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

#include <benchmark/benchmark.h>

#include <vector>

#include "thermoforge/asymmetry.hpp"
#include "thermoforge/divergences.hpp"
#include "thermoforge/majorization.hpp"
#include "thermoforge/transforms.hpp"
#include "thermoforge/veribench.hpp"

namespace {

using namespace thermoforge;

EngineSpec spec_of_size(std::size_t d1, std::size_t d2) {
  Rng rng(1, d1 * 100 + d2);
  TrialConfig cfg;
  return EngineSpec(random_levels(rng, d1, cfg.energy_max),
                    random_levels(rng, d2, cfg.energy_max), BathPair(0.5, 1.5));
}

void BM_DMajorizeLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2, n);
  const auto q = random_simplex(rng, n);
  const auto p = random_simplex(rng, n);
  const auto p2 = gibbs_preserving_image(rng, p, q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_majorize_lp(p, q, p2, q));
  }
}
BENCHMARK(BM_DMajorizeLp)->Arg(4)->Arg(6)->Arg(12)->Arg(24);

void BM_ThermoMajorizes(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const EngineSpec spec = spec_of_size(d, d);
  Rng rng(3, d);
  const BlockSpectrum a = random_state(rng, spec);
  const BlockSpectrum b(gibbs_preserving_image(rng, a.p(), semi_gibbs(spec).q), spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thermo_majorizes(a, b, spec));
  }
}
BENCHMARK(BM_ThermoMajorizes)->Arg(2)->Arg(4)->Arg(8);

void BM_FreeEntropyDistance(benchmark::State& state) {
  const EngineSpec spec = spec_of_size(3, 2);
  Rng rng(4, 0);
  const Transformation t(random_state(rng, spec), random_state(rng, spec), spec);
  const TransformOptions opts{static_cast<int>(state.range(0)), 1e-9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_entropy_distance(t, opts));
  }
}
BENCHMARK(BM_FreeEntropyDistance)->Arg(30)->Arg(120)->Arg(480);

void BM_RenyiDivergence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5, n);
  const auto p = random_simplex(rng, n);
  const auto q = random_simplex(rng, n);
  const Alpha a = Alpha::of(2.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_relative_entropy(p, q, a));
  }
}
BENCHMARK(BM_RenyiDivergence)->Arg(4)->Arg(64)->Arg(1024);

void BM_Asymmetry(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const EngineSpec spec = spec_of_size(d, d);
  Rng rng(6, d);
  const DenseState rho = random_dense_state(rng, spec.joint_dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymmetry(rho, spec, Alpha::of(1.5)));
  }
}
BENCHMARK(BM_Asymmetry)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
