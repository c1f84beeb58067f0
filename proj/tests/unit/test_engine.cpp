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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "thermoforge/divergences.hpp"
#include "thermoforge/engine.hpp"
#include "thermoforge/error.hpp"
#include "thermoforge/instance.hpp"

using namespace thermoforge;
using testing::near;

namespace {

std::vector<double> gibbs(const std::vector<double>& h, double beta) {
  std::vector<double> g(h.size());
  double z = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) z += g[i] = std::exp(-beta * h[i]);
  for (double& x : g) x /= z;
  return g;
}

std::vector<double> kron(const std::vector<double>& a,
                         const std::vector<double>& b) {
  std::vector<double> out;
  for (double x : a)
    for (double y : b) out.push_back(x * y);
  return out;
}

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  for (double& x : p) x = e(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double mean_energy(const std::vector<double>& p, const std::vector<double>& h) {
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * h[i];
  return e;
}

}  // namespace

TEST_CASE("SWAP is an involution") {
  std::mt19937_64 rng(41);
  const EngineSpec spec(EnergyLevels({0.0, 0.7, 1.9}), EnergyLevels({0.0, 1.3}),
                        BathPair(0.4, 1.1));
  const BlockSpectrum s(random_simplex(rng, 6), spec);
  const EngineSpec sw = swapped_spec(spec);
  CHECK(sw.h1() == spec.h2());
  CHECK(sw.h2() == spec.h1());
  const BlockSpectrum once = swap_state(s, spec);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(once[sw.index(j, i)] == s[spec.index(i, j)]);
  CHECK(swap_state(once, sw) == s);
  CHECK(swapped_spec(sw) == spec);

  const EngineCycle c = one_step_cycle(s, spec);
  CHECK(c.transformation.final_spec() == sw);
  CHECK(c.transformation.final() == once);
}

TEST_CASE("engine mode needs beta1 < beta2") {
  const EngineSpec equal(EnergyLevels({0.0, 1.0}), EnergyLevels({0.0, 1.0}),
                         BathPair(1.0, 1.0));
  const EngineSpec reversed(EnergyLevels({0.0, 1.0}), EnergyLevels({0.0, 1.0}),
                            BathPair(2.0, 1.0));
  const std::vector<double> flat(4, 0.25);
  CHECK_THROWS_AS(one_step_cycle(BlockSpectrum(flat, equal), equal), InputError);
  CHECK_THROWS_AS(one_step_cycle(BlockSpectrum(flat, reversed), reversed),
                  InputError);
}

TEST_CASE("symmetric product states give the identity cycle") {
  const EngineSpec spec = testing::qubit_pair();
  const std::vector<double> tau{0.8, 0.2};
  const EngineCycle c = one_step_cycle(BlockSpectrum(kron(tau, tau), spec), spec);
  CHECK(c.transformation.final() == c.state);
  const Spontaneity sp = engine_spontaneous(c);
  CHECK(sp.spontaneous);
  CHECK(sp.budget == 0.0);
  for (const AlphaWorkRow& row : alpha_works(c, standard_alpha_grid(20))) {
    CHECK(near(row.w1, 0.0, 1e-14));
    CHECK(near(row.w2, 0.0, 1e-14));
  }
  const HeatReport h = heat_report(c, 0.0, 0.0);
  CHECK(h.q1 == 0.0);
  CHECK(h.q2 == 0.0);
}

TEST_CASE("alpha = 1 works match the Helmholtz closed form") {
  const EngineSpec spec = testing::qubit_pair();
  const std::vector<double> h{0.0, 1.0};
  const double b1 = 0.5, b2 = 1.0;
  const auto rho = gibbs(h, b1 * 0.5);
  const auto sigma = gibbs(h, b2 * 2.0);
  const EngineCycle c = one_step_cycle(BlockSpectrum(kron(rho, sigma), spec), spec);
  const AlphaWorkRow row = alpha_work(c, Alpha::one());
  // S_1(p; beta, H) = beta <E>_p - H(p).
  auto s1 = [&](const std::vector<double>& p, double beta) {
    return beta * mean_energy(p, h) - shannon(p);
  };
  CHECK(near(row.w1, (s1(rho, b1) - s1(sigma, b1)) / b1, 1e-12));
  CHECK(near(row.w2, (s1(sigma, b2) - s1(rho, b2)) / b2, 1e-12));
  CHECK(near(row.w_ext, row.w1 + row.w2, 1e-15));
  CHECK(alpha_works(c, standard_alpha_grid(120)).size() == 123);
}

TEST_CASE("non-product states have no alpha-work table") {
  const EngineSpec spec = testing::qubit_pair();
  const EngineCycle c =
      one_step_cycle(BlockSpectrum({0.5, 0.0, 0.0, 0.5}, spec), spec);
  CHECK_FALSE(is_product(c.state, spec));
  CHECK_THROWS_AS(alpha_works(c, standard_alpha_grid(10)), InputError);
  CHECK_THROWS_AS(resolve_split(c, 0.1, {EngineSplitKind::kAlphaOne, 0.0}),
                  InputError);
  const ResolvedSplit s = resolve_split(c, 0.1, {});
  CHECK(near(s.w1, 2.0 * 0.1 / 0.5, 1e-15));
  CHECK(s.w2 < 0.0);
}

TEST_CASE("hot and cold thermal states") {
  const EngineSpec spec = testing::qubit_pair();
  const std::vector<double> h{0.0, 1.0};
  // Each subsystem starts thermal at the other bath: the swap returns both to
  // equilibrium.
  const auto fwd = kron(gibbs(h, 1.0), gibbs(h, 0.5));
  const Spontaneity sp = engine_spontaneous(one_step_cycle(BlockSpectrum(fwd, spec), spec));
  CHECK(sp.spontaneous);
  CHECK(near(sp.budget, 0.0, 1e-12));  // D_0 vanishes on full support
  CHECK(sp.budget_sup > 0.0);

  // Attached to their own baths, the swap drives both away from equilibrium:
  // budget = -D_max(swapped || semi-Gibbs).
  const auto own = kron(gibbs(h, 0.5), gibbs(h, 1.0));
  const Spontaneity back =
      engine_spontaneous(one_step_cycle(BlockSpectrum(own, spec), spec));
  CHECK_FALSE(back.spontaneous);
  double dmax = -HUGE_VAL;
  for (std::size_t k = 0; k < 4; ++k) dmax = std::max(dmax, std::log(fwd[k] / own[k]));
  CHECK(near(back.budget, -dmax, 1e-9));
}

TEST_CASE("second-law statements on spontaneous product engines") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int found = 0, compared = 0, positive = 0;
  for (int attempt = 0; attempt < 20000 && found < 150; ++attempt) {
    const double b1 = 0.2 + u(rng);
    const double b2 = b1 + 0.1 + 2.0 * u(rng);
    const std::vector<double> h1{0.0, 2.0 * u(rng)};
    const std::vector<double> h2{0.0, 2.0 * u(rng)};
    const EngineSpec spec(EnergyLevels(h1), EnergyLevels(h2), BathPair(b1, b2));
    const auto rho = random_simplex(rng, 2);
    const auto sigma = random_simplex(rng, 2);
    const EngineCycle c = one_step_cycle(BlockSpectrum(kron(rho, sigma), spec), spec);
    const Spontaneity sp = engine_spontaneous(c);
    if (!sp.spontaneous) continue;
    ++found;
    positive += sp.budget > 1e-6;
    CHECK(sp.budget >= -1e-9);

    // Clausius alpha-statements and the budget as inf of the summed works.
    double inf_sum = HUGE_VAL;
    for (const AlphaWorkRow& row : alpha_works(c, standard_alpha_grid(120))) {
      const double s = b1 * row.w1 + b2 * row.w2;
      CHECK(s >= -1e-9);
      inf_sum = std::min(inf_sum, s);
    }
    CHECK(sp.budget <= inf_sum + 1e-9);
    const Extremum refined = scan_extremum(
        [&](Alpha a) {
          const AlphaWorkRow row = alpha_work(c, a);
          return b1 * row.w1 + b2 * row.w2;
        },
        standard_alpha_grid(120), Sense::Minimize);
    CHECK(near(sp.budget, refined.value, 1e-7));

    // Carnot identity and Kelvin-Planck on the saturated split family.
    for (double w1 : {0.1, 1.0, 4.0}) {
      const ResolvedSplit split =
          resolve_split(c, sp.budget, {EngineSplitKind::kUser, w1});
      CHECK(near(b1 * split.w1 + b2 * split.w2, sp.budget, 1e-12));
      const Statements st = statements_report(c, sp.budget, split);
      const double w_ext = split.w1 + split.w2;
      CHECK(near(w_ext - split.w1, split.w2, 1e-15));
      const double eta1 = w_ext / split.w1;
      CHECK(near(eta1 - (1.0 - b1 / b2), sp.budget / (b2 * w1), 1e-12));
      CHECK(st.evaluable == (split.w2 <= 0.0));
      if (!st.evaluable) continue;
      CHECK(near(*st.eta1, eta1, 1e-15));
      CHECK(st.carnot1.holds);
      CHECK(st.kelvin_planck.holds);
      CHECK(st.clausius.holds);
    }

    // Local thermal operations do no better than the joint ones.
    const LocalToComparison lt = local_to_comparison(c, sp.budget);
    if (lt.eta1 && lt.matched_eta1) {
      ++compared;
      CHECK(*lt.eta1 <= *lt.matched_eta1 + 1e-9);
    }
    if (lt.eta2 && lt.matched_eta2) CHECK(*lt.eta2 <= *lt.matched_eta2 + 1e-9);

    // Heat: Q_x = dE_x + W_x; position x ends with the other marginal under
    // the other Hamiltonian.
    const ResolvedSplit a1 =
        resolve_split(c, sp.budget, {EngineSplitKind::kAlphaOne, 0.0});
    const HeatReport heat = heat_report(c, a1.w1, a1.w2);
    CHECK(near(heat.de1, mean_energy(sigma, h2) - mean_energy(rho, h1), 1e-12));
    CHECK(near(heat.de2, mean_energy(rho, h1) - mean_energy(sigma, h2), 1e-12));
    CHECK(near(heat.q1, heat.de1 + a1.w1, 1e-12));
    CHECK(heat.weighted <= 1e-9);

    // Refrigeration on the mirrored split costs at least the forward output.
    const Refrigeration ref =
        refrigeration_cost(c, sp.budget_sup, {EngineSplitKind::kUser, 1.0},
                           resolve_split(c, sp.budget, {EngineSplitKind::kUser, 1.0}));
    CHECK(ref.budget <= 0.0);
    CHECK(ref.cost >= 1.0 + (sp.budget - b1) / b2 - 1e-12);
  }
  CHECK(found == 150);
  CHECK(compared > 0);
  CHECK(positive > 0);
}

TEST_CASE("budget zero is the reversible Carnot point") {
  const EngineSpec spec = testing::qubit_pair();
  const std::vector<double> tau{0.7, 0.3};
  const EngineCycle c = one_step_cycle(BlockSpectrum(kron(tau, tau), spec), spec);
  const ResolvedSplit split = resolve_split(c, 0.0, {EngineSplitKind::kUser, 1.0});
  const Statements st = statements_report(c, 0.0, split);
  REQUIRE(st.eta1.has_value());
  CHECK(*st.eta1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(st.carnot_floor1 == 0.5);
  CHECK(st.carnot_floor2 == 1.0);
  const Refrigeration ref = refrigeration_cost(c, 0.0, {EngineSplitKind::kUser, 1.0}, split);
  CHECK(near(ref.cost, split.w1 + split.w2, 1e-15));
}

TEST_CASE("correlation engine") {
  const EngineSpec trivial(EnergyLevels({0.0, 0.0}), EnergyLevels({0.0, 0.0}),
                           BathPair(0.5, 1.0));
  SUBCASE("perfect classical correlation is worth ln 2 at alpha = 1") {
    const CorrelationEngine c =
        correlation_engine(BlockSpectrum({0.5, 0.0, 0.0, 0.5}, trivial), trivial);
    CHECK(near(c.mutual_information, std::log(2.0), 1e-15));
    CHECK(c.feasibility.feasible);
    CHECK(c.budget <= c.mutual_information + 1e-12);
  }
  SUBCASE("products carry no budget") {
    const CorrelationEngine c = correlation_engine(
        BlockSpectrum(kron({0.6, 0.4}, {0.3, 0.7}), trivial), trivial);
    CHECK(near(c.budget, 0.0, 1e-12));
    CHECK(near(c.mutual_information, 0.0, 1e-12));
  }
  SUBCASE("a partially correlated state has budget below the mutual information") {
    const CorrelationEngine c =
        correlation_engine(BlockSpectrum({0.4, 0.1, 0.1, 0.4}, trivial), trivial);
    const double mi = 2.0 * std::log(2.0) - shannon({0.4, 0.1, 0.1, 0.4});
    CHECK(near(c.mutual_information, mi, 1e-14));
    CHECK(c.budget < mi);
  }
  SUBCASE("different Hamiltonians are rejected") {
    const EngineSpec spec(EnergyLevels({0.0, 1.0}), EnergyLevels({0.0, 2.0}),
                          BathPair(0.5, 1.0));
    CHECK_THROWS_AS(correlation_engine(BlockSpectrum({0.5, 0.0, 0.0, 0.5}, spec), spec),
                    InputError);
  }
}

TEST_CASE("analyze_engine on the fixtures") {
  const Instance sym = load_instance(testing::fixture("engine_symmetric.json"));
  EngineOptions opts;
  opts.split = {EngineSplitKind::kUser, 1.0};
  const EngineReport r = analyze_engine(sym.state.block(sym.spec), sym.spec, opts);
  CHECK(r.product);
  CHECK(r.spontaneity.spontaneous);
  CHECK(r.spontaneity.budget == 0.0);
  REQUIRE(r.statements.eta1.has_value());
  CHECK(near(*r.statements.eta1, 0.5, 1e-15));
  CHECK_FALSE(r.alpha_works.empty());

  const Instance cor = load_instance(testing::fixture("engine_correlated.json"));
  const EngineReport rc = analyze_engine(cor.state.block(cor.spec), cor.spec);
  CHECK_FALSE(rc.product);
  REQUIRE(rc.correlation.has_value());
  CHECK(near(rc.correlation->mutual_information, std::log(2.0), 1e-12));
}
