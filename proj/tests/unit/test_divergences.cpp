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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"
#include "thermoforge/veribench.hpp"

using namespace thermoforge;
using testing::near;

namespace {

const double kLn2 = std::numbers::ln2;

// Textbook formula without log-domain arithmetic; full-support inputs only.
double plain_renyi(std::span<const double> p, std::span<const double> q,
                   double a) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
  }
  return (a > 0.0 ? 1.0 : -1.0) * std::log(s) / (a - 1.0);
}

double plain_kl(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

ComplexMatrix plus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

}  // namespace

TEST_CASE("Renyi entropy examples") {
  const std::vector<double> half = {0.5, 0.5};
  CHECK(near(renyi_entropy(half, Alpha::one()), kLn2, 1e-15));
  CHECK(renyi_entropy(std::vector<double>{1.0, 0.0}, Alpha::zero()) == 0.0);
  const std::vector<double> p = {0.7, 0.3};
  CHECK(near(renyi_entropy(p, Alpha::of(2.0)), -std::log(0.58), 1e-15));
  CHECK(near(renyi_entropy(p, Alpha::of(2.0)), 0.544727, 5e-7));
  CHECK(near(renyi_entropy(p, Alpha::infinity()), -std::log(0.7), 1e-15));
  // sgn(a) / (1 - a) log sum p^a at a = -1.
  CHECK(near(renyi_entropy(p, Alpha::of(-1.0)),
             -std::log(1.0 / 0.7 + 1.0 / 0.3) / 2.0, 1e-14));
  CHECK(renyi_entropy(std::vector<double>{1.0, 0.0}, Alpha::of(-0.5)) == -kInf);
}

TEST_CASE("Renyi divergence examples") {
  const std::vector<double> pure = {1.0, 0.0};
  const std::vector<double> half = {0.5, 0.5};
  for (const Alpha& a : {Alpha::zero(), Alpha::one(), Alpha::infinity(),
                         Alpha::of(0.3), Alpha::of(0.9999), Alpha::of(4.0)}) {
    CAPTURE(a.to_string());
    CHECK(near(renyi_relative_entropy(pure, half, a), kLn2, 1e-14));
    CHECK(near(renyi_relative_entropy(half, half, a), 0.0, 1e-15));
  }
  CHECK(near(renyi_relative_entropy(half, std::vector<double>{0.25, 0.75},
                                    Alpha::infinity()),
             kLn2, 1e-15));
}

TEST_CASE("Renyi divergence support conventions") {
  const std::vector<double> p = {0.5, 0.5, 0.0};
  const std::vector<double> q = {0.5, 0.0, 0.5};
  CHECK(renyi_relative_entropy(p, q, Alpha::one()) == kInf);
  CHECK(renyi_relative_entropy(p, q, Alpha::of(1.1)) == kInf);
  CHECK(renyi_relative_entropy(p, q, Alpha::of(2.0)) == kInf);
  CHECK(renyi_relative_entropy(p, q, Alpha::infinity()) == kInf);
  // Below 1 the unsupported entry contributes nothing (0^(1-a) = 0).
  CHECK(near(renyi_relative_entropy(p, q, Alpha::zero()), kLn2, 1e-15));
  CHECK(near(renyi_relative_entropy(p, q, Alpha::of(0.5)), 2.0 * kLn2, 1e-14));
  CHECK(near(renyi_relative_entropy(p, q, Alpha::of(0.9)), 10.0 * kLn2, 1e-12));
  // Negative orders need supp q inside supp p.
  CHECK(renyi_relative_entropy(p, q, Alpha::of(-1.0)) == kInf);
  CHECK(renyi_relative_entropy(p, q, Alpha::neg_infinity()) == kInf);
  CHECK_THROWS_AS(renyi_relative_entropy(p, std::vector<double>{1.0}, Alpha::one()),
                  InputError);
}

TEST_CASE("divergence agrees with the textbook formula on random inputs") {
  for (int k = 0; k < 200; ++k) {
    Rng rng(11, static_cast<std::uint64_t>(k));
    const std::size_t n = 2 + rng.index(6);
    const std::vector<double> p = random_simplex(rng, n);
    const std::vector<double> q = random_simplex(rng, n);
    for (double a : {-2.0, -0.5, 0.1, 0.5, 0.8, 0.99, 1.000001, 1.2, 2.0, 7.0}) {
      const double ours = renyi_relative_entropy(p, q, Alpha::of(a));
      CHECK(near(ours, plain_renyi(p, q, a), 1e-9 * (1.0 + std::abs(ours))));
    }
    CHECK(near(renyi_relative_entropy(p, q, Alpha::one()), plain_kl(p, q), 1e-13));
    // The a -> 1 limit is continuous across the expm1 window edge.
    CHECK(near(renyi_relative_entropy(p, q, Alpha::of(1.0 + 1e-9)),
               plain_kl(p, q), 1e-8));
  }
}

TEST_CASE("D_alpha is nondecreasing in alpha >= 0") {
  const std::vector<Alpha> grid = standard_alpha_grid(60);
  for (int k = 0; k < 100; ++k) {
    Rng rng(12, static_cast<std::uint64_t>(k));
    const std::vector<double> p = random_simplex(rng, 5);
    const std::vector<double> q = random_simplex(rng, 5);
    double prev = -kInf;
    for (const Alpha& a : grid) {
      const double d = renyi_relative_entropy(p, q, a);
      CHECK(d >= prev - 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("alpha free entropy") {
  const EngineSpec spec = testing::qubit_pair();
  const double log_z = std::log(testing::qubit_pair_z());
  const SemiGibbs g = semi_gibbs(spec);
  const BlockSpectrum gibbs(g.q, spec);
  const BlockSpectrum ground({1.0, 0.0, 0.0, 0.0}, spec);
  for (const Alpha& a : standard_alpha_grid(20)) {
    CAPTURE(a.to_string());
    CHECK(near(alpha_free_entropy(gibbs, spec, a), -log_z, 1e-14));
    CHECK(near(alpha_free_entropy(ground, spec, a), 0.0, 1e-14));
  }
  SUBCASE("alpha = 1 is the Helmholtz free entropy") {
    for (int k = 0; k < 50; ++k) {
      Rng rng(13, static_cast<std::uint64_t>(k));
      TrialConfig cfg;
      const EngineSpec s = random_spec(rng, cfg, false);
      const BlockSpectrum st = random_state(rng, s);
      // beta1 <E1> + beta2 <E2> - S, written out.
      double expected = 0.0;
      for (std::size_t i = 0; i < s.d1(); ++i) {
        for (std::size_t j = 0; j < s.d2(); ++j) {
          const double pij = st[s.index(i, j)];
          expected += pij * (s.baths().beta1 * s.h1()[i] +
                             s.baths().beta2 * s.h2()[j] + std::log(pij));
        }
      }
      CHECK(near(helmholtz_free_entropy(st, s), expected, 1e-12));
      CHECK(near(alpha_free_entropy(st, s, Alpha::one()), expected, 1e-10));
    }
  }
  SUBCASE("uniform state on trivial Hamiltonians") {
    const EngineSpec flat(EnergyLevels({0.0, 0.0}), EnergyLevels({0.0, 0.0}),
                          BathPair(1.0, 2.0));
    const BlockSpectrum u({0.25, 0.25, 0.25, 0.25}, flat);
    CHECK(near(helmholtz_free_entropy(u, flat), -std::log(4.0), 1e-15));
  }
  SUBCASE("product states split into local Helmholtz terms") {
    const std::vector<double> r = {0.8, 0.2};
    const std::vector<double> s = {0.35, 0.65};
    const BlockSpectrum prod(kron(r, s), spec);
    const double local = local_free_entropy(r, spec.h1(), 0.5, Alpha::one()) +
                         local_free_entropy(s, spec.h2(), 1.0, Alpha::one());
    CHECK(near(helmholtz_free_entropy(prod, spec), local, 1e-14));
  }
}

TEST_CASE("quantum Renyi divergence") {
  const DenseState plus(plus_state());
  const DenseState mixed = DenseState::diagonal(std::vector<double>{0.5, 0.5});
  SUBCASE("rho = sigma gives zero") {
    ComplexMatrix m(2, 2);
    m << 0.6, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2), 0.4;
    const DenseState rho(m);
    for (const Alpha& a : {Alpha::zero(), Alpha::of(0.5), Alpha::one(),
                           Alpha::of(1.5), Alpha::of(3.0), Alpha::infinity()}) {
      CHECK(near(quantum_renyi_divergence(rho, rho, a), 0.0, 1e-12));
    }
  }
  SUBCASE("|+> against the maximally mixed state") {
    // Pure rho against I/2: D_a = log 2 for every a.
    for (const Alpha& a : {Alpha::of(0.5), Alpha::one(), Alpha::of(2.0),
                           Alpha::infinity()}) {
      CAPTURE(a.to_string());
      CHECK(near(quantum_renyi_divergence(plus, mixed, a), kLn2, 1e-12));
    }
  }
  SUBCASE("commuting inputs reduce to the classical formula") {
    for (int k = 0; k < 30; ++k) {
      Rng rng(14, static_cast<std::uint64_t>(k));
      const std::vector<double> p = random_simplex(rng, 4);
      const std::vector<double> q = random_simplex(rng, 4);
      // Rotate both by the same unitary so the test is not trivially diagonal.
      const DenseState u = random_dense_state(rng, 4);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(u.matrix());
      const ComplexMatrix v = es.eigenvectors();
      auto conj = [&](const std::vector<double>& d) {
        Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(d.data(), 4);
        ComplexMatrix m = v * dv.cast<std::complex<double>>().asDiagonal() * v.adjoint();
        m = 0.5 * (m + m.adjoint()).eval();
        return DenseState(m);
      };
      for (double a : {0.3, 0.7, 1.0, 1.5, 2.0}) {
        const Alpha al = a == 1.0 ? Alpha::one() : Alpha::of(a);
        CHECK(near(quantum_renyi_divergence(conj(p), conj(q), al),
                   renyi_relative_entropy(p, q, al), 1e-9));
      }
    }
  }
  SUBCASE("support mismatch") {
    const DenseState zero = DenseState::diagonal(std::vector<double>{1.0, 0.0});
    const DenseState one = DenseState::diagonal(std::vector<double>{0.0, 1.0});
    CHECK(quantum_renyi_divergence(zero, one, Alpha::one()) == kInf);
    CHECK(quantum_renyi_divergence(zero, one, Alpha::of(2.0)) == kInf);
    CHECK(quantum_renyi_divergence(zero, one, Alpha::of(0.5)) == kInf);
  }
}

TEST_CASE("smoothed min and max divergences") {
  const std::vector<double> p = {0.7, 0.2, 0.1};
  const std::vector<double> q = {0.2, 0.3, 0.5};
  SUBCASE("tiny smoothing recovers D_0 and D_inf") {
    const std::vector<double> ps = {0.7, 0.3, 0.0};
    CHECK(near(smoothed_dmin(ps, q, 1e-12), renyi_relative_entropy(ps, q, Alpha::zero()),
               1e-9));
    CHECK(near(smoothed_dmax(p, q, 1e-12),
               renyi_relative_entropy(p, q, Alpha::infinity()), 1e-9));
  }
  SUBCASE("hand-computed values") {
    // Ratios p/q: 3.5, 0.667, 0.2. Keeping 1 - eps = 0.8 of p needs the first
    // two entries, so D_min = -log(0.2 + 0.3).
    CHECK(near(smoothed_dmin(p, q, 0.2), -std::log(0.5), 1e-15));
    // Water-filling with eps = 0.1: cut the top entry to lambda q,
    // 0.7 - 0.2 lambda = 0.1 gives lambda = 3.
    CHECK(near(smoothed_dmax(p, q, 0.1), std::log(3.0), 1e-14));
  }
  SUBCASE("p = q stays inside the smoothing window") {
    const double eps = 0.05;
    const double lo = smoothed_dmin(q, q, eps);
    const double hi = smoothed_dmax(q, q, eps);
    CHECK(lo >= 0.0);
    CHECK(lo <= -std::log1p(-eps) + 1e-15);
    CHECK(hi <= 0.0);
    CHECK(near(hi, std::log1p(-eps), 1e-15));
  }
  SUBCASE("bad smoothing parameter") {
    CHECK_THROWS_AS(smoothed_dmin(p, q, 0.0), InputError);
    CHECK_THROWS_AS(smoothed_dmax(p, q, 1.0), InputError);
  }
}
