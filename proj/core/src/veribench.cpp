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

#include "thermoforge/veribench.hpp"

#include <cmath>
#include <numbers>

#include "json_format.hpp"
#include "thermoforge/error.hpp"
#include "veribench_suites.hpp"

namespace thermoforge {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= trial * 0xD1B54A32D192ED03ULL;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t trial)
    : engine_(seeded_engine(seed, trial)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(engine_() % n);
}

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::normal() {
  // Box-Muller; the second variate is discarded to keep the state simple.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (double& x : p) x = rng.exponential();
  const double total = sum(p);
  for (double& x : p) x /= total;
  return p;
}

EnergyLevels random_levels(Rng& rng, std::size_t d, double energy_max) {
  std::vector<double> e(d);
  for (double& x : e) x = rng.uniform(0.0, energy_max);
  return EnergyLevels(std::move(e));
}

BathPair random_baths(Rng& rng, const TrialConfig& cfg, bool engine_oriented) {
  double b1 = rng.uniform(cfg.beta_min, cfg.beta_max);
  double b2 = rng.uniform(cfg.beta_min, cfg.beta_max);
  if (engine_oriented) {
    if (b1 > b2) std::swap(b1, b2);
    if (b1 == b2) b2 = b1 + 0.1;
  }
  return BathPair(b1, b2);
}

EngineSpec random_spec(Rng& rng, const TrialConfig& cfg, bool engine_oriented) {
  const std::size_t d1 = 1 + rng.index(cfg.d1_max);
  std::size_t d2 = 1 + rng.index(cfg.d2_max);
  if (d1 * d2 == 1) d2 = 2;
  EnergyLevels h1 = random_levels(rng, d1, cfg.energy_max);
  EnergyLevels h2 = random_levels(rng, d2, cfg.energy_max);
  return EngineSpec(std::move(h1), std::move(h2),
                    random_baths(rng, cfg, engine_oriented));
}

BlockSpectrum random_state(Rng& rng, const EngineSpec& spec) {
  return BlockSpectrum(random_simplex(rng, spec.joint_dim()), spec);
}

BlockSpectrum random_product_state(Rng& rng, const EngineSpec& spec) {
  const std::vector<double> a = random_simplex(rng, spec.d1());
  const std::vector<double> b = random_simplex(rng, spec.d2());
  std::vector<double> p = kron(a, b);
  const double total = sum(p);
  for (double& x : p) x /= total;
  return BlockSpectrum(std::move(p), spec);
}

DenseState random_dense_state(Rng& rng, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix g(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      g(r, c) = {re, im};
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DenseState(std::move(rho));
}

std::vector<double> gibbs_preserving_image(Rng& rng, std::span<const double> p,
                                           std::span<const double> q) {
  std::vector<double> out(p.begin(), p.end());
  const std::size_t n = out.size();
  if (n < 2) return out;
  const std::size_t steps = 1 + rng.index(2 * n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    const double lambda = rng.uniform();
    const double mass = out[i] + out[j];
    const double qi = q[i] / (q[i] + q[j]);
    out[i] = (1.0 - lambda) * out[i] + lambda * mass * qi;
    out[j] = mass - out[i];
  }
  const double total = sum(out);
  for (double& x : out) x = std::max(x, 0.0) / total;
  return out;
}

void SuiteResult::record_margin(double m) {
  if (std::isnan(worst_margin) || m < worst_margin) worst_margin = m;
}

void SuiteResult::fail(int trial, std::string reason,
                       std::string instance_json) {
  ++failed;
  if (counterexamples.size() < kMaxDumps) {
    counterexamples.push_back({trial, std::move(reason), std::move(instance_json)});
  }
}

bool BenchReport::pass() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.pass; });
}

std::string BenchReport::to_json() const {
  using nlohmann::json;
  using detail::number_json;
  json doc;
  doc["seed"] = seed;
  doc["pass"] = pass();
  json arr = json::array();
  for (const SuiteResult& s : suites) {
    json js{{"name", s.name},
            {"pass", s.pass},
            {"trials", s.trials},
            {"passed", s.passed},
            {"failed", s.failed},
            {"undecided", s.undecided},
            {"skipped", s.skipped},
            {"worst_margin", number_json(s.worst_margin)}};
    json stats = json::object();
    for (const auto& [k, v] : s.stats) stats[k] = number_json(v);
    js["stats"] = std::move(stats);
    json dumps = json::array();
    for (const Counterexample& c : s.counterexamples) {
      dumps.push_back({{"trial", c.trial},
                       {"reason", c.reason},
                       {"instance", json::parse(c.instance_json)}});
    }
    js["counterexamples"] = std::move(dumps);
    arr.push_back(std::move(js));
  }
  doc["suites"] = std::move(arr);
  return doc.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : detail::suite_table()) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const TrialConfig& cfg) {
  for (const auto& s : detail::suite_table()) {
    if (s.name != name) continue;
    TrialConfig c = cfg;
    if (c.trials <= 0) c.trials = s.default_trials;
    SuiteResult r = s.run(c);
    r.name = name;
    return r;
  }
  throw InputError("/suite", "unknown suite '" + name + "'");
}

BenchReport run_bench(const TrialConfig& cfg,
                      const std::vector<std::string>& suites) {
  BenchReport report;
  report.seed = cfg.seed;
  const std::vector<std::string>& names = suites.empty() ? suite_names() : suites;
  for (const std::string& n : names) report.suites.push_back(run_suite(n, cfg));
  return report;
}

}  // namespace thermoforge
