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

// Randomised cross-oracle verification. Every suite draws trial k from a
// generator seeded by (seed, k) alone, so a report is a pure function of its
// configuration.

#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "thermoforge/majorization.hpp"
#include "thermoforge/spectra.hpp"
#include "thermoforge/transforms.hpp"

namespace thermoforge {

struct TrialConfig {
  std::uint64_t seed = 42;
  int trials = 0;  // 0 selects each suite's default count
  std::size_t d1_max = 3;
  std::size_t d2_max = 2;
  double beta_min = 0.1;
  double beta_max = 3.0;
  double energy_max = 3.0;
  double tol = tol::kFeasibilitySlack;
  int log_points = 120;
  // Mutation hook: build thermo-majorization curves with exp(+w) weights.
  // Only used to show that the harness notices a sign error.
  bool mutate_curve = false;
};

// mt19937_64 seeded through splitmix64 with platform-independent transforms
// (the standard distributions are implementation-defined).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);  // uniform in [0, n)
  double exponential();
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Flat Dirichlet sample: normalised i.i.d. exponentials.
std::vector<double> random_simplex(Rng& rng, std::size_t n);
EnergyLevels random_levels(Rng& rng, std::size_t d, double energy_max);
// beta1 < beta2 when `engine_oriented`.
BathPair random_baths(Rng& rng, const TrialConfig& cfg, bool engine_oriented);
EngineSpec random_spec(Rng& rng, const TrialConfig& cfg, bool engine_oriented);
BlockSpectrum random_state(Rng& rng, const EngineSpec& spec);
BlockSpectrum random_product_state(Rng& rng, const EngineSpec& spec);
// Random density matrix G G^dag / tr with uniform complex entries.
DenseState random_dense_state(Rng& rng, std::size_t n);
// Applies a random chain of two-level partial thermalisations, each of which
// preserves `q`.
std::vector<double> gibbs_preserving_image(Rng& rng, std::span<const double> p,
                                           std::span<const double> q);

struct Counterexample {
  int trial;
  std::string reason;
  std::string instance_json;  // instance-file document
};

struct SuiteResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  int undecided = 0;
  int skipped = 0;  // trials where the property does not apply
  // Most adverse slack of the checked inequality (>= 0 means it held);
  // NaN when the suite has no scalar margin.
  double worst_margin = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, double>> stats;
  std::vector<Counterexample> counterexamples;  // at most kMaxDumps
  bool pass = false;

  static constexpr std::size_t kMaxDumps = 5;
  void record_margin(double m);
  void fail(int trial, std::string reason, std::string instance_json);
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool pass() const;
  std::string to_json() const;
};

// Names in execution order.
const std::vector<std::string>& suite_names();

// Throws InputError for an unknown suite.
SuiteResult run_suite(const std::string& name, const TrialConfig& cfg);
BenchReport run_bench(const TrialConfig& cfg,
                      const std::vector<std::string>& suites);

}  // namespace thermoforge
