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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "thermoforge/divergences.hpp"
#include "thermoforge/report.hpp"
#include "thermoforge/veribench.hpp"

using namespace thermoforge;

namespace {

int failures = 0;

void line(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  failures += !ok;
}

std::string num(double x) { return format_number(x); }

double stat(const SuiteResult& r, const std::string& key) {
  for (const auto& [k, v] : r.stats)
    if (k == key) return v;
  return std::nan("");
}

SuiteResult suite(const std::string& name, int trials, std::uint64_t seed = 42) {
  TrialConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  return run_suite(name, cfg);
}

std::string counts(const SuiteResult& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.trials) + " passed, " +
         std::to_string(r.failed) + " failed";
}

bool clean(const SuiteResult& r, int trials) {
  return r.pass && r.failed == 0 && r.trials == trials && r.passed == trials;
}

// p^{(x)N} for a binary p, by enumeration.
std::vector<double> power(const std::vector<double>& p, int n) {
  std::vector<double> out{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next;
    next.reserve(out.size() * 2);
    for (double x : out)
      for (double y : p) next.push_back(x * y);
    out = std::move(next);
  }
  return out;
}

std::string bench_output() {
  std::ostringstream out, err;
  const int code = thermoforge::cli::run_cli({"bench", "--seed", "42"}, out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  {
    const SuiteResult r = suite("thermo_vs_lp", 1000);
    const bool ok = clean(r, 1000) && r.undecided == 0;
    line(1, "thermo-majorization vs LP d-majorization", ok,
         counts(r) + ", " + std::to_string(r.undecided) + " undecided");
  }
  {
    const SuiteResult r = suite("fine_grain", 500, 7);
    line(2, "fine-graining equivalence", clean(r, 500) && stat(r, "max_denominator") <= 64,
         counts(r) + ", max denominator " + num(stat(r, "max_denominator")));
  }
  {
    const SuiteResult r = suite("second_law_scan", 1000);
    line(3, "second-law scan consistency", clean(r, 1000),
         counts(r) + ", " + num(stat(r, "catalytic_only")) + " catalytic-only");
  }
  {
    // margin = 1e-4 - |S_{1 +- 1e-6} - (b1 E1 + b2 E2 - S)|
    const SuiteResult r = suite("helmholtz_limit", 200);
    line(4, "Helmholtz limit within 1e-4", clean(r, 200) && r.worst_margin >= 0.0,
         counts(r) + ", worst slack " + num(r.worst_margin));
  }
  {
    const SuiteResult r = suite("additivity", 200);
    line(5, "additivity within 1e-10", clean(r, 200) && r.worst_margin >= 0.0,
         counts(r) + ", worst slack " + num(r.worst_margin));
  }
  {
    const SuiteResult r = suite("data_processing", 500);
    line(6, "data processing under LP witnesses", clean(r, 500) && r.worst_margin >= -1e-9,
         counts(r) + ", worst margin " + num(r.worst_margin));
  }
  {
    const SuiteResult r = suite("irreversibility", 1000);
    line(7, "irreversibility and W_ext <= W_cost", clean(r, 1000) && r.worst_margin >= -1e-9,
         counts(r) + ", " + num(stat(r, "equality_cases")) + " equality cases");
  }
  {
    const SuiteResult r = suite("carnot", 500);
    const bool ok = clean(r, 500) && stat(r, "max_identity_error") <= 1e-12 &&
                    r.worst_margin >= -1e-9;
    line(8, "Carnot identity and local-TO comparison", ok,
         counts(r) + ", identity error " + num(stat(r, "max_identity_error")) +
             ", eta1/eta2 compared " + num(stat(r, "eta1_compared")) + "/" +
             num(stat(r, "eta2_compared")));
  }
  {
    const SuiteResult r = suite("clausius_heat", 500);
    line(9, "Clausius heat form", clean(r, 500) && r.worst_margin >= -1e-9,
         counts(r) + ", min -(b1 Q1 + b2 Q2) " + num(r.worst_margin));
  }
  {
    const SuiteResult r = suite("reduction", 300);
    line(10, "equal-temperature reduction", clean(r, 300), counts(r));
  }
  {
    const SuiteResult r = suite("asymmetry", 100);
    const bool ok = clean(r, 100) && stat(r, "max_zero_error") <= 1e-10 &&
                    stat(r, "max_invariance_error") <= 1e-9 &&
                    stat(r, "rejected_dephased_to_coherent") == r.trials - r.skipped;
    line(11, "asymmetry monotones", ok,
         counts(r) + ", zero error " + num(stat(r, "max_zero_error")) +
             ", invariance error " + num(stat(r, "max_invariance_error")));
  }
  {
    const SuiteResult r = suite("asymptotics", 0);
    // Independent recomputation by 2^N enumeration.
    const std::vector<double> p{0.7, 0.3}, q{0.5, 0.5};
    const double eps = 0.05;
    const double d1 = 0.7 * std::log(1.4) + 0.3 * std::log(0.6);
    auto per_copy = [&](int n, bool max) {
      const auto pn = power(p, n), qn = power(q, n);
      return (max ? smoothed_dmax(pn, qn, eps) : smoothed_dmin(pn, qn, eps)) / n;
    };
    const double window = 3.0 / std::sqrt(14.0);
    bool ok = r.pass && std::abs(d1 - 0.082283) < 5e-7;
    std::string detail;
    for (bool max : {false, true}) {
      const double v2 = per_copy(2, max), v14 = per_copy(14, max);
      ok = ok && std::abs(v14 - d1) <= window &&
           std::abs(v14 - d1) < std::abs(v2 - d1);
      detail += std::string(max ? ", dmax" : "dmin") + " N=2 " + num(v2) +
                " N=14 " + num(v14);
    }
    double additivity = 0.0;
    for (int n = 1; n <= 14; ++n) {
      const auto pn = power(p, n), qn = power(q, n);
      const double d0 = renyi_relative_entropy(pn, qn, Alpha::zero()) / n;
      const double dinf = renyi_relative_entropy(pn, qn, Alpha::infinity()) / n;
      additivity = std::max({additivity,
                             std::abs(d0 - renyi_relative_entropy(p, q, Alpha::zero())),
                             std::abs(dinf - renyi_relative_entropy(p, q, Alpha::infinity()))});
    }
    ok = ok && additivity <= 1e-12;
    line(12, "asymptotic smoothing demo", ok,
         "D1 " + num(d1) + "; " + detail + "; unsmoothed drift " + num(additivity));
  }
  {
    const std::string a = bench_output();
    const std::string b = bench_output();
    const bool ok = a == b && a.rfind("0\n", 0) == 0;
    line(13, "bench determinism", ok,
         std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different"));
  }
  return failures == 0 ? 0 : 1;
}
