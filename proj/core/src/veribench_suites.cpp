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

// The verification suites. Each one checks a single property against an
// oracle that does not share the code path under test.

#include "veribench_suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "thermoforge/asymmetry.hpp"
#include "thermoforge/divergences.hpp"
#include "thermoforge/engine.hpp"
#include "thermoforge/instance.hpp"
#include "thermoforge/report.hpp"

namespace thermoforge::detail {

namespace {

using nlohmann::json;

std::string meta(const char* suite, const TrialConfig& cfg, int trial) {
  return json{{"suite", suite}, {"seed", cfg.seed}, {"trial", trial}}.dump();
}

std::string dump_pair(const char* suite, const TrialConfig& cfg, int trial,
                      const EngineSpec& spec, std::span<const double> p,
                      const EngineSpec& final_spec,
                      std::span<const double> p2) {
  Instance inst{spec, StateInput::diagonal({p.begin(), p.end()}), final_spec,
                StateInput::diagonal({p2.begin(), p2.end()}),
                meta(suite, cfg, trial)};
  return dump_instance(inst);
}

std::string dump_state(const char* suite, const TrialConfig& cfg, int trial,
                       const EngineSpec& spec, const StateInput& s) {
  Instance inst{spec, s, std::nullopt, std::nullopt, meta(suite, cfg, trial)};
  return dump_instance(inst);
}

void finish(SuiteResult& r) { r.pass = r.failed == 0; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Second state of a pair: a Gibbs-preserving image of p (feasible by
// construction) or an unrelated random state.
std::vector<double> partner(Rng& rng, std::span<const double> p,
                            std::span<const double> q) {
  if (rng.uniform() < 0.5) return gibbs_preserving_image(rng, p, q);
  return random_simplex(rng, p.size());
}

// ---------------------------------------------------------------------------

SuiteResult thermo_vs_lp(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  int feasible = 0;
  const CurveConvention conv = cfg.mutate_curve ? CurveConvention::kInvertedSign
                                                : CurveConvention::kBoltzmann;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const EngineSpec spec = random_spec(rng, cfg, false);
    const BlockSpectrum a = random_state(rng, spec);
    const std::vector<double> q = semi_gibbs(spec).q;
    const BlockSpectrum b(partner(rng, a.p(), q), spec);
    const bool thermo = thermo_majorizes(a, b, spec, conv);
    const LpResult lp = d_majorize_lp(a.p(), q, b.p(), q);
    if (lp.status == LpStatus::kUndecided) {
      ++r.undecided;
      continue;
    }
    const bool lp_ok = lp.status == LpStatus::kFeasible;
    feasible += lp_ok;
    if (thermo == lp_ok) {
      ++r.passed;
    } else {
      r.fail(k,
             std::string("thermo-majorization ") + yes_no(thermo) +
                 ", LP feasibility " + yes_no(lp_ok),
             dump_pair("thermo_vs_lp", cfg, k, spec, a.p(), spec, b.p()));
    }
  }
  r.stats = {{"lp_feasible", feasible}};
  r.pass = r.failed == 0 && r.undecided <= cfg.trials / 1000;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult fine_grain_suite(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  int majorized = 0;
  int max_n = 0;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const std::size_t d1 = 1 + rng.index(cfg.d1_max);
    const std::size_t d2 = std::max<std::size_t>(1 + rng.index(cfg.d2_max),
                                                 d1 == 1 ? 2 : 1);
    std::vector<int> a(d1);
    std::vector<int> b(d2);
    int n = 0;
    do {
      for (int& x : a) x = 1 + static_cast<int>(rng.index(4));
      for (int& x : b) x = 1 + static_cast<int>(rng.index(4));
      int sa = 0;
      int sb = 0;
      for (int x : a) sa += x;
      for (int x : b) sb += x;
      n = sa * sb;
    } while (n > 64);
    max_n = std::max(max_n, n);
    const BathPair baths = random_baths(rng, cfg, false);
    // exp(-beta E_i) proportional to the integer a_i.
    const int amax = *std::max_element(a.begin(), a.end());
    const int bmax = *std::max_element(b.begin(), b.end());
    std::vector<double> e1(d1);
    std::vector<double> e2(d2);
    for (std::size_t i = 0; i < d1; ++i) {
      e1[i] = std::log(static_cast<double>(amax) / a[i]) / baths.beta1;
    }
    for (std::size_t j = 0; j < d2; ++j) {
      e2[j] = std::log(static_cast<double>(bmax) / b[j]) / baths.beta2;
    }
    const EngineSpec spec(EnergyLevels(e1), EnergyLevels(e2), baths);
    std::vector<int> d(spec.joint_dim());
    for (std::size_t i = 0; i < d1; ++i) {
      for (std::size_t j = 0; j < d2; ++j) d[spec.index(i, j)] = a[i] * b[j];
    }
    const BlockSpectrum p = random_state(rng, spec);
    const BlockSpectrum p2(partner(rng, p.p(), semi_gibbs(spec).q), spec);
    const bool thermo = thermo_majorizes(p, p2, spec);
    const bool plain =
        majorizes(fine_grain(p.p(), d).gamma, fine_grain(p2.p(), d).gamma);
    majorized += plain;
    if (thermo == plain) {
      ++r.passed;
    } else {
      r.fail(k,
             std::string("thermo-majorization ") + yes_no(thermo) +
                 ", fine-grained majorization " + yes_no(plain),
             dump_pair("fine_grain", cfg, k, spec, p.p(), spec, p2.p()));
    }
  }
  r.stats = {{"majorized", majorized}, {"max_denominator", max_n}};
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

Transformation random_transformation(Rng& rng, const TrialConfig& cfg,
                                     int& mode) {
  const EngineSpec spec = random_spec(rng, cfg, false);
  const BlockSpectrum p = random_state(rng, spec);
  mode = static_cast<int>(rng.index(3));
  if (mode == 0) {
    return Transformation(
        p, BlockSpectrum(gibbs_preserving_image(rng, p.p(), semi_gibbs(spec).q),
                         spec),
        spec);
  }
  if (mode == 1) return Transformation(p, random_state(rng, spec), spec);
  TrialConfig fcfg = cfg;
  EngineSpec fspec = random_spec(rng, fcfg, false);
  fspec = EngineSpec(fspec.h1(), fspec.h2(), spec.baths());
  return Transformation(p, spec, random_state(rng, fspec), fspec);
}

std::string dump_transformation(const char* suite, const TrialConfig& cfg,
                                int k, const Transformation& t) {
  return dump_pair(suite, cfg, k, t.initial_spec(), t.initial().p(),
                   t.final_spec(), t.final().p());
}

SuiteResult second_law_scan(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  const TransformOptions opts{cfg.log_points, cfg.tol};
  const std::vector<Alpha> grid = standard_alpha_grid(cfg.log_points);
  int n_cslto = 0;
  int n_slto = 0;
  int n_signed = 0;
  int catalysis_only = 0;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    int mode = 0;
    const Transformation t = random_transformation(rng, cfg, mode);
    const Feasibility f = cslto_feasible(t, opts);
    // Oracle: the drop evaluated directly on each side's own spec.
    const SemiGibbs gi = semi_gibbs(t.initial_spec());
    const SemiGibbs gf = semi_gibbs(t.final_spec());
    auto direct = [&](Alpha a) {
      return alpha_free_entropy(t.initial().p(), gi, a) -
             alpha_free_entropy(t.final().p(), gf, a);
    };
    double oracle_min = kInf;
    for (const Alpha& a : grid) oracle_min = std::min(oracle_min, direct(a));
    if (f.violating_alpha) {
      oracle_min = std::min(oracle_min, direct(*f.violating_alpha));
    }
    const bool oracle = oracle_min >= -cfg.tol;
    const bool slto = slto_feasible(t);
    const bool signed_ok = cslto_feasible_signed(t, opts).result.feasible;
    n_cslto += f.feasible;
    n_slto += slto;
    n_signed += signed_ok;
    catalysis_only += f.feasible && !slto;
    std::string reason;
    if (f.feasible != oracle) {
      reason = std::string("cSLTO scan ") + yes_no(f.feasible) +
               ", direct inf of the drop " + format_number(oracle_min);
    } else if (slto && !signed_ok) {
      reason = "SLTO feasible but the signed-alpha laws fail";
    } else if (signed_ok && !f.feasible) {
      reason = "signed-alpha laws hold but the alpha >= 0 laws fail";
    }
    if (reason.empty()) {
      ++r.passed;
    } else {
      r.fail(k, reason, dump_transformation("second_law_scan", cfg, k, t));
    }
  }
  r.stats = {{"cslto_feasible", n_cslto},
             {"slto_feasible", n_slto},
             {"signed_feasible", n_signed},
             {"catalytic_only", catalysis_only}};
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult helmholtz_limit(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  constexpr double kBound = 1e-4;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const EngineSpec spec = random_spec(rng, cfg, false);
    const BlockSpectrum s = random_state(rng, spec);
    const SemiGibbs g = semi_gibbs(spec);
    const double f = helmholtz_free_entropy(s, spec);
    const double err = std::max(
        {std::abs(alpha_free_entropy(s.p(), g, Alpha::of(1.0 + 1e-6)) - f),
         std::abs(alpha_free_entropy(s.p(), g, Alpha::of(1.0 - 1e-6)) - f),
         std::abs(alpha_free_entropy(s.p(), g, Alpha::one()) - f) * 1e6});
    r.record_margin(kBound - err);
    if (err <= kBound) {
      ++r.passed;
    } else {
      r.fail(k, "S_alpha near 1 deviates by " + format_number(err),
             dump_state("helmholtz_limit", cfg, k, spec,
                        StateInput::diagonal({s.p().begin(), s.p().end()})));
    }
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<double> kron_levels(const EnergyLevels& a, const EnergyLevels& b) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out.push_back(a[i] + b[j]);
  }
  return out;
}

SuiteResult additivity(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  constexpr double kBound = 1e-10;
  const std::vector<Alpha> grid = standard_alpha_grid(cfg.log_points);
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const EngineSpec sa = random_spec(rng, cfg, false);
    const EngineSpec sb_raw = random_spec(rng, cfg, false);
    const EngineSpec sb(sb_raw.h1(), sb_raw.h2(), sa.baths());
    const BlockSpectrum p = random_state(rng, sa);
    const BlockSpectrum q = random_state(rng, sb);
    // Subsystem x of the composite is A_x B_x.
    const EngineSpec sc(EnergyLevels(kron_levels(sa.h1(), sb.h1())),
                        EnergyLevels(kron_levels(sa.h2(), sb.h2())),
                        sa.baths());
    std::vector<double> pc(sc.joint_dim());
    for (std::size_t a1 = 0; a1 < sa.d1(); ++a1) {
      for (std::size_t a2 = 0; a2 < sa.d2(); ++a2) {
        for (std::size_t b1 = 0; b1 < sb.d1(); ++b1) {
          for (std::size_t b2 = 0; b2 < sb.d2(); ++b2) {
            pc[sc.index(a1 * sb.d1() + b1, a2 * sb.d2() + b2)] =
                p[sa.index(a1, a2)] * q[sb.index(b1, b2)];
          }
        }
      }
    }
    const double total = sum(pc);
    for (double& x : pc) x /= total;
    const BlockSpectrum c(std::move(pc), sc);
    const SemiGibbs ga = semi_gibbs(sa);
    const SemiGibbs gb = semi_gibbs(sb);
    const SemiGibbs gc = semi_gibbs(sc);
    double err = 0.0;
    for (const Alpha& a : grid) {
      err = std::max(err, std::abs(alpha_free_entropy(c.p(), gc, a) -
                                   alpha_free_entropy(p.p(), ga, a) -
                                   alpha_free_entropy(q.p(), gb, a)));
    }
    r.record_margin(kBound - err);
    if (err <= kBound) {
      ++r.passed;
    } else {
      r.fail(k, "additivity error " + format_number(err),
             dump_state("additivity", cfg, k, sc,
                        StateInput::diagonal({c.p().begin(), c.p().end()})));
    }
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd exact_stochastic(Eigen::MatrixXd m) {
  m = m.cwiseMax(0.0);
  for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) /= m.col(c).sum();
  return m;
}

std::vector<double> apply_channel(const Eigen::MatrixXd& m, std::span<const double> v) {
  const Eigen::VectorXd out =
      m * Eigen::Map<const Eigen::VectorXd>(v.data(),
                                            static_cast<Eigen::Index>(v.size()));
  return {out.data(), out.data() + out.size()};
}

SuiteResult data_processing(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  constexpr double kSlack = 1e-9;
  const std::vector<Alpha> grid = standard_alpha_grid(cfg.log_points);
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const EngineSpec spec = random_spec(rng, cfg, false);
    const BlockSpectrum p = random_state(rng, spec);
    const std::vector<double> q = semi_gibbs(spec).q;
    const std::vector<double> p2 = gibbs_preserving_image(rng, p.p(), q);
    const LpResult lp = d_majorize_lp(p.p(), q, p2, q);
    if (lp.status != LpStatus::kFeasible) {
      ++r.undecided;
      continue;
    }
    const Eigen::MatrixXd m = exact_stochastic(lp.witness->matrix);
    const std::vector<double> x2 = random_simplex(rng, q.size());
    const std::vector<double> y2 = random_simplex(rng, q.size());
    double worst = kInf;
    Alpha at = Alpha::zero();
    using Pair = std::pair<std::vector<double>, std::vector<double>>;
    const std::vector<Pair> pairs = {
        Pair(std::vector<double>(p.p().begin(), p.p().end()), q),
        Pair(x2, y2)};
    for (const auto& [x, y] : pairs) {
      const std::vector<double> mx = apply_channel(m, x);
      const std::vector<double> my = apply_channel(m, y);
      for (const Alpha& a : grid) {
        const double before = renyi_relative_entropy(x, y, a);
        const double after = renyi_relative_entropy(mx, my, a);
        if (before == kInf) continue;
        const double margin = before - after;
        if (margin < worst) {
          worst = margin;
          at = a;
        }
      }
    }
    r.record_margin(worst);
    if (worst >= -kSlack) {
      ++r.passed;
    } else {
      r.fail(k,
             "divergence grows by " + format_number(-worst) + " at alpha " +
                 at.to_string(),
             dump_pair("data_processing", cfg, k, spec, p.p(), spec, p2));
    }
  }
  r.pass = r.failed == 0 && r.undecided <= cfg.trials / 1000;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult irreversibility(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  constexpr double kSlack = 1e-9;
  const TransformOptions opts{cfg.log_points, cfg.tol};
  int equality_cases = 0;
  double max_gap = 0.0;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const int kind = static_cast<int>(rng.index(4));
    std::optional<Transformation> t;
    bool constant = false;
    if (kind < 2) {
      int mode = 0;
      t = random_transformation(rng, cfg, mode);
    } else {
      // Constant drop: eigenstate -> eigenstate, or semi-Gibbs -> semi-Gibbs,
      // possibly with a Hamiltonian change.
      const EngineSpec spec = random_spec(rng, cfg, false);
      const EngineSpec raw = random_spec(rng, cfg, false);
      const EngineSpec fspec(raw.h1(), raw.h2(), spec.baths());
      std::vector<double> pi(spec.joint_dim(), 0.0);
      std::vector<double> pf(fspec.joint_dim(), 0.0);
      if (kind == 2) {
        pi[rng.index(pi.size())] = 1.0;
        pf[rng.index(pf.size())] = 1.0;
      } else {
        pi = semi_gibbs(spec).q;
        pf = semi_gibbs(fspec).q;
      }
      t.emplace(BlockSpectrum(pi, spec), spec, BlockSpectrum(pf, fspec), fspec);
      constant = true;
    }
    const FreeEntropyDistance fwd = free_entropy_distance(*t, opts);
    const FreeEntropyDistance rev = free_entropy_distance(t->reversed(), opts);
    const double gap = -rev.inf.value - fwd.inf.value;
    const WorkQuantities w =
        work_quantities(fwd, t->baths(), SplitRule::bath1());
    const double work_gap = w.w_cost - w.extract.w_ext;
    r.record_margin(std::min(gap, work_gap));
    max_gap = std::max(max_gap, gap);
    std::string reason;
    if (gap < -kSlack) {
      reason = "S_d(forward) exceeds -S_d(reverse) by " + format_number(-gap);
    } else if (work_gap < -kSlack) {
      reason = "W_ext exceeds W_cost by " + format_number(-work_gap);
    } else if (constant && std::abs(gap) > kSlack) {
      reason = "constant-drop instance has gap " + format_number(gap);
    }
    equality_cases += constant;
    if (reason.empty()) {
      ++r.passed;
    } else {
      r.fail(k, reason, dump_transformation("irreversibility", cfg, k, *t));
    }
  }
  r.stats = {{"equality_cases", equality_cases}, {"max_gap", max_gap}};
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

// Draws product engine instances until `wanted` spontaneous cycles are found.
template <typename F>
void for_spontaneous_products(const TrialConfig& cfg, int wanted,
                              SuiteResult& r, F&& body) {
  const TransformOptions opts{cfg.log_points, cfg.tol};
  int found = 0;
  const int attempts = 50 * std::max(wanted, 1);
  for (int k = 0; k < attempts && found < wanted; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const EngineSpec spec = random_spec(rng, cfg, true);
    const BlockSpectrum s = random_product_state(rng, spec);
    const EngineCycle cycle = one_step_cycle(s, spec);
    const Spontaneity sp = engine_spontaneous(cycle, opts);
    if (!sp.spontaneous) {
      ++r.skipped;
      continue;
    }
    ++found;
    body(k, cycle, sp);
  }
  r.trials = found;
}

SuiteResult carnot(const TrialConfig& cfg) {
  SuiteResult r;
  const TransformOptions opts{cfg.log_points, cfg.tol};
  int compared1 = 0;
  int compared2 = 0;
  double identity_err = 0.0;
  double budget_err = 0.0;
  for_spontaneous_products(cfg, cfg.trials, r, [&](int k, const EngineCycle& c,
                                                   const Spontaneity& sp) {
    const BathPair& b = c.spec.baths();
    const double budget = sp.budget;
    std::string reason;
    // Carnot identity on the saturated split for several W1 > 0.
    Rng rng(cfg.seed ^ 0x5A5A5A5AULL, static_cast<std::uint64_t>(k));
    std::vector<double> w1s = {rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0)};
    const double w1_alpha1 = alpha_work(c, Alpha::one()).w1;
    if (w1_alpha1 > 0.0) w1s.push_back(w1_alpha1);
    for (double w1 : w1s) {
      const ResolvedSplit split{w1, (budget - b.beta1 * w1) / b.beta2, "user"};
      const Statements st = statements_report(c, budget, split, cfg.tol);
      const double eta1 = (split.w1 + split.w2) / split.w1;
      const double err =
          std::abs(eta1 - (1.0 - b.beta1 / b.beta2) - budget / (b.beta2 * w1));
      identity_err = std::max(identity_err, err);
      if (err > 1e-12) reason = "Carnot identity off by " + format_number(err);
      if (st.evaluable && !st.carnot1.holds) reason = "Carnot bound on eta1 fails";
    }
    // SLTO beats local thermal operations on the matched split.
    const LocalToComparison lt = local_to_comparison(c, budget, opts);
    double margin = kInf;
    if (lt.eta1 && lt.matched_eta1) {
      ++compared1;
      margin = std::min(margin, *lt.matched_eta1 - *lt.eta1);
    }
    if (lt.eta2 && lt.matched_eta2) {
      ++compared2;
      margin = std::min(margin, *lt.matched_eta2 - *lt.eta2);
    }
    if (std::isfinite(margin)) r.record_margin(margin);
    if (margin < -cfg.tol) {
      reason = "local-TO efficiency exceeds SLTO by " + format_number(-margin);
    }
    // Budget equals the inf of the summed alpha-works.
    const Extremum sum_inf = scan_extremum(
        [&](Alpha a) {
          const AlphaWorkRow row = alpha_work(c, a);
          return b.beta1 * row.w1 + b.beta2 * row.w2;
        },
        standard_alpha_grid(cfg.log_points), Sense::Minimize);
    const double berr = std::abs(sum_inf.value - budget);
    budget_err = std::max(budget_err, berr);
    if (berr > 1e-7) reason = "budget differs from inf of alpha-works by " +
                              format_number(berr);
    if (reason.empty()) {
      ++r.passed;
    } else {
      r.fail(k, reason,
             dump_state("carnot", cfg, k, c.spec,
                        StateInput::diagonal(
                            {c.state.p().begin(), c.state.p().end()})));
    }
  });
  r.stats = {{"eta1_compared", compared1},
             {"eta2_compared", compared2},
             {"max_identity_error", identity_err},
             {"max_budget_error", budget_err}};
  r.pass = r.failed == 0 && r.trials == cfg.trials;
  return r;
}

SuiteResult clausius_heat(const TrialConfig& cfg) {
  SuiteResult r;
  constexpr double kSlack = 1e-9;
  for_spontaneous_products(cfg, cfg.trials, r, [&](int k, const EngineCycle& c,
                                                   const Spontaneity& sp) {
    const ResolvedSplit split =
        resolve_split(c, sp.budget, {EngineSplitKind::kAlphaOne, 0.0});
    const HeatReport h = heat_report(c, split.w1, split.w2);
    r.record_margin(-h.weighted);
    if (h.weighted <= kSlack) {
      ++r.passed;
    } else {
      r.fail(k, "beta1 Q1 + beta2 Q2 = " + format_number(h.weighted),
             dump_state("clausius_heat", cfg, k, c.spec,
                        StateInput::diagonal(
                            {c.state.p().begin(), c.state.p().end()})));
    }
  });
  r.pass = r.failed == 0 && r.trials == cfg.trials;
  return r;
}

// ---------------------------------------------------------------------------

// Single-bath thermo-majorization via the hockey-stick criterion
// sum_k (p_k - t g_k)_+ >= sum_k (p2_k - t g2_k)_+ for all t >= 0, which only
// needs checking at the kinks t = p_k / g_k of either side. The weights g and
// g2 must have equal totals.
bool single_bath_thermo_majorizes(std::span<const double> p,
                                  std::span<const double> g,
                                  std::span<const double> p2,
                                  std::span<const double> g2, double tol) {
  auto hockey = [](std::span<const double> v, std::span<const double> w,
                   double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::max(0.0, v[i] - t * w[i]);
    return s;
  };
  std::vector<double> kinks = {0.0};
  for (std::size_t i = 0; i < g.size(); ++i) kinks.push_back(p[i] / g[i]);
  for (std::size_t i = 0; i < g2.size(); ++i) kinks.push_back(p2[i] / g2[i]);
  return std::all_of(kinks.begin(), kinks.end(), [&](double t) {
    return hockey(p, g, t) >= hockey(p2, g2, t) - tol;
  });
}

std::vector<double> boltzmann_weights(const EngineSpec& spec, double beta) {
  std::vector<double> g(spec.joint_dim());
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      g[spec.index(i, j)] = std::exp(-beta * (spec.h1()[i] + spec.h2()[j]));
    }
  }
  return g;
}

// Independent Renyi divergence for full-support reference weights.
double naive_divergence(std::span<const double> p, std::span<const double> q,
                        Alpha a) {
  if (a.kind() == Alpha::Kind::Zero) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] > 0.0 ? q[i] : 0.0;
    return -std::log(s);
  }
  if (a.kind() == Alpha::Kind::One) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0) s += p[i] * std::log(p[i] / q[i]);
    }
    return s;
  }
  if (a.kind() == Alpha::Kind::PosInfinity) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, p[i] / q[i]);
    return std::log(m);
  }
  const double x = a.value();
  std::vector<double> t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) t.push_back(x * std::log(p[i]) + (1.0 - x) * std::log(q[i]));
  }
  const double m = *std::max_element(t.begin(), t.end());
  double s = 0.0;
  for (double v : t) s += std::exp(v - m);
  return (m + std::log(s)) / (x - 1.0);
}

SuiteResult reduction(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  const TransformOptions opts{cfg.log_points, cfg.tol};
  const std::vector<Alpha> grid = standard_alpha_grid(cfg.log_points);
  double worst_sd = 0.0;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    const double beta = rng.uniform(cfg.beta_min, cfg.beta_max);
    const EngineSpec raw = random_spec(rng, cfg, false);
    const EngineSpec spec(raw.h1(), raw.h2(), BathPair(beta, beta));
    const BlockSpectrum p = random_state(rng, spec);
    const BlockSpectrum p2(partner(rng, p.p(), semi_gibbs(spec).q), spec);
    const Transformation t(p, p2, spec);

    // Single-bath reference: Gibbs weights of the total energy E1 + E2.
    const std::vector<double> g = boltzmann_weights(spec, beta);
    std::vector<double> gamma = g;
    const double z = sum(g);
    for (double& x : gamma) x /= z;

    std::string reason;
    const bool slto = slto_feasible(t);
    const bool oracle = single_bath_thermo_majorizes(p.p(), g, p2.p(), g, 1e-10);
    if (slto != oracle) {
      reason = std::string("SLTO ") + yes_no(slto) +
               ", single-bath thermo-majorization " + yes_no(oracle);
    }
    // S_d / beta against the single-bath work distance.
    const double sd = free_entropy_distance(t, opts).inf.value;
    const Extremum wd = scan_extremum(
        [&](Alpha a) {
          return (naive_divergence(p.p(), gamma, a) -
                  naive_divergence(p2.p(), gamma, a)) /
                 beta;
        },
        grid, Sense::Minimize);
    const double sd_err = std::abs(sd - beta * wd.value);
    worst_sd = std::max(worst_sd, sd_err);
    if (sd_err > 1e-7) {
      reason = "S_d differs from beta * single-bath distance by " +
               format_number(sd_err);
    }
    const bool cslto = cslto_feasible(t, opts).feasible;
    if (cslto != (wd.value >= -cfg.tol / beta)) {
      reason = "cSLTO verdict differs from the single-bath free-energy scan";
    }
    // The engine swap at equal temperatures permutes a single Gibbs weight
    // set, so it is always free and reversible.
    const EngineSpec sspec = swapped_spec(spec);
    const BlockSpectrum swapped = swap_state(p, spec);
    const Transformation swap(p, spec, swapped, sspec);
    const FreeEntropyDistance sw = free_entropy_distance(swap, opts);
    const bool swap_oracle = single_bath_thermo_majorizes(
        p.p(), g, swapped.p(), boltzmann_weights(sspec, beta), 1e-10);
    if (!(sw.inf.value >= -cfg.tol) || !swap_oracle ||
        std::abs(sw.inf.value) > cfg.tol) {
      reason = "equal-temperature swap is not free and reversible";
    }
    if (reason.empty()) {
      ++r.passed;
    } else {
      r.fail(k, reason, dump_transformation("reduction", cfg, k, t));
    }
  }
  r.stats = {{"max_distance_error", worst_sd}};
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult asymmetry_suite(const TrialConfig& cfg) {
  SuiteResult r;
  r.trials = cfg.trials;
  const std::vector<Alpha> grid = standard_alpha_grid(cfg.log_points);
  const std::vector<Alpha> probe = {Alpha::zero(), Alpha::of(0.25),
                                    Alpha::of(0.5), Alpha::one(),
                                    Alpha::of(1.5), Alpha::of(2.0),
                                    Alpha::infinity()};
  int rejected = 0;
  double zero_err = 0.0;
  double inv_err = 0.0;
  for (int k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
    EngineSpec spec = random_spec(rng, cfg, false);
    if (rng.uniform() < 1.0 / 3.0) {
      // Equal temperatures and Hamiltonians give degenerate blocks.
      spec = EngineSpec(spec.h1(), spec.h1(),
                        BathPair(spec.baths().beta1, spec.baths().beta1));
    }
    const WeightedSpectrum w = weighted_spectrum(spec);
    const DenseState rho = random_dense_state(rng, spec.joint_dim());
    const DenseState dephased = block_dephase(rho, w);
    std::string reason;
    for (const Alpha& a : grid) {
      const double v = asymmetry(dephased, spec, a);
      zero_err = std::max(zero_err, v);
      if (v > 1e-10) reason = "nonzero asymmetry on a block-diagonal state";
    }
    for (int s = 0; s < 10; ++s) {
      const double t = rng.uniform(0.0, 20.0);
      const DenseState moved = weighted_time_evolution(rho, w, t);
      for (const Alpha& a : probe) {
        const double d =
            std::abs(asymmetry(moved, spec, a) - asymmetry(rho, spec, a));
        inv_err = std::max(inv_err, d);
        if (d > 1e-9) reason = "asymmetry changes under time evolution";
      }
    }
    if (asymmetry(rho, spec, Alpha::one()) > 1e-6) {
      const AsymmetryCheck up =
          asymmetry_necessary(dephased, spec, rho, spec, cfg.log_points, cfg.tol);
      const AsymmetryCheck down =
          asymmetry_necessary(rho, spec, dephased, spec, cfg.log_points, cfg.tol);
      rejected += !up.passes;
      if (up.passes) reason = "dephased -> coherent was not rejected";
      if (!down.passes) reason = "coherent -> dephased was rejected";
    } else {
      ++r.skipped;
    }
    if (reason.empty()) {
      ++r.passed;
    } else {
      r.fail(k, reason,
             dump_state("asymmetry", cfg, k, spec, StateInput::dense(rho)));
    }
  }
  r.stats = {{"max_zero_error", zero_err},
             {"max_invariance_error", inv_err},
             {"rejected_dephased_to_coherent", rejected}};
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult asymptotics(const TrialConfig&) {
  SuiteResult r;
  constexpr double kEps = 0.05;
  constexpr int kMaxN = 14;
  const std::vector<double> p = {0.7, 0.3};
  const std::vector<double> q = {0.5, 0.5};
  const double d1 = renyi_relative_entropy(p, q, Alpha::one());
  const double d0 = renyi_relative_entropy(p, q, Alpha::zero());
  const double dinf = renyi_relative_entropy(p, q, Alpha::infinity());
  std::vector<double> pn = {1.0};
  std::vector<double> qn = {1.0};
  std::vector<double> dmin(kMaxN + 1);
  std::vector<double> dmax(kMaxN + 1);
  double additivity_err = 0.0;
  double equal_err = 0.0;
  for (int n = 1; n <= kMaxN; ++n) {
    pn = kron(pn, p);
    qn = kron(qn, q);
    dmin[n] = smoothed_dmin(pn, qn, kEps) / n;
    dmax[n] = smoothed_dmax(pn, qn, kEps) / n;
    additivity_err = std::max(
        {additivity_err,
         std::abs(renyi_relative_entropy(pn, qn, Alpha::zero()) / n - d0),
         std::abs(renyi_relative_entropy(pn, qn, Alpha::infinity()) / n - dinf)});
    // For p = q the smoothed values sit in [0, -log(1 - eps)] and
    // [log(1 - eps), 0] respectively.
    const double cap = -std::log1p(-kEps);
    const double lo = smoothed_dmin(qn, qn, kEps);
    const double hi = smoothed_dmax(qn, qn, kEps);
    equal_err = std::max({equal_err, -lo, lo - cap, hi, -hi - cap});
    r.stats.emplace_back("dmin_" + std::to_string(n), dmin[n]);
    r.stats.emplace_back("dmax_" + std::to_string(n), dmax[n]);
  }
  r.stats.emplace_back("d1", d1);
  r.stats.emplace_back("unsmoothed_additivity_error", additivity_err);
  const double window = 3.0 / std::sqrt(static_cast<double>(kMaxN));
  auto check = [&](bool ok, const std::string& what) {
    ++r.trials;
    if (ok) {
      ++r.passed;
    } else {
      r.fail(r.trials - 1, what, "{}");
    }
  };
  check(std::abs(dmin[kMaxN] - d1) <= window, "smoothed D0 not within 3/sqrt(N)");
  check(std::abs(dmax[kMaxN] - d1) <= window, "smoothed Dmax not within 3/sqrt(N)");
  check(std::abs(dmin[kMaxN] - d1) < std::abs(dmin[2] - d1),
        "smoothed D0 did not approach D1");
  check(std::abs(dmax[kMaxN] - d1) < std::abs(dmax[2] - d1),
        "smoothed Dmax did not approach D1");
  check(dmin[kMaxN] <= d1 + window && dmax[kMaxN] >= d1 - window,
        "smoothed values do not bracket D1");
  check(additivity_err <= 1e-12, "unsmoothed per-copy values vary with N");
  check(equal_err <= 1e-12, "p = q leaves the smoothing window");
  r.worst_margin = window - std::max(std::abs(dmin[kMaxN] - d1),
                                     std::abs(dmax[kMaxN] - d1));
  finish(r);
  return r;
}

}  // namespace

const std::vector<SuiteDef>& suite_table() {
  static const std::vector<SuiteDef> table = {
      {"thermo_vs_lp", 1000, thermo_vs_lp},
      {"fine_grain", 500, fine_grain_suite},
      {"second_law_scan", 1000, second_law_scan},
      {"helmholtz_limit", 200, helmholtz_limit},
      {"additivity", 200, additivity},
      {"data_processing", 500, data_processing},
      {"irreversibility", 1000, irreversibility},
      {"carnot", 500, carnot},
      {"clausius_heat", 500, clausius_heat},
      {"reduction", 300, reduction},
      {"asymmetry", 100, asymmetry_suite},
      {"asymptotics", 1, asymptotics},
  };
  return table;
}

}  // namespace thermoforge::detail
