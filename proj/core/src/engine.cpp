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

#include "thermoforge/engine.hpp"

#include <cmath>
#include <limits>

#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"

namespace thermoforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean(std::span<const double> p, const EnergyLevels& h) {
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * h[i];
  return e;
}

double ratio_or_nan(double num, double den) {
  return den == 0.0 ? kNaN : num / den;
}

}  // namespace

EngineSpec swapped_spec(const EngineSpec& spec) {
  return EngineSpec(spec.h2(), spec.h1(), spec.baths());
}

BlockSpectrum swap_state(const BlockSpectrum& s, const EngineSpec& spec) {
  const EngineSpec swapped = swapped_spec(spec);
  std::vector<double> p(s.size());
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      p[swapped.index(j, i)] = s[spec.index(i, j)];
    }
  }
  return BlockSpectrum(std::move(p), swapped);
}

EngineCycle one_step_cycle(const BlockSpectrum& state, const EngineSpec& spec) {
  if (!(spec.baths().beta1 < spec.baths().beta2)) {
    throw InputError("engine mode requires beta1 < beta2 (bath 1 is the hot bath)");
  }
  return EngineCycle{spec, state,
                     Transformation(state, spec, swap_state(state, spec),
                                    swapped_spec(spec))};
}

bool is_product(const BlockSpectrum& s, const EngineSpec& spec, double tol) {
  const std::vector<double> m1 = s.marginal1(spec);
  const std::vector<double> m2 = s.marginal2(spec);
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      if (std::abs(s[spec.index(i, j)] - m1[i] * m2[j]) > tol) return false;
    }
  }
  return true;
}

Spontaneity engine_spontaneous(const EngineCycle& cycle,
                               const TransformOptions& opts, bool catalytic) {
  const FreeEntropyDistance d = free_entropy_distance(cycle.transformation, opts);
  Spontaneity s;
  s.budget = d.inf.value;
  s.budget_alpha = d.inf.alpha;
  s.budget_sup = d.sup.value;
  s.spontaneous = catalytic ? d.inf.value >= -opts.tol
                            : slto_feasible(cycle.transformation);
  return s;
}

AlphaWorkRow alpha_work(const EngineCycle& cycle, Alpha a) {
  const EngineSpec& spec = cycle.spec;
  const double b1 = spec.baths().beta1;
  const double b2 = spec.baths().beta2;
  const std::vector<double> rho = cycle.state.marginal1(spec);
  const std::vector<double> sigma = cycle.state.marginal2(spec);
  const double bw1 = local_free_entropy(rho, spec.h1(), b1, a) -
                     local_free_entropy(sigma, spec.h2(), b1, a);
  const double bw2 = local_free_entropy(sigma, spec.h2(), b2, a) -
                     local_free_entropy(rho, spec.h1(), b2, a);
  AlphaWorkRow row{a, bw1 / b1, bw2 / b2, 0.0, kNaN, kNaN};
  row.w_ext = row.w1 + row.w2;
  row.eta1 = ratio_or_nan(row.w_ext, row.w1);
  row.eta2 = ratio_or_nan(row.w_ext, std::abs(row.w2));
  return row;
}

std::vector<AlphaWorkRow> alpha_works(const EngineCycle& cycle,
                                      std::span<const Alpha> grid) {
  if (!is_product(cycle.state, cycle.spec)) {
    throw InputError("alpha-works require a product working state");
  }
  std::vector<AlphaWorkRow> rows;
  rows.reserve(grid.size());
  for (const Alpha& a : grid) rows.push_back(alpha_work(cycle, a));
  return rows;
}

LocalToComparison local_to_comparison(const EngineCycle& cycle, double budget,
                                      const TransformOptions& opts) {
  if (!is_product(cycle.state, cycle.spec)) {
    throw InputError("local comparison requires a product working state");
  }
  const std::vector<Alpha> grid = standard_alpha_grid(opts.log_points);
  const Extremum w1 = scan_extremum(
      [&](Alpha a) { return alpha_work(cycle, a).w1; }, grid, Sense::Minimize);
  const Extremum w2 = scan_extremum(
      [&](Alpha a) { return alpha_work(cycle, a).w2; }, grid, Sense::Minimize);
  LocalToComparison c;
  c.w1 = w1.value;
  c.w2 = w2.value;
  c.w_ext = c.w1 + c.w2;
  c.w1_alpha = w1.alpha;
  c.w2_alpha = w2.alpha;
  if (c.w1 > 0.0) c.eta1 = c.w_ext / c.w1;
  if (c.w2 < 0.0) c.eta2 = c.w_ext / -c.w2;
  if (c.w1 > 0.0) {
    const BathPair& b = cycle.spec.baths();
    const double w2_matched = (budget - b.beta1 * c.w1) / b.beta2;
    const double w_ext = c.w1 + w2_matched;
    c.matched_eta1 = w_ext / c.w1;
    if (w2_matched < 0.0) c.matched_eta2 = w_ext / -w2_matched;
  }
  return c;
}

std::string EngineSplit::name() const {
  switch (kind) {
    case EngineSplitKind::kAuto:
      return "auto";
    case EngineSplitKind::kAlphaOne:
      return "alpha1";
    case EngineSplitKind::kBath1:
      return "bath1";
    case EngineSplitKind::kBath2:
      return "bath2";
    case EngineSplitKind::kUser:
      break;
  }
  return "user";
}

ResolvedSplit resolve_split(const EngineCycle& cycle, double budget,
                            const EngineSplit& split) {
  const BathPair& b = cycle.spec.baths();
  const bool product = is_product(cycle.state, cycle.spec);
  ResolvedSplit r{0.0, 0.0, split.name()};
  switch (split.kind) {
    case EngineSplitKind::kAuto:
      if (product) {
        r.w1 = alpha_work(cycle, Alpha::one()).w1;
        r.rule = "alpha1";
      } else {
        r.w1 = 2.0 * budget / b.beta1;
        r.rule = "correlated-default";
      }
      break;
    case EngineSplitKind::kAlphaOne:
      if (!product) {
        throw InputError("the alpha1 split needs a product working state");
      }
      r.w1 = alpha_work(cycle, Alpha::one()).w1;
      break;
    case EngineSplitKind::kBath1:
      r.w1 = budget / b.beta1;
      break;
    case EngineSplitKind::kBath2:
      r.w1 = 0.0;
      break;
    case EngineSplitKind::kUser:
      r.w1 = split.w1;
      break;
  }
  r.w2 = (budget - b.beta1 * r.w1) / b.beta2;
  if (split.kind == EngineSplitKind::kBath1) r.w2 = 0.0;
  return r;
}

Statements statements_report(const EngineCycle& cycle, double budget,
                             const ResolvedSplit& split, double tol) {
  const BathPair& b = cycle.spec.baths();
  Statements s;
  s.w1 = split.w1;
  s.w2 = split.w2;
  s.w_ext = split.w1 + split.w2;
  s.carnot_floor1 = 1.0 - b.beta1 / b.beta2;
  s.carnot_floor2 = b.beta2 / b.beta1 - 1.0;
  if (budget < -tol) {
    s.note = "no valid split: the budget is negative";
    return s;
  }
  if (!(s.w1 > 0.0 && s.w2 <= 0.0)) {
    s.note = "split does not satisfy W1 > 0 >= W2";
    return s;
  }
  s.evaluable = true;
  s.clausius = {s.w_ext > -tol, s.w_ext};
  s.kelvin_planck = {s.w1 - s.w_ext >= -tol, s.w1 - s.w_ext};
  s.eta1 = s.w_ext / s.w1;
  const double m1 = *s.eta1 - s.carnot_floor1;
  s.carnot1 = {m1 >= -tol, m1};
  if (s.w2 < 0.0) {
    s.eta2 = s.w_ext / -s.w2;
    const double m2 = *s.eta2 - s.carnot_floor2;
    s.carnot2 = {m2 >= -tol, m2};
  } else {
    s.carnot2 = {true, kInf};
  }
  return s;
}

Refrigeration refrigeration_cost(const EngineCycle& cycle, double budget_sup,
                                 const EngineSplit& split,
                                 const ResolvedSplit& forward) {
  const BathPair& b = cycle.spec.baths();
  Refrigeration r{-budget_sup, 0.0, 0.0, 0.0};
  switch (split.kind) {
    case EngineSplitKind::kBath1:
      r.w1 = r.budget / b.beta1;
      break;
    case EngineSplitKind::kBath2:
      r.w2 = r.budget / b.beta2;
      break;
    case EngineSplitKind::kAuto:
    case EngineSplitKind::kAlphaOne:
    case EngineSplitKind::kUser:
      // Mirror the forward split: the hot-side work is paid back.
      r.w1 = -forward.w1;
      r.w2 = (r.budget - b.beta1 * r.w1) / b.beta2;
      break;
  }
  r.cost = std::abs(r.w1) - r.w2;
  return r;
}

HeatReport heat_report(const EngineCycle& cycle, double w1, double w2) {
  const EngineSpec& spec = cycle.spec;
  const EngineSpec& fspec = cycle.transformation.final_spec();
  const BlockSpectrum& fin = cycle.transformation.final();
  HeatReport h{};
  h.de1 = mean(fin.marginal1(fspec), fspec.h1()) -
          mean(cycle.state.marginal1(spec), spec.h1());
  h.de2 = mean(fin.marginal2(fspec), fspec.h2()) -
          mean(cycle.state.marginal2(spec), spec.h2());
  h.q1 = h.de1 + w1;
  h.q2 = h.de2 + w2;
  h.weighted = spec.baths().beta1 * h.q1 + spec.baths().beta2 * h.q2;
  return h;
}

CorrelationEngine correlation_engine(const BlockSpectrum& tau,
                                     const EngineSpec& spec,
                                     const TransformOptions& opts) {
  if (!(spec.h1() == spec.h2())) {
    throw InputError("the correlation engine needs identical subsystem Hamiltonians");
  }
  const std::vector<double> m1 = tau.marginal1(spec);
  const std::vector<double> m2 = tau.marginal2(spec);
  const Transformation t(tau, BlockSpectrum(kron(m1, m2), spec), spec);
  const FreeEntropyDistance d = free_entropy_distance(t, opts);
  CorrelationEngine c;
  c.feasibility = cslto_feasible(t, opts);
  c.budget = d.inf.value;
  c.budget_alpha = d.inf.alpha;
  c.mutual_information = renyi_entropy(m1, Alpha::one()) +
                         renyi_entropy(m2, Alpha::one()) -
                         renyi_entropy(tau.p(), Alpha::one());
  return c;
}

EngineReport analyze_engine(const BlockSpectrum& state, const EngineSpec& spec,
                            const EngineOptions& opts) {
  const EngineCycle cycle = one_step_cycle(state, spec);
  EngineReport r;
  r.product = is_product(state, spec);
  r.spontaneity = engine_spontaneous(cycle, opts.scan, opts.catalytic);
  const double budget = r.spontaneity.budget;
  r.split = resolve_split(cycle, budget, opts.split);
  r.statements = statements_report(cycle, budget, r.split, opts.scan.tol);
  if (!r.spontaneity.spontaneous) {
    r.notes.push_back("cycle is not spontaneous; statements are informational");
  }
  if (r.product) {
    r.alpha_works =
        alpha_works(cycle, standard_alpha_grid(opts.scan.log_points));
    r.local_to = local_to_comparison(cycle, budget, opts.scan);
  } else {
    r.notes.push_back(
        "correlated working state: no per-bath alpha-work decomposition, only "
        "the budget is reported");
    if (spec.h1() == spec.h2()) {
      r.correlation = correlation_engine(state, spec, opts.scan);
    }
  }
  r.refrigeration = refrigeration_cost(cycle, r.spontaneity.budget_sup,
                                       opts.split, r.split);
  r.heat = heat_report(cycle, r.split.w1, r.split.w2);
  return r;
}

}  // namespace thermoforge
