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

#include "thermoforge/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"

namespace thermoforge {

Transformation::Transformation(BlockSpectrum initial, EngineSpec initial_spec,
                               BlockSpectrum final, EngineSpec final_spec)
    : initial_(std::move(initial)),
      initial_spec_(std::move(initial_spec)),
      final_(std::move(final)),
      final_spec_(std::move(final_spec)) {
  if (!(initial_spec_.baths() == final_spec_.baths())) {
    throw InputError("initial and final specs must share the bath pair");
  }
  if (initial_.size() != initial_spec_.joint_dim() ||
      final_.size() != final_spec_.joint_dim()) {
    throw InputError("state dimensions do not match their specs");
  }
}

Transformation::Transformation(BlockSpectrum initial, BlockSpectrum final,
                               EngineSpec spec)
    : Transformation(std::move(initial), spec, std::move(final), spec) {}

Transformation Transformation::reversed() const {
  return Transformation(final_, final_spec_, initial_, initial_spec_);
}

namespace {

std::vector<double> concat(std::span<const double> a,
                           std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

ClockExtension clock_extend(const Transformation& t) {
  const EngineSpec& s = t.initial_spec();
  const EngineSpec& f = t.final_spec();
  EngineSpec ext(EnergyLevels(concat(s.h1().values(), f.h1().values())),
                 EnergyLevels(concat(s.h2().values(), f.h2().values())),
                 t.baths());
  std::vector<double> pi(ext.joint_dim(), 0.0);
  std::vector<double> pf(ext.joint_dim(), 0.0);
  for (std::size_t i = 0; i < s.d1(); ++i) {
    for (std::size_t j = 0; j < s.d2(); ++j) {
      pi[ext.index(i, j)] = t.initial()[s.index(i, j)];
    }
  }
  for (std::size_t i = 0; i < f.d1(); ++i) {
    for (std::size_t j = 0; j < f.d2(); ++j) {
      pf[ext.index(s.d1() + i, s.d2() + j)] = t.final()[f.index(i, j)];
    }
  }
  BlockSpectrum initial(std::move(pi), ext);
  BlockSpectrum final(std::move(pf), ext);
  return {std::move(ext), std::move(initial), std::move(final)};
}

namespace {

// Precomputed logs and reference weights for repeated S_a evaluations.
struct FreeEntropyTerms {
  std::vector<double> p;
  std::vector<double> log_p;
  SemiGibbs gibbs;

  FreeEntropyTerms(const BlockSpectrum& s, const EngineSpec& spec)
      : p(s.p().begin(), s.p().end()),
        log_p(logs_of(s.p())),
        gibbs(semi_gibbs(spec)) {}

  double operator()(Alpha a) const {
    return renyi_relative_entropy_logs(p, log_p, gibbs.q, gibbs.log_q, a) -
           gibbs.log_z();
  }
};

class DropEvaluator {
 public:
  explicit DropEvaluator(const Transformation& t)
      : ext_(t.changes_hamiltonian()
                 ? std::optional<ClockExtension>(clock_extend(t))
                 : std::nullopt),
        initial_(ext_ ? ext_->initial : t.initial(),
                 ext_ ? ext_->spec : t.initial_spec()),
        final_(ext_ ? ext_->final : t.final(),
               ext_ ? ext_->spec : t.final_spec()) {}

  double operator()(Alpha a) const {
    const double si = initial_(a);
    const double sf = final_(a);
    if (si == sf) return 0.0;  // also resolves inf - inf
    return si - sf;
  }

 private:
  std::optional<ClockExtension> ext_;
  FreeEntropyTerms initial_;
  FreeEntropyTerms final_;
};

bool full_support(std::span<const double> p) {
  return std::all_of(p.begin(), p.end(), [](double x) { return x > 0.0; });
}

Feasibility verdict_from(const Extremum& worst, double tol) {
  Feasibility f;
  f.margin = worst.value;
  f.feasible = worst.value >= -tol;
  f.marginal = std::abs(worst.value) <= tol;
  if (!f.feasible) f.violating_alpha = worst.alpha;
  return f;
}

}  // namespace

double free_entropy_drop(const Transformation& t, Alpha a) {
  if (t.changes_hamiltonian() && !a.is_nonnegative()) {
    // The clock identity holds only for a >= 0; use the direct difference.
    return FreeEntropyTerms(t.initial(), t.initial_spec())(a) -
           FreeEntropyTerms(t.final(), t.final_spec())(a);
  }
  return DropEvaluator(t)(a);
}

FreeEntropyDistance free_entropy_distance(const Transformation& t,
                                          const TransformOptions& opts) {
  const DropEvaluator drop(t);
  const std::vector<Alpha> grid = standard_alpha_grid(opts.log_points);
  auto f = [&](Alpha a) { return drop(a); };
  return {scan_extremum(f, grid, Sense::Minimize),
          scan_extremum(f, grid, Sense::Maximize)};
}

Feasibility cslto_feasible(const Transformation& t,
                           const TransformOptions& opts) {
  const DropEvaluator drop(t);
  const std::vector<Alpha> grid = standard_alpha_grid(opts.log_points);
  return verdict_from(
      scan_extremum([&](Alpha a) { return drop(a); }, grid, Sense::Minimize),
      opts.tol);
}

SignedFeasibility cslto_feasible_signed(const Transformation& t,
                                        const TransformOptions& opts) {
  SignedFeasibility out;
  if (t.changes_hamiltonian() || !full_support(t.initial().p()) ||
      !full_support(t.final().p())) {
    out.deferred = true;
    out.result = cslto_feasible(t, opts);
    return out;
  }
  const DropEvaluator drop(t);
  const std::vector<Alpha> grid = signed_alpha_grid(opts.log_points);
  out.result = verdict_from(
      scan_extremum([&](Alpha a) { return drop(a); }, grid, Sense::Minimize),
      opts.tol);
  return out;
}

bool slto_feasible(const Transformation& t) {
  if (!t.changes_hamiltonian()) {
    return thermo_majorizes(t.initial(), t.final(), t.initial_spec());
  }
  const ClockExtension ext = clock_extend(t);
  return thermo_majorizes(ext.initial, ext.final, ext.spec);
}

LpResult slto_feasible_lp(const Transformation& t) {
  if (!t.changes_hamiltonian()) {
    const SemiGibbs g = semi_gibbs(t.initial_spec());
    return d_majorize_lp(t.initial().p(), g.q, t.final().p(), g.q);
  }
  const ClockExtension ext = clock_extend(t);
  const SemiGibbs g = semi_gibbs(ext.spec);
  return d_majorize_lp(ext.initial.p(), g.q, ext.final.p(), g.q);
}

std::string SplitRule::name() const {
  switch (kind) {
    case SplitKind::kBath1:
      return "bath1-only";
    case SplitKind::kBath2:
      return "bath2-only";
    case SplitKind::kUser:
      break;
  }
  return "user";
}

WorkSplit split_budget(double budget, const BathPair& baths,
                       const SplitRule& rule) {
  WorkSplit w;
  w.rule = rule;
  switch (rule.kind) {
    case SplitKind::kBath1:
      w.w1 = budget / baths.beta1;
      break;
    case SplitKind::kBath2:
      w.w2 = budget / baths.beta2;
      break;
    case SplitKind::kUser:
      w.w1 = rule.w1;
      w.w2 = (budget - baths.beta1 * rule.w1) / baths.beta2;
      if (!(w.w1 > 0.0 && w.w2 <= 0.0)) {
        w.warning = "split does not follow the engine pattern w1 > 0 >= w2";
      }
      break;
  }
  w.w_ext = w.w1 + w.w2;
  return w;
}

WorkQuantities work_quantities(const FreeEntropyDistance& d,
                               const BathPair& baths, const SplitRule& rule) {
  WorkQuantities q;
  q.extract = split_budget(d.inf.value, baths, rule);
  q.cost = split_budget(d.sup.value, baths, rule);
  q.w_cost = q.cost.w_ext;
  return q;
}

DistillableFormation distillable_and_formation(const BlockSpectrum& s,
                                               const EngineSpec& spec) {
  const SemiGibbs g = semi_gibbs(spec);
  const std::vector<double> log_p = logs_of(s.p());
  return {renyi_relative_entropy_logs(s.p(), log_p, g.q, g.log_q, Alpha::zero()),
          renyi_relative_entropy_logs(s.p(), log_p, g.q, g.log_q,
                                      Alpha::infinity())};
}

TransformReport analyze_transformation(const Transformation& t,
                                       const ReportOptions& opts) {
  TransformReport r;
  const FreeEntropyDistance d = free_entropy_distance(t, opts.scan);
  r.cslto = verdict_from(d.inf, opts.scan.tol);
  if (opts.signed_alpha) r.signed_cslto = cslto_feasible_signed(t, opts.scan);
  r.feasible_slto = slto_feasible(t);
  if (opts.lp_cross_check) r.lp_status = slto_feasible_lp(t).status;
  r.s_distance = d.inf.value;
  r.minimizing_alpha = d.inf.alpha;
  r.s_cost = d.sup.value;
  r.maximizing_alpha = d.sup.alpha;
  r.initial_resources = distillable_and_formation(t.initial(), t.initial_spec());
  r.work = work_quantities(d, t.baths(), opts.split);
  return r;
}

}  // namespace thermoforge
