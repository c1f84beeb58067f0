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

// Second laws for transformations between block-diagonal states: catalytic
// and non-catalytic feasibility, clock extension for Hamiltonian changes,
// free-entropy distance and one-shot work.

#pragma once

#include <optional>
#include <string>

#include "thermoforge/alpha.hpp"
#include "thermoforge/majorization.hpp"
#include "thermoforge/numeric.hpp"
#include "thermoforge/spectra.hpp"

namespace thermoforge {

// (initial, H) -> (final, H'). Both specs must share the bath pair.
class Transformation {
 public:
  Transformation(BlockSpectrum initial, EngineSpec initial_spec,
                 BlockSpectrum final, EngineSpec final_spec);
  // Same Hamiltonians before and after.
  Transformation(BlockSpectrum initial, BlockSpectrum final, EngineSpec spec);

  const BlockSpectrum& initial() const noexcept { return initial_; }
  const BlockSpectrum& final() const noexcept { return final_; }
  const EngineSpec& initial_spec() const noexcept { return initial_spec_; }
  const EngineSpec& final_spec() const noexcept { return final_spec_; }
  const BathPair& baths() const noexcept { return initial_spec_.baths(); }
  bool changes_hamiltonian() const { return !(initial_spec_ == final_spec_); }

  // final -> initial with the Hamiltonians exchanged accordingly.
  Transformation reversed() const;

 private:
  BlockSpectrum initial_;
  EngineSpec initial_spec_;
  BlockSpectrum final_;
  EngineSpec final_spec_;
};

// Joint arena S1 X1 S2 X2 in which each subsystem carries a two-level clock
// label: label 0 selects the initial Hamiltonian, label 1 the final one. The
// extended subsystem spectrum is H_x followed by H'_x. The initial state sits
// in sector (0, 0) and the final one in sector (1, 1).
struct ClockExtension {
  EngineSpec spec;
  BlockSpectrum initial;
  BlockSpectrum final;
};

ClockExtension clock_extend(const Transformation& t);

struct TransformOptions {
  int log_points = 120;
  double tol = tol::kFeasibilitySlack;
};

// S_a(initial) - S_a(final). For a >= 0 this equals the same difference on
// the clock extension.
double free_entropy_drop(const Transformation& t, Alpha a);

struct FreeEntropyDistance {
  Extremum inf;  // S_d and its minimising alpha
  Extremum sup;  // cost direction
};

FreeEntropyDistance free_entropy_distance(const Transformation& t,
                                          const TransformOptions& opts = {});

struct Feasibility {
  bool feasible = false;
  bool marginal = false;  // |margin| within the slack
  double margin = 0.0;    // inf over the scanned alphas of the drop
  std::optional<Alpha> violating_alpha;
};

// All a >= 0: S_a(initial) >= S_a(final) - tol.
Feasibility cslto_feasible(const Transformation& t,
                           const TransformOptions& opts = {});

// Signed-alpha variant over (-inf, inf). Used only when both states have full
// support and the Hamiltonians are unchanged; otherwise it defers to the
// a >= 0 verdict. `deferred` reports which case applied.
struct SignedFeasibility {
  Feasibility result;
  bool deferred = false;
};
SignedFeasibility cslto_feasible_signed(const Transformation& t,
                                        const TransformOptions& opts = {});

// Thermo-majorization on the clock-extended pair (or directly when the
// Hamiltonians are unchanged).
bool slto_feasible(const Transformation& t);

// d-majorization LP on the same pair, for cross-checks.
LpResult slto_feasible_lp(const Transformation& t);

enum class SplitKind { kBath1, kBath2, kUser };

struct SplitRule {
  SplitKind kind = SplitKind::kBath1;
  double w1 = 0.0;  // used by kUser

  static SplitRule bath1() { return {SplitKind::kBath1, 0.0}; }
  static SplitRule bath2() { return {SplitKind::kBath2, 0.0}; }
  static SplitRule user(double w1) { return {SplitKind::kUser, w1}; }
  std::string name() const;
};

struct WorkSplit {
  double w1 = 0.0;
  double w2 = 0.0;
  double w_ext = 0.0;
  SplitRule rule;
  // Set when a user split contradicts the engine sign pattern w1 > 0 >= w2.
  std::optional<std::string> warning;
};

// Converts a free-entropy budget (nats) into the two battery works with
// beta1 w1 + beta2 w2 = budget.
WorkSplit split_budget(double budget, const BathPair& baths,
                       const SplitRule& rule);

struct WorkQuantities {
  WorkSplit extract;  // from S_d
  WorkSplit cost;     // from the sup of the drop
  double w_cost = 0.0;
};

WorkQuantities work_quantities(const FreeEntropyDistance& d,
                               const BathPair& baths, const SplitRule& rule);

struct DistillableFormation {
  double distillable;  // -log sum_{supp p} q
  double formation;    // log max p / q
};

DistillableFormation distillable_and_formation(const BlockSpectrum& s,
                                               const EngineSpec& spec);

struct TransformReport {
  Feasibility cslto;
  std::optional<SignedFeasibility> signed_cslto;
  bool feasible_slto = false;
  std::optional<LpStatus> lp_status;
  double s_distance = 0.0;
  Alpha minimizing_alpha = Alpha::zero();
  double s_cost = 0.0;
  Alpha maximizing_alpha = Alpha::zero();
  DistillableFormation initial_resources{0.0, 0.0};
  WorkQuantities work;
};

struct ReportOptions {
  TransformOptions scan;
  SplitRule split = SplitRule::bath1();
  bool signed_alpha = false;
  bool lp_cross_check = false;
};

TransformReport analyze_transformation(const Transformation& t,
                                       const ReportOptions& opts = {});

}  // namespace thermoforge
