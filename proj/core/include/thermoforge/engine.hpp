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

// One-step heat engine: the working system S1 S2 is swapped between the hot
// bath (beta1) and the cold bath (beta2) together with its Hamiltonians.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermoforge/alpha.hpp"
#include "thermoforge/spectra.hpp"
#include "thermoforge/transforms.hpp"

namespace thermoforge {

// (H1, H2) -> (H2, H1) with the same baths.
EngineSpec swapped_spec(const EngineSpec& spec);

// p'_{ji} = p_{ij} on the swapped spec.
BlockSpectrum swap_state(const BlockSpectrum& s, const EngineSpec& spec);

struct EngineCycle {
  EngineSpec spec;
  BlockSpectrum state;
  Transformation transformation;  // state -> SWAP(state), H1' = H2, H2' = H1
};

// Throws InputError unless beta1 < beta2.
EngineCycle one_step_cycle(const BlockSpectrum& state, const EngineSpec& spec);

// Joint equals the outer product of its marginals within `tol`.
bool is_product(const BlockSpectrum& s, const EngineSpec& spec,
                double tol = tol::kProduct);

struct Spontaneity {
  bool spontaneous = false;
  double budget = 0.0;  // inf over alpha of the free-entropy drop
  Alpha budget_alpha = Alpha::zero();
  double budget_sup = 0.0;
};

Spontaneity engine_spontaneous(const EngineCycle& cycle,
                               const TransformOptions& opts = {},
                               bool catalytic = true);

// Per-bath alpha-works of a product working state rho (x) sigma:
//   beta1 W1 = S_a(rho; beta1, H1) - S_a(sigma; beta1, H2)
//   beta2 W2 = S_a(sigma; beta2, H2) - S_a(rho; beta2, H1)
// Efficiencies are NaN where undefined.
struct AlphaWorkRow {
  Alpha alpha;
  double w1;
  double w2;
  double w_ext;
  double eta1;  // w_ext / w1
  double eta2;  // w_ext / |w2|
};

AlphaWorkRow alpha_work(const EngineCycle& cycle, Alpha a);
// Throws InputError if the state is not a product.
std::vector<AlphaWorkRow> alpha_works(const EngineCycle& cycle,
                                      std::span<const Alpha> grid);

// The same works under local thermal operations on each bath separately:
// W1bar = inf_a W1^(a), W2bar = inf_a W2^(a). The SLTO efficiencies on the
// matched split (W1 = W1bar, saturated budget) are reported next to them.
struct LocalToComparison {
  double w1;
  double w2;
  double w_ext;
  Alpha w1_alpha = Alpha::zero();
  Alpha w2_alpha = Alpha::zero();
  std::optional<double> eta1;  // empty when W1bar <= 0
  std::optional<double> eta2;  // empty when W2bar >= 0
  std::optional<double> matched_eta1;
  std::optional<double> matched_eta2;
};

LocalToComparison local_to_comparison(const EngineCycle& cycle, double budget,
                                      const TransformOptions& opts = {});

enum class EngineSplitKind { kAuto, kAlphaOne, kBath1, kBath2, kUser };

struct EngineSplit {
  EngineSplitKind kind = EngineSplitKind::kAuto;
  double w1 = 0.0;  // kUser only
  std::string name() const;
};

// W1 chosen by the rule; W2 saturates beta1 W1 + beta2 W2 = budget.
// kAuto: alpha = 1 value of W1 for product states, 2 budget / beta1 otherwise.
struct ResolvedSplit {
  double w1;
  double w2;
  std::string rule;
};

ResolvedSplit resolve_split(const EngineCycle& cycle, double budget,
                            const EngineSplit& split);

struct Statement {
  bool holds = false;
  double margin = 0.0;
};

struct Statements {
  bool evaluable = false;
  std::string note;
  double w1 = 0.0;
  double w2 = 0.0;
  double w_ext = 0.0;
  std::optional<double> eta1;
  std::optional<double> eta2;
  double carnot_floor1 = 0.0;  // 1 - beta1 / beta2
  double carnot_floor2 = 0.0;  // beta2 / beta1 - 1
  Statement clausius;          // W1 + W2 > 0
  Statement kelvin_planck;     // W_ext < W1
  Statement carnot1;           // eta1 >= 1 - beta1 / beta2
  Statement carnot2;           // eta2 >= beta2 / beta1 - 1
};

Statements statements_report(const EngineCycle& cycle, double budget,
                             const ResolvedSplit& split,
                             double tol = tol::kFeasibilitySlack);

struct Refrigeration {
  double budget;  // -sup_a drop <= 0
  double w1;
  double w2;
  double cost;    // |w1| - w2
};

Refrigeration refrigeration_cost(const EngineCycle& cycle, double budget_sup,
                                 const EngineSplit& split,
                                 const ResolvedSplit& forward);

// Q_x = dE_x + W_x is the heat absorbed by subsystem x, with dE_x the change
// of its mean energy and W_x the work it delivers.
struct HeatReport {
  double q1;
  double q2;
  double de1;
  double de2;
  double weighted;  // beta1 Q1 + beta2 Q2
};

HeatReport heat_report(const EngineCycle& cycle, double w1, double w2);

// tau_AB -> tau_A (x) tau_B under one spec with H1 = H2.
struct CorrelationEngine {
  Feasibility feasibility;
  double budget = 0.0;
  Alpha budget_alpha = Alpha::zero();
  double mutual_information = 0.0;  // drop at alpha = 1
};

CorrelationEngine correlation_engine(const BlockSpectrum& tau,
                                     const EngineSpec& spec,
                                     const TransformOptions& opts = {});

struct EngineOptions {
  TransformOptions scan;
  bool catalytic = true;
  EngineSplit split;
};

struct EngineReport {
  bool product = false;
  Spontaneity spontaneity;
  ResolvedSplit split{0.0, 0.0, ""};
  Statements statements;
  std::vector<AlphaWorkRow> alpha_works;
  std::optional<LocalToComparison> local_to;
  Refrigeration refrigeration{0.0, 0.0, 0.0, 0.0};
  HeatReport heat{0.0, 0.0, 0.0, 0.0, 0.0};
  std::optional<CorrelationEngine> correlation;
  std::vector<std::string> notes;
};

EngineReport analyze_engine(const BlockSpectrum& state, const EngineSpec& spec,
                            const EngineOptions& opts = {});

}  // namespace thermoforge
