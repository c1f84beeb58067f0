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

// Asymmetry with respect to time translations generated by the weighted
// Hamiltonian: A_a(rho) = D_a(rho || dephased rho).

#pragma once

#include <optional>
#include <vector>

#include "thermoforge/alpha.hpp"
#include "thermoforge/numeric.hpp"
#include "thermoforge/spectra.hpp"

namespace thermoforge {

// Largest alpha for which the monotone is used in verdicts; larger values
// are computed but only informational.
inline constexpr double kAsymmetryAlphaCap = 2.0;

// Throws InputError for a < 0.
double asymmetry(const DenseState& rho, const EngineSpec& spec, Alpha a);

struct AsymmetryRow {
  Alpha alpha;
  double value;
  bool informational;  // alpha above kAsymmetryAlphaCap
};

struct AsymmetryReport {
  std::vector<AsymmetryRow> rows;
  DenseState dephased;
};

AsymmetryReport asymmetry_table(const DenseState& rho, const EngineSpec& spec,
                                std::span<const Alpha> grid);

// Necessary condition only: A_a(initial) >= A_a(final) - tol for all grid
// alphas up to kAsymmetryAlphaCap.
struct AsymmetryCheck {
  bool passes = false;
  std::optional<Alpha> violating_alpha;
  std::vector<AsymmetryRow> initial;
  std::vector<AsymmetryRow> final;
};

AsymmetryCheck asymmetry_necessary(const DenseState& initial,
                                   const EngineSpec& initial_spec,
                                   const DenseState& final,
                                   const EngineSpec& final_spec,
                                   int log_points = 120,
                                   double tol = tol::kFeasibilitySlack);

}  // namespace thermoforge
