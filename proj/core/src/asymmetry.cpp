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

#include "thermoforge/asymmetry.hpp"

#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"

namespace thermoforge {

namespace {

void require_dim(const DenseState& rho, const EngineSpec& spec) {
  if (rho.dim() != spec.joint_dim()) {
    throw InputError("state dimension does not match the spec");
  }
}

std::vector<AsymmetryRow> rows_for(const DenseState& rho,
                                   const DenseState& dephased,
                                   std::span<const Alpha> grid) {
  std::vector<AsymmetryRow> rows;
  rows.reserve(grid.size());
  for (const Alpha& a : grid) {
    // Clip tiny negative values produced by rounding.
    const double v = std::max(0.0, quantum_renyi_divergence(rho, dephased, a));
    rows.push_back({a, v, a.value() > kAsymmetryAlphaCap});
  }
  return rows;
}

}  // namespace

double asymmetry(const DenseState& rho, const EngineSpec& spec, Alpha a) {
  require_dim(rho, spec);
  if (!a.is_nonnegative()) throw InputError("asymmetry requires alpha >= 0");
  const DenseState dephased = block_dephase(rho, weighted_spectrum(spec));
  return std::max(0.0, quantum_renyi_divergence(rho, dephased, a));
}

AsymmetryReport asymmetry_table(const DenseState& rho, const EngineSpec& spec,
                                std::span<const Alpha> grid) {
  require_dim(rho, spec);
  for (const Alpha& a : grid) {
    if (!a.is_nonnegative()) throw InputError("asymmetry requires alpha >= 0");
  }
  DenseState dephased = block_dephase(rho, weighted_spectrum(spec));
  std::vector<AsymmetryRow> rows = rows_for(rho, dephased, grid);
  return {std::move(rows), std::move(dephased)};
}

AsymmetryCheck asymmetry_necessary(const DenseState& initial,
                                   const EngineSpec& initial_spec,
                                   const DenseState& final,
                                   const EngineSpec& final_spec,
                                   int log_points, double tol) {
  const std::vector<Alpha> full = standard_alpha_grid(log_points);
  const std::vector<Alpha> grid = grid_up_to(full, kAsymmetryAlphaCap);
  AsymmetryCheck check;
  check.initial = asymmetry_table(initial, initial_spec, grid).rows;
  check.final = asymmetry_table(final, final_spec, grid).rows;
  check.passes = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double margin = check.initial[k].value - check.final[k].value;
    if (margin < -tol && margin < worst) {
      worst = margin;
      check.passes = false;
      check.violating_alpha = grid[k];
    }
  }
  return check;
}

}  // namespace thermoforge
