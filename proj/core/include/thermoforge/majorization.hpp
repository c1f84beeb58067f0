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

// Majorization, fine-graining, thermo-majorization Lorenz curves, tramping
// (catalytic majorization) and a linear-programming oracle for
// d-majorization that produces explicit stochastic-matrix witnesses.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "thermoforge/alpha.hpp"
#include "thermoforge/numeric.hpp"
#include "thermoforge/spectra.hpp"

namespace thermoforge {

// True iff the descending partial sums of p dominate those of p2 within
// `tol` and the totals agree within `tol`. The shorter vector is padded with
// zeros.
bool majorizes(std::span<const double> p, std::span<const double> p2,
               double tol = tol::kMajorization);

struct FineGrained {
  std::vector<double> gamma;
  std::vector<int> weights;
};

// Expands p_i into weights[i] equal entries p_i / weights[i].
FineGrained fine_grain(std::span<const double> p, std::span<const int> weights);

struct LorenzPoint {
  double x;
  double y;
};

// Piecewise-linear concave curve through `points`, starting at (0, 0).
struct LorenzCurve {
  std::vector<LorenzPoint> points;

  // Largest y attained at abscissa x; beyond the last point the final y.
  double operator()(double x) const;
  double x_end() const { return points.back().x; }
};

// Relative Lorenz curve of p against the reference weights `ref` (any
// positive scale): indices ordered by p_i / ref_i descending with stable ties,
// x = cumulative ref, y = cumulative p. Indices with ref_i = 0 come first.
LorenzCurve lorenz_curve(std::span<const double> p,
                         std::span<const double> ref);

// Which Gibbs weight sets the abscissa of a thermo-majorization curve.
// kBoltzmann is exp(-w); kInvertedSign uses exp(+w) and exists only so the
// verification harness can check that it detects a sign error.
enum class CurveConvention { kBoltzmann, kInvertedSign };

// Thermo-majorization curve of s: reference weights exp(-w_ij), so the curve
// ends at (Z1 Z2, 1).
LorenzCurve thermo_lorenz_curve(
    const BlockSpectrum& s, const EngineSpec& spec,
    CurveConvention convention = CurveConvention::kBoltzmann);

// a(x) >= b(x) - tol at every breakpoint of either curve.
bool curve_dominates(const LorenzCurve& a, const LorenzCurve& b,
                     double tol = tol::kMajorization);

// Lorenz dominance of a over b under one shared spec. The two-spec overload
// throws InputError when the specs differ; use clock_extend for Hamiltonian
// changes.
bool thermo_majorizes(const BlockSpectrum& a, const BlockSpectrum& b,
                      const EngineSpec& spec,
                      CurveConvention convention = CurveConvention::kBoltzmann);
bool thermo_majorizes(const BlockSpectrum& a, const BlockSpectrum& b,
                      const EngineSpec& spec_a, const EngineSpec& spec_b);

// Relative majorization (p, q) > (p2, q2) decided by Lorenz curves of each
// pair against its own reference, both normalised to unit total weight.
bool relatively_majorizes(std::span<const double> p, std::span<const double> q,
                          std::span<const double> p2,
                          std::span<const double> q2,
                          double tol = tol::kMajorization);

enum class LpStatus { kFeasible, kInfeasible, kUndecided };

struct StochasticWitness {
  Eigen::MatrixXd matrix;  // column-stochastic, maps p -> p2 and q -> q2
  double residual_p = 0.0;
  double residual_q = 0.0;
};

struct LpResult {
  LpStatus status = LpStatus::kUndecided;
  std::optional<StochasticWitness> witness;
  int iterations = 0;
};

inline constexpr std::size_t kLpDimensionCap = 64;
inline constexpr int kLpIterationCap = 50000;

// Feasibility of {L >= 0, 1^T L = 1^T, L p = p2, L q = q2} by a phase-1
// revised simplex (basis refactorised every pivot, Dantzig pricing with a
// switch to Bland's rule on stalling). Equalities hold to tol::kLpResidual on
// success; a witness with larger residuals is returned as kUndecided. Hitting
// `iteration_cap` also yields kUndecided, never kInfeasible.
LpResult d_majorize_lp(std::span<const double> p, std::span<const double> q,
                       std::span<const double> p2, std::span<const double> q2,
                       int iteration_cap = kLpIterationCap);

enum class TrampVerdict { kYes, kYesEpsilon, kNo };

struct TrampResult {
  TrampVerdict verdict = TrampVerdict::kNo;
  std::optional<Alpha> violating_alpha;  // set when verdict is kNo
};

inline constexpr double kTrampRegularization = 1e-9;

// Catalytic majorization of p2 by p, decided by H_a(p) <= H_a(p2) over the
// signed alpha grid. When p2 lacks full rank it is mixed with the uniform
// distribution (weight kTrampRegularization) and only a >= 0 is checked;
// success is then kYesEpsilon.
TrampResult tramps(std::span<const double> p, std::span<const double> p2,
                   int log_points = 120, double tol = tol::kMajorization);

}  // namespace thermoforge
