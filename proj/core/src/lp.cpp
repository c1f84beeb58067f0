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

// Phase-1 revised simplex for the d-majorization feasibility LP. The basis is
// refactorized from the original constraint data at every iteration, so no
// rounding accumulates across pivots.

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thermoforge/error.hpp"
#include "thermoforge/majorization.hpp"

namespace thermoforge {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kRatioEps = 1e-12;
constexpr double kReducedCostEps = 1e-11;

using Index = Eigen::Index;

void require_lp_input(std::span<const double> v, const char* what,
                      bool positive) {
  if (v.empty() || v.size() > kLpDimensionCap) {
    throw InputError(std::string("d_majorize_lp: ") + what +
                     " length must be in [1, " +
                     std::to_string(kLpDimensionCap) + "]");
  }
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0 || (positive && x <= 0.0)) {
      throw InputError(std::string("d_majorize_lp: ") + what +
                       (positive ? " must be strictly positive"
                                 : " must be nonnegative"));
    }
  }
}

Index idx(std::size_t i) { return static_cast<Index>(i); }

}  // namespace

LpResult d_majorize_lp(std::span<const double> p, std::span<const double> q,
                       std::span<const double> p2, std::span<const double> q2,
                       int iteration_cap) {
  require_lp_input(p, "p", false);
  require_lp_input(q, "q", true);
  require_lp_input(p2, "p2", false);
  require_lp_input(q2, "q2", true);
  if (p.size() != q.size() || p2.size() != q2.size()) {
    throw InputError("d_majorize_lp: p/q or p2/q2 lengths differ");
  }
  const std::size_t n = p.size();
  const std::size_t n2 = p2.size();
  const std::size_t structural = n * n2;  // L(k, i) at k * n + i
  const std::size_t m = n + 2 * n2;
  const std::size_t cols = structural + m;  // artificials last

  // Rows: column sums, then L p = p2, then L q = q2.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(idx(m), idx(cols));
  Eigen::VectorXd b(idx(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n2; ++k) a(idx(i), idx(k * n + i)) = 1.0;
    b(idx(i)) = 1.0;
  }
  for (std::size_t k = 0; k < n2; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      a(idx(n + k), idx(k * n + i)) = p[i];
      a(idx(n + n2 + k), idx(k * n + i)) = q[i];
    }
    b(idx(n + k)) = p2[k];
    b(idx(n + n2 + k)) = q2[k];
  }
  for (std::size_t r = 0; r < m; ++r) a(idx(r), idx(structural + r)) = 1.0;

  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = structural + r;
  auto cost = [&](std::size_t c) { return c >= structural ? 1.0 : 0.0; };

  LpResult result;
  Eigen::MatrixXd bmat(idx(m), idx(m));
  Eigen::VectorXd x_basis;
  bool optimal = false;
  int degenerate_run = 0;
  for (;; ++result.iterations) {
    for (std::size_t r = 0; r < m; ++r) bmat.col(idx(r)) = a.col(idx(basis[r]));
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    x_basis = lu.solve(b).cwiseMax(0.0);
    if (!x_basis.allFinite() || result.iterations >= iteration_cap) break;
    Eigen::VectorXd c_basis(idx(m));
    for (std::size_t r = 0; r < m; ++r) c_basis(idx(r)) = cost(basis[r]);
    const Eigen::VectorXd y = lu.transpose().solve(c_basis);
    // Dantzig pricing; Bland's rule while the objective stalls, which rules
    // out cycling.
    const bool bland = degenerate_run > static_cast<int>(2 * m);
    std::size_t enter = cols;
    double most_negative = -kReducedCostEps;
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = cost(c) - y.dot(a.col(idx(c)));
      if (d < most_negative) {
        enter = c;
        most_negative = d;
        if (bland) break;
      }
    }
    if (enter == cols) {
      optimal = true;
      break;
    }
    const Eigen::VectorXd dir = lu.solve(a.col(idx(enter)));
    const double pivot_floor = kPivotEps * std::max(1.0, dir.cwiseAbs().maxCoeff());
    double best = kInf;
    for (std::size_t r = 0; r < m; ++r) {
      if (dir(idx(r)) > pivot_floor) best = std::min(best, x_basis(idx(r)) / dir(idx(r)));
    }
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      const double d = dir(idx(r));
      if (d <= pivot_floor || x_basis(idx(r)) / d > best + kRatioEps) continue;
      // Among ties: lowest basis index under Bland, else the largest pivot.
      if (leave == m || (bland ? basis[r] < basis[leave] : d > dir(idx(leave)))) {
        leave = r;
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for phase 1
    degenerate_run = best * most_negative > -kReducedCostEps * kRatioEps
                         ? degenerate_run + 1
                         : 0;
    basis[leave] = enter;
  }
  if (!optimal) {
    result.status = LpStatus::kUndecided;
    return result;
  }
  double infeasibility = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= structural) infeasibility += x_basis(idx(r));
  }
  if (!std::isfinite(infeasibility)) {
    result.status = LpStatus::kUndecided;
    return result;
  }
  if (infeasibility > tol::kLpResidual) {
    result.status = LpStatus::kInfeasible;
    return result;
  }

  StochasticWitness w;
  w.matrix = Eigen::MatrixXd::Zero(idx(n2), idx(n));
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= structural) continue;
    w.matrix(idx(basis[r] / n), idx(basis[r] % n)) = x_basis(idx(r));
  }
  const Eigen::Map<const Eigen::VectorXd> vp(p.data(), idx(n));
  const Eigen::Map<const Eigen::VectorXd> vq(q.data(), idx(n));
  const Eigen::Map<const Eigen::VectorXd> vp2(p2.data(), idx(n2));
  const Eigen::Map<const Eigen::VectorXd> vq2(q2.data(), idx(n2));
  w.residual_p = (w.matrix * vp - vp2).cwiseAbs().maxCoeff();
  w.residual_q = (w.matrix * vq - vq2).cwiseAbs().maxCoeff();
  const double column_error =
      (w.matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
  result.status =
      std::max({w.residual_p, w.residual_q, column_error}) <= tol::kLpResidual
          ? LpStatus::kFeasible
          : LpStatus::kUndecided;
  result.witness = std::move(w);
  return result;
}

}  // namespace thermoforge
