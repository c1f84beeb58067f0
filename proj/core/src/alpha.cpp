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

#include "thermoforge/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "thermoforge/error.hpp"
#include "thermoforge/numeric.hpp"

namespace thermoforge {

Alpha Alpha::of(double value) {
  if (std::isnan(value)) throw InputError("alpha must not be NaN");
  if (value == 0.0) return zero();
  if (value == 1.0) return one();
  if (value == kInf) return infinity();
  if (value == -kInf) return neg_infinity();
  return Alpha(Kind::Finite, value);
}

Alpha Alpha::infinity() { return Alpha(Kind::PosInfinity, kInf); }
Alpha Alpha::neg_infinity() { return Alpha(Kind::NegInfinity, -kInf); }

std::string Alpha::to_string() const {
  switch (kind_) {
    case Kind::NegInfinity:
      return "-inf";
    case Kind::PosInfinity:
      return "inf";
    case Kind::Zero:
      return "0";
    case Kind::One:
      return "1";
    case Kind::Finite:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

std::vector<Alpha> standard_alpha_grid(int log_points) {
  std::vector<Alpha> grid;
  grid.reserve(static_cast<std::size_t>(log_points) + 3);
  grid.push_back(Alpha::zero());
  const double lo = -3.0;
  const double hi = 3.0;
  for (int k = 0; k < log_points; ++k) {
    const double t =
        log_points == 1 ? lo : lo + (hi - lo) * k / (log_points - 1);
    grid.push_back(Alpha::of(std::pow(10.0, t)));
  }
  grid.push_back(Alpha::one());
  grid.push_back(Alpha::infinity());
  std::stable_sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Alpha> signed_alpha_grid(int log_points) {
  std::vector<Alpha> grid;
  grid.push_back(Alpha::neg_infinity());
  for (const Alpha& a : standard_alpha_grid(log_points)) {
    if (a.kind() == Alpha::Kind::Finite || a.kind() == Alpha::Kind::One) {
      grid.push_back(Alpha::of(-a.value()));
    }
  }
  for (const Alpha& a : standard_alpha_grid(log_points)) grid.push_back(a);
  std::stable_sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Alpha> grid_up_to(std::span<const Alpha> grid, double cap) {
  std::vector<Alpha> out;
  for (const Alpha& a : grid) {
    if (a.value() <= cap) out.push_back(a);
  }
  if (std::isfinite(cap) &&
      std::none_of(out.begin(), out.end(),
                   [cap](const Alpha& a) { return a.value() == cap; })) {
    out.push_back(Alpha::of(cap));
    std::stable_sort(out.begin(), out.end());
  }
  return out;
}

namespace {

bool better(double candidate, double incumbent, Sense sense) {
  if (std::isnan(candidate)) return false;
  if (std::isnan(incumbent)) return true;
  return sense == Sense::Minimize ? candidate < incumbent
                                  : candidate > incumbent;
}

// Golden-section search for the extremum of f over [lo, hi] (both finite, same
// sign or lo == 0). Works in log|alpha| when the bracket excludes zero.
Extremum golden(const std::function<double(Alpha)>& f, double lo, double hi,
                Sense sense, double rel_tol) {
  const bool use_log = lo != 0.0 && hi != 0.0 && (lo > 0.0) == (hi > 0.0);
  const double sign = lo < 0.0 || hi < 0.0 ? -1.0 : 1.0;
  auto to_alpha = [&](double u) {
    return use_log ? sign * std::exp(u) : u;
  };
  double a = use_log ? std::log(std::abs(lo)) : lo;
  double b = use_log ? std::log(std::abs(hi)) : hi;
  if (a > b) std::swap(a, b);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double u) {
    const double v = f(Alpha::of(to_alpha(u)));
    return sense == Sense::Minimize ? v : -v;
  };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < 200; ++it) {
    const double width = b - a;
    const double scale =
        use_log ? 1.0 : std::max(std::abs(a), std::abs(b));
    if (width <= rel_tol * scale) break;
    if (fc < fd || std::isnan(fd)) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  const double u = fc < fd ? c : d;
  const double v = std::min(fc, fd);
  const Alpha at = Alpha::of(to_alpha(u));
  return {sense == Sense::Minimize ? v : -v, at};
}

}  // namespace

Extremum scan_extremum(const std::function<double(Alpha)>& f,
                       std::span<const Alpha> grid, Sense sense,
                       double rel_tol) {
  if (grid.empty()) throw InputError("scan_extremum: empty alpha grid");
  std::vector<double> values(grid.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = f(grid[k]);
    if (k == 0 || better(values[k], values[best], sense)) best = k;
  }
  Extremum result{values[best], grid[best]};

  const Alpha& at = grid[best];
  const bool refinable = at.is_finite() && at.kind() != Alpha::Kind::Zero;
  if (!refinable) return result;

  double lo = at.value();
  double hi = at.value();
  if (best > 0 && grid[best - 1].is_finite()) lo = grid[best - 1].value();
  if (best + 1 < grid.size() && grid[best + 1].is_finite()) {
    hi = grid[best + 1].value();
  }
  // The refinement never crosses zero: the two branches are different
  // functions glued at a limit point.
  if (lo < 0.0 && at.value() > 0.0) lo = 0.0;
  if (hi > 0.0 && at.value() < 0.0) hi = 0.0;
  if (lo == hi) return result;

  const Extremum refined = golden(f, lo, hi, sense, rel_tol);
  if (better(refined.value, result.value, sense)) result = refined;
  return result;
}

}  // namespace thermoforge
