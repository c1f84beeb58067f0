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

#include "thermoforge/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"

namespace thermoforge {

bool majorizes(std::span<const double> p, std::span<const double> p2,
               double tol) {
  const std::size_t n = std::max(p.size(), p2.size());
  std::vector<double> a(p.begin(), p.end());
  std::vector<double> b(p2.begin(), p2.end());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb - tol) return false;
  }
  return std::abs(sa - sb) <= tol;
}

FineGrained fine_grain(std::span<const double> p,
                       std::span<const int> weights) {
  if (p.size() != weights.size()) {
    throw InputError("fine_grain: probabilities and multiplicities differ in length");
  }
  FineGrained out;
  out.weights.assign(weights.begin(), weights.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (weights[i] <= 0) {
      throw InputError("fine_grain: multiplicities must be positive");
    }
    out.gamma.insert(out.gamma.end(), static_cast<std::size_t>(weights[i]),
                     p[i] / weights[i]);
  }
  return out;
}

double LorenzCurve::operator()(double x) const {
  const auto it = std::upper_bound(
      points.begin(), points.end(), x,
      [](double v, const LorenzPoint& pt) { return v < pt.x; });
  if (it == points.begin()) return 0.0;
  if (it == points.end()) return points.back().y;
  const LorenzPoint& lo = *(it - 1);
  const LorenzPoint& hi = *it;
  return lo.y + (hi.y - lo.y) * (x - lo.x) / (hi.x - lo.x);
}

LorenzCurve lorenz_curve(std::span<const double> p,
                         std::span<const double> ref) {
  if (p.size() != ref.size()) {
    throw InputError("lorenz_curve: length mismatch");
  }
  std::vector<double> log_ratio(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (ref[i] < 0.0) throw InputError("lorenz_curve: negative reference weight");
    if (p[i] <= 0.0) {
      log_ratio[i] = -kInf;
    } else if (ref[i] == 0.0) {
      log_ratio[i] = kInf;
    } else {
      log_ratio[i] = std::log(p[i]) - std::log(ref[i]);
    }
  }
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return log_ratio[a] > log_ratio[b];
  });
  LorenzCurve curve;
  curve.points.reserve(p.size() + 1);
  curve.points.push_back({0.0, 0.0});
  double x = 0.0;
  double y = 0.0;
  for (std::size_t i : order) {
    x += ref[i];
    y += p[i];
    curve.points.push_back({x, y});
  }
  return curve;
}

LorenzCurve thermo_lorenz_curve(const BlockSpectrum& s, const EngineSpec& spec,
                                CurveConvention convention) {
  if (s.size() != spec.joint_dim()) {
    throw InputError("thermo_lorenz_curve: state does not match spec");
  }
  const double sign = convention == CurveConvention::kBoltzmann ? -1.0 : 1.0;
  std::vector<double> ref(spec.joint_dim());
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      ref[spec.index(i, j)] = std::exp(sign * spec.weighted_energy(i, j));
    }
  }
  return lorenz_curve(s.p(), ref);
}

bool curve_dominates(const LorenzCurve& a, const LorenzCurve& b, double tol) {
  for (const LorenzPoint& pt : b.points) {
    if (a(pt.x) < pt.y - tol) return false;
  }
  for (const LorenzPoint& pt : a.points) {
    if (pt.y < b(pt.x) - tol) return false;
  }
  return true;
}

bool thermo_majorizes(const BlockSpectrum& a, const BlockSpectrum& b,
                      const EngineSpec& spec, CurveConvention convention) {
  return curve_dominates(thermo_lorenz_curve(a, spec, convention),
                         thermo_lorenz_curve(b, spec, convention));
}

bool thermo_majorizes(const BlockSpectrum& a, const BlockSpectrum& b,
                      const EngineSpec& spec_a, const EngineSpec& spec_b) {
  if (!(spec_a == spec_b)) {
    throw InputError(
        "thermo_majorizes: specs differ; clock-extend the transformation first");
  }
  return thermo_majorizes(a, b, spec_a);
}

bool relatively_majorizes(std::span<const double> p, std::span<const double> q,
                          std::span<const double> p2,
                          std::span<const double> q2, double tol) {
  auto normalized = [](std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    const double total = sum(out);
    for (double& x : out) x /= total;
    return out;
  };
  const std::vector<double> nq = normalized(q);
  const std::vector<double> nq2 = normalized(q2);
  return curve_dominates(lorenz_curve(p, nq), lorenz_curve(p2, nq2), tol);
}

namespace {

bool full_rank(std::span<const double> p) {
  return std::all_of(p.begin(), p.end(), [](double x) { return x > 0.0; });
}

// H_a(p2) - H_a(p) with the infinite cases resolved so that -inf <= -inf.
double entropy_margin(std::span<const double> p, std::span<const double> p2,
                      Alpha a) {
  const double hp = renyi_entropy(p, a);
  const double hp2 = renyi_entropy(p2, a);
  if (hp == -kInf) return kInf;
  if (hp2 == -kInf) return -kInf;
  return hp2 - hp;
}

}  // namespace

TrampResult tramps(std::span<const double> p, std::span<const double> p2,
                   int log_points, double tol) {
  if (p.size() != p2.size()) throw InputError("tramps: length mismatch");
  const bool regularize = !full_rank(p2);
  std::vector<double> target(p2.begin(), p2.end());
  std::vector<Alpha> grid;
  if (regularize) {
    const double u = 1.0 / static_cast<double>(target.size());
    for (double& x : target) {
      x = (1.0 - kTrampRegularization) * x + kTrampRegularization * u;
    }
    grid = standard_alpha_grid(log_points);
  } else {
    grid = signed_alpha_grid(log_points);
  }
  const Extremum worst = scan_extremum(
      [&](Alpha a) { return entropy_margin(p, target, a); }, grid,
      Sense::Minimize);
  TrampResult result;
  if (worst.value >= -tol) {
    result.verdict = regularize ? TrampVerdict::kYesEpsilon : TrampVerdict::kYes;
  } else {
    result.verdict = TrampVerdict::kNo;
    result.violating_alpha = worst.alpha;
  }
  return result;
}

}  // namespace thermoforge
