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

#include "thermoforge/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "thermoforge/error.hpp"
#include "thermoforge/numeric.hpp"

namespace thermoforge {

namespace {

// Window around alpha = 1 where the expm1 form is used.
constexpr double kNearOne = 0.25;

void require_same_length(std::span<const double> p, std::span<const double> q,
                         const char* what) {
  if (p.size() != q.size()) {
    throw InputError(std::string(what) + ": length mismatch (" +
                     std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
}

double max_log_ratio(std::span<const double> p, std::span<const double> log_p,
                     std::span<const double> q,
                     std::span<const double> log_q) {
  double best = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    best = std::max(best, log_p[i] - log_q[i]);
  }
  return best;
}

}  // namespace

double renyi_entropy(std::span<const double> p, Alpha a) {
  if (p.empty()) throw InputError("renyi_entropy: empty distribution");
  switch (a.kind()) {
    case Alpha::Kind::Zero: {
      const auto rank = std::count_if(p.begin(), p.end(),
                                      [](double x) { return x > 0.0; });
      return std::log(static_cast<double>(rank));
    }
    case Alpha::Kind::One: {
      double h = 0.0;
      for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
      }
      return h;
    }
    case Alpha::Kind::PosInfinity:
      return -std::log(*std::max_element(p.begin(), p.end()));
    case Alpha::Kind::NegInfinity:
      return safe_log(*std::min_element(p.begin(), p.end()));
    case Alpha::Kind::Finite:
      break;
  }
  const double alpha = a.value();
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double x : p) {
    if (x > 0.0) {
      terms.push_back(alpha * std::log(x));
    } else if (alpha < 0.0) {
      // 0^alpha diverges for alpha < 0.
      return -kInf;
    }
  }
  const double lse = log_sum_exp(terms);
  return alpha > 0.0 ? lse / (1.0 - alpha) : -lse / (1.0 - alpha);
}

double renyi_relative_entropy_logs(std::span<const double> p,
                                   std::span<const double> log_p,
                                   std::span<const double> q,
                                   std::span<const double> log_q, Alpha a) {
  require_same_length(p, q, "renyi_relative_entropy");
  switch (a.kind()) {
    case Alpha::Kind::Zero: {
      double mass = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) mass += q[i];
      }
      return -safe_log(mass);
    }
    case Alpha::Kind::One: {
      double d = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return kInf;
        d += p[i] * (log_p[i] - log_q[i]);
      }
      return d;
    }
    case Alpha::Kind::PosInfinity:
      return max_log_ratio(p, log_p, q, log_q);
    case Alpha::Kind::NegInfinity:
      return max_log_ratio(q, log_q, p, log_p);
    case Alpha::Kind::Finite:
      break;
  }
  const double alpha = a.value();
  const double eps = alpha - 1.0;
  if (std::abs(eps) < kNearOne) {
    // log(sum p^a q^(1-a)) / (a - 1) cancels badly near a = 1; write the sum
    // as 1 + E_p[expm1(eps log(p/q))] instead, with p renormalized on its
    // support.
    double mass = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      mass += p[i];
      if (q[i] <= 0.0) {
        if (eps > 0.0) return kInf;
        s -= p[i];
        continue;
      }
      s += p[i] * std::expm1(eps * (log_p[i] - log_q[i]));
    }
    if (mass <= 0.0) return eps < 0.0 ? kInf : -kInf;
    return std::log1p(s / mass) / eps;
  }
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool p_zero = p[i] <= 0.0;
    const bool q_zero = q[i] <= 0.0;
    if (p_zero && q_zero) continue;
    if (alpha > 0.0) {
      if (p_zero) continue;
      if (q_zero) {
        if (alpha > 1.0) return kInf;
        continue;
      }
    } else {
      if (p_zero) return kInf;
      if (q_zero) continue;
    }
    terms.push_back(alpha * log_p[i] + (1.0 - alpha) * log_q[i]);
  }
  const double lse = log_sum_exp(terms);
  // sgn(alpha) / (alpha - 1)
  const double factor = (alpha > 0.0 ? 1.0 : -1.0) / (alpha - 1.0);
  if (lse == -kInf) return factor < 0.0 ? kInf : -kInf;
  return factor * lse;
}

double renyi_relative_entropy(std::span<const double> p,
                              std::span<const double> q, Alpha a) {
  require_same_length(p, q, "renyi_relative_entropy");
  const std::vector<double> log_p = logs_of(p);
  const std::vector<double> log_q = logs_of(q);
  return renyi_relative_entropy_logs(p, log_p, q, log_q, a);
}

double alpha_free_entropy(std::span<const double> p, const SemiGibbs& gibbs,
                          Alpha a) {
  const std::vector<double> log_p = logs_of(p);
  return renyi_relative_entropy_logs(p, log_p, gibbs.q, gibbs.log_q, a) -
         gibbs.log_z();
}

double alpha_free_entropy(const BlockSpectrum& s, const EngineSpec& spec,
                          Alpha a) {
  return alpha_free_entropy(s.p(), semi_gibbs(spec), a);
}

double local_free_entropy(std::span<const double> p, const EnergyLevels& h,
                          double beta, Alpha a) {
  if (p.size() != h.size()) {
    throw InputError("local_free_entropy: state and Hamiltonian sizes differ");
  }
  const LocalGibbs g = local_gibbs(h, beta);
  const std::vector<double> log_p = logs_of(p);
  return renyi_relative_entropy_logs(p, log_p, g.p, g.log_p, a) - g.log_z;
}

double helmholtz_free_entropy(const BlockSpectrum& s, const EngineSpec& spec) {
  double weighted = 0.0;
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      weighted += s[spec.index(i, j)] * spec.weighted_energy(i, j);
    }
  }
  return weighted - renyi_entropy(s.p(), Alpha::one());
}

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InputError("smoothing parameter must lie in (0, 1)");
  }
}

// Indices with q > 0 sorted by p/q descending (stable), plus the p-mass that
// sits where q vanishes.
std::vector<std::size_t> ratio_order(std::span<const double> p,
                                     std::span<const double> q,
                                     double& unsupported_mass) {
  unsupported_mass = 0.0;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      idx.push_back(i);
    } else {
      unsupported_mass += p[i];
    }
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return p[a] * q[b] > p[b] * q[a];
  });
  return idx;
}

}  // namespace

double smoothed_dmin(std::span<const double> p, std::span<const double> q,
                     double eps) {
  require_same_length(p, q, "smoothed_dmin");
  require_eps(eps);
  double unsupported = 0.0;
  const auto order = ratio_order(p, q, unsupported);
  // Indices where q vanishes cost nothing and are taken first.
  double mass_p = unsupported;
  double mass_q = 0.0;
  const double target = 1.0 - eps;
  for (std::size_t i : order) {
    if (mass_p >= target) break;
    mass_p += p[i];
    mass_q += q[i];
  }
  return -safe_log(mass_q);
}

double smoothed_dmax(std::span<const double> p, std::span<const double> q,
                     double eps) {
  require_same_length(p, q, "smoothed_dmax");
  require_eps(eps);
  double unsupported = 0.0;
  const auto order = ratio_order(p, q, unsupported);
  if (unsupported > eps) return kInf;
  const double budget = eps - unsupported;
  // g(lambda) = sum_i (p_i - lambda q_i)_+ is piecewise linear and decreasing;
  // on [r_{k+1}, r_k] it equals P_k - lambda Q_k over the first k+1 indices.
  double cum_p = 0.0;
  double cum_q = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum_p += p[order[k]];
    cum_q += q[order[k]];
    const double next_ratio =
        k + 1 < order.size() ? p[order[k + 1]] / q[order[k + 1]] : 0.0;
    if (cum_p - next_ratio * cum_q > budget) {
      return std::log((cum_p - budget) / cum_q);
    }
  }
  return -kInf;
}

}  // namespace thermoforge
