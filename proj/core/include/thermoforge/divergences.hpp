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

// Renyi entropies and divergences. All quantities are in nats.
//
// Zero conventions: 0/0 = 0 and x/0 = +inf for x > 0. Results may be +-inf;
// infinities are values, not errors.

#pragma once

#include <span>

#include "thermoforge/alpha.hpp"
#include "thermoforge/spectra.hpp"

namespace thermoforge {

// H_a(p) = sgn(a)/(1-a) log sum_i p_i^a with the limits
//   H_-inf = log p_min, H_0 = log rank, H_1 = Shannon, H_inf = -log p_max.
// For a < 0 and a zero entry the value is the limit -inf.
double renyi_entropy(std::span<const double> p, Alpha a);

// D_a(p||q) = sgn(a)/(a-1) log sum_i p_i^a q_i^(1-a), with the limits
//   D_inf = log max p/q, D_-inf = D_inf(q||p),
//   D_0 = -log sum_{p_i>0} q_i, D_1 = sum p_i (log p_i - log q_i).
double renyi_relative_entropy(std::span<const double> p,
                              std::span<const double> q, Alpha a);

// Same as above with precomputed natural logs of p and q (may contain -inf).
double renyi_relative_entropy_logs(std::span<const double> p,
                                   std::span<const double> log_p,
                                   std::span<const double> q,
                                   std::span<const double> log_q, Alpha a);

// S_a = D_a(p || semi-Gibbs) - log Z1 Z2.
double alpha_free_entropy(const BlockSpectrum& s, const EngineSpec& spec,
                          Alpha a);
double alpha_free_entropy(std::span<const double> p, const SemiGibbs& gibbs,
                          Alpha a);

// Single-subsystem version: D_a(p || gamma_beta(h)) - log Z.
double local_free_entropy(std::span<const double> p, const EnergyLevels& h,
                          double beta, Alpha a);

// beta1 <E1> + beta2 <E2> - H_1(p).
double helmholtz_free_entropy(const BlockSpectrum& s, const EngineSpec& spec);

// -log min{ q(S) : p(S) >= 1 - eps }, with S grown greedily in descending
// p_i/q_i order. eps must lie in (0, 1).
double smoothed_dmin(std::span<const double> p, std::span<const double> q,
                     double eps);

// log of the smallest lambda with sum_i (p_i - lambda q_i)_+ <= eps, i.e. the
// max-divergence of the best sub-normalised p' obtained by removing at most
// eps of mass from p. eps must lie in (0, 1).
double smoothed_dmax(std::span<const double> p, std::span<const double> q,
                     double eps);

// Quantum Renyi divergence: Petz form for a in [0, 1), von Neumann relative
// entropy at a = 1, sandwiched form for a > 1 (and its max-divergence limit
// at +inf). Requires a >= 0. Support violations with a >= 1 give +inf.
double quantum_renyi_divergence(const DenseState& rho, const DenseState& sigma,
                                Alpha a);

}  // namespace thermoforge
