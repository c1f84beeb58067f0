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

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace thermoforge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances shared across modules. Values are absolute unless noted.
namespace tol {
inline constexpr double kProbabilitySum = 1e-12;
inline constexpr double kDegeneracy = 1e-9;      // on dimensionless beta*E
inline constexpr double kBlockDiagonal = 1e-9;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kMajorization = 1e-10;
inline constexpr double kFeasibilitySlack = 1e-9;  // nats
inline constexpr double kLpResidual = 1e-9;
inline constexpr double kProduct = 1e-10;
}  // namespace tol

// log(0) = -inf instead of a pole error.
inline double safe_log(double x) noexcept {
  return x > 0.0 ? std::log(x) : -kInf;
}

// log(sum_i exp(x_i)); -inf entries are skipped, an empty or all -inf input
// gives -inf, any +inf entry gives +inf.
double log_sum_exp(std::span<const double> xs) noexcept;

// log(exp(a) + exp(b))
double log_add_exp(double a, double b) noexcept;

std::vector<double> logs_of(std::span<const double> p);

double sum(std::span<const double> xs) noexcept;

// Throws InputError when p has a negative/non-finite entry or does not sum to
// one within `tolerance`.
void require_distribution(std::span<const double> p, double tolerance,
                          const char* what);

// Outer product a (x) b in row-major (i, j) -> i * |b| + j order.
std::vector<double> kron(std::span<const double> a, std::span<const double> b);

}  // namespace thermoforge
