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

#include "thermoforge/numeric.hpp"

#include <algorithm>
#include <string>

#include "thermoforge/error.hpp"

namespace thermoforge {

double log_sum_exp(std::span<const double> xs) noexcept {
  double top = -kInf;
  for (double x : xs) top = std::max(top, x);
  if (top == -kInf || top == kInf) return top;
  double acc = 0.0;
  for (double x : xs) {
    if (x != -kInf) acc += std::exp(x - top);
  }
  return top + std::log(acc);
}

double log_add_exp(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

std::vector<double> logs_of(std::span<const double> p) {
  std::vector<double> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(),
                 [](double x) { return safe_log(x); });
  return out;
}

double sum(std::span<const double> xs) noexcept {
  // Neumaier summation; probability vectors are short but checked at 1e-12.
  double s = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  return s + c;
}

void require_distribution(std::span<const double> p, double tolerance,
                          const char* what) {
  if (p.empty()) throw InputError(std::string(what) + ": empty distribution");
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InputError(std::string(what) +
                       ": entries must be finite and non-negative");
    }
  }
  const double total = sum(p);
  if (std::abs(total - 1.0) > tolerance) {
    throw InputError(std::string(what) + ": entries sum to " +
                     std::to_string(total) + ", expected 1");
  }
}

std::vector<double> kron(std::span<const double> a,
                         std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a) {
    for (double y : b) out.push_back(x * y);
  }
  return out;
}

}  // namespace thermoforge
