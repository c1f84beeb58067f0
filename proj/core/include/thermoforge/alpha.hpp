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

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace thermoforge {

// A point of the extended Renyi order parameter alpha in [-inf, +inf]. The
// limit points 0, 1 and +-inf carry exact tags so that divergences dispatch to
// their closed-form limits instead of evaluating the generic formula.
class Alpha {
 public:
  enum class Kind { NegInfinity, Zero, One, PosInfinity, Finite };

  // Maps 0, 1, +-inf onto their tags; any other finite value becomes Finite.
  // Throws InputError on NaN.
  static Alpha of(double value);
  static Alpha zero() { return Alpha(Kind::Zero, 0.0); }
  static Alpha one() { return Alpha(Kind::One, 1.0); }
  static Alpha infinity();
  static Alpha neg_infinity();

  Kind kind() const noexcept { return kind_; }
  // Numeric value, +-inf for the infinite tags.
  double value() const noexcept { return value_; }
  bool is_finite() const noexcept {
    return kind_ != Kind::PosInfinity && kind_ != Kind::NegInfinity;
  }
  bool is_nonnegative() const noexcept { return value_ >= 0.0; }

  std::string to_string() const;

  friend bool operator==(const Alpha& a, const Alpha& b) noexcept {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  friend bool operator<(const Alpha& a, const Alpha& b) noexcept {
    return a.value_ < b.value_;
  }

 private:
  Alpha(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

// {0} U {log_points log-spaced in [1e-3, 1e3]} U {1} U {+inf}, ascending.
std::vector<Alpha> standard_alpha_grid(int log_points = 120);

// The mirrored negative branch {-inf} U {-1e3 .. -1e-3} followed by the
// standard grid. Used only by the signed second-law variant.
std::vector<Alpha> signed_alpha_grid(int log_points = 120);

// Grid points with alpha <= cap (the cap itself is included when finite).
std::vector<Alpha> grid_up_to(std::span<const Alpha> grid, double cap);

enum class Sense { Minimize, Maximize };

struct Extremum {
  double value;
  Alpha alpha;
};

// Extremum of f over the grid, refined by golden-section search inside the
// bracket formed by the neighbours of the best finite grid point until the
// bracket is narrower than rel_tol (relative in alpha). The limit points 0 and
// +-inf are evaluated exactly and never refined. The grid must be sorted.
Extremum scan_extremum(const std::function<double(Alpha)>& f,
                       std::span<const Alpha> grid, Sense sense,
                       double rel_tol = 1e-6);

}  // namespace thermoforge
