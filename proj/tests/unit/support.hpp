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
#include <string>
#include <vector>

#include "thermoforge/spectra.hpp"

namespace testing {

inline bool near(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

inline std::string fixture(const std::string& name) {
  return std::string(THERMOFORGE_FIXTURE_DIR) + "/" + name;
}

// h1 = h2 = [0, 1], beta = (0.5, 1.0): the qubit pair used across the tests.
inline thermoforge::EngineSpec qubit_pair() {
  using thermoforge::EnergyLevels;
  return thermoforge::EngineSpec(EnergyLevels({0.0, 1.0}),
                                 EnergyLevels({0.0, 1.0}),
                                 thermoforge::BathPair(0.5, 1.0));
}

// Z1 Z2 of qubit_pair(), written out.
inline double qubit_pair_z() {
  return (1.0 + std::exp(-0.5)) * (1.0 + std::exp(-1.0));
}

}  // namespace testing
