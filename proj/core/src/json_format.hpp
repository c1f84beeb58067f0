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

// Internal helpers turning doubles into JSON values with 12 significant
// digits.

#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "thermoforge/alpha.hpp"
#include "thermoforge/report.hpp"

namespace thermoforge::detail {

inline nlohmann::json number_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  return std::strtod(format_number(x).c_str(), nullptr);
}

inline nlohmann::json alpha_json(const Alpha& a) { return number_json(a.value()); }

}  // namespace thermoforge::detail
