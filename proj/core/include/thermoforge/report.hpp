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

// JSON and CSV rendering of reports. Numbers carry 12 significant digits;
// infinities are written as the strings "inf" / "-inf" and undefined values
// (NaN) as null in JSON and as empty cells in CSV.

#pragma once

#include <string>
#include <vector>

#include "thermoforge/asymmetry.hpp"
#include "thermoforge/engine.hpp"
#include "thermoforge/majorization.hpp"
#include "thermoforge/transforms.hpp"

namespace thermoforge {

// "%.12g" with "inf", "-inf" and "nan" spelled out.
std::string format_number(double x);

enum class Mode { kCatalytic, kNonCatalytic };

struct CheckSummary {
  bool feasible = false;
  std::string verdict;  // human-readable verdict line
};

// Verdict used by the check command: cSLTO (optionally signed) or SLTO.
CheckSummary summarize(const TransformReport& r, Mode mode);

std::string transform_report_json(const TransformReport& r, Mode mode,
                                  const std::vector<std::string>& notes);
std::string transform_report_csv(const TransformReport& r, Mode mode);

std::string engine_report_json(const EngineReport& r);
// Columns: alpha, w1, w2, w_ext, eta1, eta2.
std::string alpha_table_csv(const std::vector<AlphaWorkRow>& rows);

// Columns: x, y.
std::string lorenz_csv(const LorenzCurve& curve);

std::string asymmetry_json(const std::vector<AsymmetryRow>& rows);
// Columns: alpha, value, informational.
std::string asymmetry_csv(const std::vector<AsymmetryRow>& rows);

}  // namespace thermoforge
