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

#include "thermoforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_format.hpp"

namespace thermoforge {

using nlohmann::json;
using detail::alpha_json;
using detail::number_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string cell(double x) { return std::isnan(x) ? "" : format_number(x); }

json optional_number(const std::optional<double>& x) {
  return x ? number_json(*x) : json(nullptr);
}

json optional_alpha(const std::optional<Alpha>& a) {
  return a ? alpha_json(*a) : json(nullptr);
}

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kFeasible:
      return "feasible";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUndecided:
      break;
  }
  return "undecided";
}

json work_json(const WorkSplit& w) {
  json j{{"split_rule", w.rule.name()},
         {"w1", number_json(w.w1)},
         {"w2", number_json(w.w2)},
         {"w_ext", number_json(w.w_ext)}};
  if (w.rule.kind == SplitKind::kUser) j["user_w1"] = number_json(w.rule.w1);
  if (w.warning) j["warning"] = *w.warning;
  return j;
}

json statement_json(const Statement& s) {
  return {{"holds", s.holds}, {"margin", number_json(s.margin)}};
}

}  // namespace

CheckSummary summarize(const TransformReport& r, Mode mode) {
  CheckSummary s;
  if (mode == Mode::kNonCatalytic) {
    s.feasible = r.feasible_slto;
    s.verdict = s.feasible ? "feasible" : "infeasible";
    return s;
  }
  const Feasibility& f = r.signed_cslto ? r.signed_cslto->result : r.cslto;
  s.feasible = f.feasible;
  if (!f.feasible) {
    s.verdict = "infeasible";
  } else if (f.marginal) {
    s.verdict = "catalyst-assisted feasible (marginal)";
  } else {
    s.verdict = "catalyst-assisted feasible";
  }
  return s;
}

std::string transform_report_json(const TransformReport& r, Mode mode,
                                  const std::vector<std::string>& notes) {
  const CheckSummary s = summarize(r, mode);
  json j;
  j["mode"] = mode == Mode::kCatalytic ? "catalytic" : "non-catalytic";
  j["feasible"] = s.feasible;
  j["verdict"] = s.verdict;
  j["feasible_cslto"] = r.cslto.feasible;
  j["marginal"] = r.cslto.marginal;
  j["violating_alpha"] = optional_alpha(r.cslto.violating_alpha);
  if (r.signed_cslto) {
    j["signed_alpha"] = {
        {"feasible", r.signed_cslto->result.feasible},
        {"deferred_to_nonnegative", r.signed_cslto->deferred},
        {"margin", number_json(r.signed_cslto->result.margin)},
        {"violating_alpha",
         optional_alpha(r.signed_cslto->result.violating_alpha)}};
  }
  j["feasible_slto"] = r.feasible_slto;
  if (r.lp_status) j["lp_status"] = lp_status_name(*r.lp_status);
  j["s_distance"] = number_json(r.s_distance);
  j["minimizing_alpha"] = alpha_json(r.minimizing_alpha);
  j["s_cost"] = number_json(r.s_cost);
  j["maximizing_alpha"] = alpha_json(r.maximizing_alpha);
  j["distillable"] = number_json(r.initial_resources.distillable);
  j["formation"] = number_json(r.initial_resources.formation);
  j["work"] = work_json(r.work.extract);
  j["cost"] = work_json(r.work.cost);
  j["w_cost"] = number_json(r.work.w_cost);
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::string transform_report_csv(const TransformReport& r, Mode mode) {
  const CheckSummary s = summarize(r, mode);
  std::ostringstream out;
  out << "feasible,feasible_cslto,feasible_slto,violating_alpha,s_distance,"
         "minimizing_alpha,s_cost,maximizing_alpha,distillable,formation,"
         "split_rule,w1,w2,w_ext,w_cost\n";
  out << (s.feasible ? "true" : "false") << ','
      << (r.cslto.feasible ? "true" : "false") << ','
      << (r.feasible_slto ? "true" : "false") << ','
      << (r.cslto.violating_alpha ? r.cslto.violating_alpha->to_string() : "")
      << ',' << cell(r.s_distance) << ',' << r.minimizing_alpha.to_string()
      << ',' << cell(r.s_cost) << ',' << r.maximizing_alpha.to_string() << ','
      << cell(r.initial_resources.distillable) << ','
      << cell(r.initial_resources.formation) << ','
      << r.work.extract.rule.name() << ',' << cell(r.work.extract.w1) << ','
      << cell(r.work.extract.w2) << ',' << cell(r.work.extract.w_ext) << ','
      << cell(r.work.w_cost) << '\n';
  return out.str();
}

std::string engine_report_json(const EngineReport& r) {
  json j;
  j["product"] = r.product;
  j["spontaneous"] = r.spontaneity.spontaneous;
  j["budget"] = number_json(r.spontaneity.budget);
  j["budget_alpha"] = alpha_json(r.spontaneity.budget_alpha);
  j["budget_sup"] = number_json(r.spontaneity.budget_sup);
  j["split"] = {{"rule", r.split.rule},
                {"w1", number_json(r.split.w1)},
                {"w2", number_json(r.split.w2)}};
  const Statements& s = r.statements;
  j["statements"] = {{"evaluable", s.evaluable},
                     {"note", s.note},
                     {"w1", number_json(s.w1)},
                     {"w2", number_json(s.w2)},
                     {"w_ext", number_json(s.w_ext)},
                     {"eta1", optional_number(s.eta1)},
                     {"eta2", optional_number(s.eta2)},
                     {"carnot_floor1", number_json(s.carnot_floor1)},
                     {"carnot_floor2", number_json(s.carnot_floor2)},
                     {"clausius", statement_json(s.clausius)},
                     {"kelvin_planck", statement_json(s.kelvin_planck)},
                     {"carnot1", statement_json(s.carnot1)},
                     {"carnot2", statement_json(s.carnot2)}};
  json rows = json::array();
  for (const AlphaWorkRow& row : r.alpha_works) {
    rows.push_back({{"alpha", alpha_json(row.alpha)},
                    {"w1", number_json(row.w1)},
                    {"w2", number_json(row.w2)},
                    {"w_ext", number_json(row.w_ext)},
                    {"eta1", number_json(row.eta1)},
                    {"eta2", number_json(row.eta2)}});
  }
  j["alpha_works"] = std::move(rows);
  if (r.local_to) {
    const LocalToComparison& c = *r.local_to;
    j["local_to"] = {{"w1", number_json(c.w1)},
                     {"w2", number_json(c.w2)},
                     {"w_ext", number_json(c.w_ext)},
                     {"w1_alpha", alpha_json(c.w1_alpha)},
                     {"w2_alpha", alpha_json(c.w2_alpha)},
                     {"eta1", optional_number(c.eta1)},
                     {"eta2", optional_number(c.eta2)},
                     {"matched_eta1", optional_number(c.matched_eta1)},
                     {"matched_eta2", optional_number(c.matched_eta2)}};
  } else {
    j["local_to"] = nullptr;
  }
  j["refrigeration"] = {{"budget", number_json(r.refrigeration.budget)},
                        {"w1", number_json(r.refrigeration.w1)},
                        {"w2", number_json(r.refrigeration.w2)},
                        {"cost", number_json(r.refrigeration.cost)}};
  j["heat"] = {{"q1", number_json(r.heat.q1)},
               {"q2", number_json(r.heat.q2)},
               {"de1", number_json(r.heat.de1)},
               {"de2", number_json(r.heat.de2)},
               {"weighted", number_json(r.heat.weighted)}};
  if (r.correlation) {
    j["correlation"] = {
        {"feasible", r.correlation->feasibility.feasible},
        {"budget", number_json(r.correlation->budget)},
        {"budget_alpha", alpha_json(r.correlation->budget_alpha)},
        {"mutual_information", number_json(r.correlation->mutual_information)}};
  } else {
    j["correlation"] = nullptr;
  }
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string alpha_table_csv(const std::vector<AlphaWorkRow>& rows) {
  std::ostringstream out;
  out << "alpha,w1,w2,w_ext,eta1,eta2\n";
  for (const AlphaWorkRow& r : rows) {
    out << r.alpha.to_string() << ',' << cell(r.w1) << ',' << cell(r.w2) << ','
        << cell(r.w_ext) << ',' << cell(r.eta1) << ',' << cell(r.eta2) << '\n';
  }
  return out.str();
}

std::string lorenz_csv(const LorenzCurve& curve) {
  std::ostringstream out;
  out << "x,y\n";
  for (const LorenzPoint& pt : curve.points) {
    out << format_number(pt.x) << ',' << format_number(pt.y) << '\n';
  }
  return out.str();
}

std::string asymmetry_json(const std::vector<AsymmetryRow>& rows) {
  json arr = json::array();
  for (const AsymmetryRow& r : rows) {
    arr.push_back({{"alpha", alpha_json(r.alpha)},
                   {"value", number_json(r.value)},
                   {"informational", r.informational}});
  }
  return json{{"asymmetry", std::move(arr)}}.dump(2) + "\n";
}

std::string asymmetry_csv(const std::vector<AsymmetryRow>& rows) {
  std::ostringstream out;
  out << "alpha,value,informational\n";
  for (const AsymmetryRow& r : rows) {
    out << r.alpha.to_string() << ',' << cell(r.value) << ','
        << (r.informational ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace thermoforge
