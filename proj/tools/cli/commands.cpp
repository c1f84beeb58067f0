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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermoforge/asymmetry.hpp"
#include "thermoforge/engine.hpp"
#include "thermoforge/error.hpp"
#include "thermoforge/instance.hpp"
#include "thermoforge/majorization.hpp"
#include "thermoforge/report.hpp"
#include "thermoforge/transforms.hpp"
#include "thermoforge/veribench.hpp"

namespace thermoforge::cli {

namespace {

struct Common {
  std::string file;
  std::string format = "json";
  int alpha_grid = 120;
  std::optional<double> tol;
};

struct CheckFlags {
  bool catalytic = true;
  bool signed_alpha = false;
  bool lp = false;
};

struct EngineFlags {
  bool catalytic = true;
  std::string split = "auto";
  bool table = false;
};

struct BenchFlags {
  std::uint64_t seed = 42;
  int trials = 0;
  std::vector<std::string> suites;
  bool mutate_curve = false;
};

double default_tolerance() {
  const char* env = std::getenv("THERMOFORGE_TOL");
  if (env == nullptr || *env == '\0') return tol::kFeasibilitySlack;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !std::isfinite(v) || v < 0.0) {
    throw InputError("THERMOFORGE_TOL", "expected a nonnegative number");
  }
  return v;
}

TransformOptions scan_options(const Common& c) {
  if (c.alpha_grid < 2) {
    throw InputError("--alpha-grid", "needs at least 2 points");
  }
  const double t = c.tol ? *c.tol : default_tolerance();
  if (!std::isfinite(t) || t < 0.0) {
    throw InputError("--tol", "expected a nonnegative number");
  }
  return {c.alpha_grid, t};
}

void require_format(const Common& c) {
  if (c.format != "json" && c.format != "csv") {
    throw InputError("--format", "expected json or csv");
  }
}

BlockSpectrum block_with_note(const StateInput& s, const EngineSpec& spec,
                              const char* which,
                              std::vector<std::string>& notes) {
  const double c = s.coherence(spec);
  if (c > tol::kBlockDiagonal) {
    notes.push_back(std::string(which) + " state has inter-block coherence " +
                    format_number(c) +
                    "; it was dephased and only its block spectrum is analysed");
  }
  return s.block(spec);
}

int cmd_check(const Common& c, const CheckFlags& f, std::ostream& out) {
  require_format(c);
  const Instance inst = load_instance(c.file);
  if (!inst.final) throw InputError("/final", "check needs a final state");
  std::vector<std::string> notes;
  const BlockSpectrum initial = block_with_note(inst.state, inst.spec, "initial", notes);
  const BlockSpectrum final =
      block_with_note(*inst.final, *inst.final_spec, "final", notes);
  const Transformation t(initial, inst.spec, final, *inst.final_spec);

  ReportOptions opts;
  opts.scan = scan_options(c);
  opts.signed_alpha = f.signed_alpha;
  opts.lp_cross_check = f.lp;
  const TransformReport r = analyze_transformation(t, opts);
  const Mode mode = f.catalytic ? Mode::kCatalytic : Mode::kNonCatalytic;
  if (r.lp_status && *r.lp_status != LpStatus::kUndecided &&
      (*r.lp_status == LpStatus::kFeasible) != r.feasible_slto) {
    notes.push_back("LP cross-check disagrees with thermo-majorization");
  }
  out << (c.format == "json" ? transform_report_json(r, mode, notes)
                             : transform_report_csv(r, mode));
  if (r.lp_status && *r.lp_status == LpStatus::kUndecided) return kUndecided;
  return summarize(r, mode).feasible ? kFeasible : kInfeasible;
}

EngineSplit parse_split(const std::string& s) {
  if (s == "auto") return {EngineSplitKind::kAuto, 0.0};
  if (s == "alpha1") return {EngineSplitKind::kAlphaOne, 0.0};
  if (s == "bath1") return {EngineSplitKind::kBath1, 0.0};
  if (s == "bath2") return {EngineSplitKind::kBath2, 0.0};
  if (s.rfind("w1=", 0) == 0) {
    const std::string v = s.substr(3);
    char* end = nullptr;
    const double w1 = std::strtod(v.c_str(), &end);
    if (!v.empty() && *end == '\0' && std::isfinite(w1)) {
      return {EngineSplitKind::kUser, w1};
    }
  }
  throw InputError("--split", "expected w1=<value>, bath1, bath2, alpha1 or auto");
}

int cmd_engine(const Common& c, const EngineFlags& f, std::ostream& out) {
  const Instance inst = load_instance(c.file);
  if (!(inst.spec.baths().beta1 < inst.spec.baths().beta2)) {
    throw InputError("/beta", "engine mode needs beta1 < beta2 (bath 1 is hot)");
  }
  EngineOptions opts;
  opts.scan = scan_options(c);
  opts.catalytic = f.catalytic;
  opts.split = parse_split(f.split);
  std::vector<std::string> notes;
  const BlockSpectrum s = block_with_note(inst.state, inst.spec, "working", notes);
  if (inst.final) notes.push_back("the final state is ignored in engine mode");
  EngineReport r = analyze_engine(s, inst.spec, opts);
  r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
  if (f.table) {
    if (!r.product) {
      throw InputError("/state", "--table needs a product working state");
    }
    out << alpha_table_csv(r.alpha_works);
  } else {
    out << engine_report_json(r);
  }
  return r.spontaneity.spontaneous ? kFeasible : kInfeasible;
}

// Drops interior points that lie on the segment joining their neighbours.
LorenzCurve elbows(const LorenzCurve& curve) {
  LorenzCurve out;
  for (const LorenzPoint& pt : curve.points) {
    if (!out.points.empty() && pt.x == out.points.back().x &&
        pt.y == out.points.back().y) {
      continue;
    }
    while (out.points.size() >= 2) {
      const LorenzPoint& a = out.points[out.points.size() - 2];
      const LorenzPoint& b = out.points.back();
      const double cross =
          (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
      const double scale = std::max(1.0, std::abs(pt.x - a.x)) *
                           std::max(1.0, std::abs(pt.y - a.y));
      if (std::abs(cross) > 1e-12 * scale) break;
      out.points.pop_back();
    }
    out.points.push_back(pt);
  }
  return out;
}

int cmd_curve(const Common& c, bool use_final, std::ostream& out) {
  const Instance inst = load_instance(c.file);
  if (use_final && !inst.final) throw InputError("/final", "no final state given");
  const StateInput& s = use_final ? *inst.final : inst.state;
  const EngineSpec& spec = use_final ? *inst.final_spec : inst.spec;
  out << lorenz_csv(elbows(thermo_lorenz_curve(s.block(spec), spec)));
  return kFeasible;
}

int cmd_asym(const Common& c, std::ostream& out) {
  require_format(c);
  const Instance inst = load_instance(c.file);
  const TransformOptions scan = scan_options(c);
  const std::vector<Alpha> grid = standard_alpha_grid(scan.log_points);
  const AsymmetryReport table =
      asymmetry_table(inst.state.to_dense(), inst.spec, grid);
  if (c.format == "csv") {
    out << asymmetry_csv(table.rows);
    return kFeasible;
  }
  if (!inst.final) {
    out << asymmetry_json(table.rows);
    return kFeasible;
  }
  const AsymmetryCheck check =
      asymmetry_necessary(inst.state.to_dense(), inst.spec,
                          inst.final->to_dense(), *inst.final_spec,
                          scan.log_points, scan.tol);
  nlohmann::json doc;
  doc["initial"] = nlohmann::json::parse(asymmetry_json(check.initial));
  doc["final"] = nlohmann::json::parse(asymmetry_json(check.final));
  doc["necessary_condition_holds"] = check.passes;
  doc["violating_alpha"] = check.violating_alpha
                               ? nlohmann::json(check.violating_alpha->to_string())
                               : nlohmann::json(nullptr);
  out << doc.dump(2) << '\n';
  return check.passes ? kFeasible : kInfeasible;
}

int cmd_bench(const Common& c, const BenchFlags& f, std::ostream& out) {
  TrialConfig cfg;
  cfg.seed = f.seed;
  cfg.trials = f.trials;
  cfg.mutate_curve = f.mutate_curve;
  const TransformOptions scan = scan_options(c);
  cfg.log_points = scan.log_points;
  cfg.tol = scan.tol;
  if (f.trials < 0) throw InputError("--trials", "must be nonnegative");
  const BenchReport r = run_bench(cfg, f.suites);
  out << r.to_json();
  return r.pass() ? kFeasible : kInfeasible;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic feasibility checks for two-bath quantum machines",
               "thermoforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "thermoforge 0.1.0");

  Common common;
  CheckFlags check;
  EngineFlags engine;
  BenchFlags bench;
  bool curve_final = false;

  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--alpha-grid", common.alpha_grid,
                    "log-spaced alpha points in [1e-3, 1e3]");
    sub->add_option("--tol", common.tol,
                    "feasibility slack (default 1e-9 or THERMOFORGE_TOL)");
  };

  CLI::App* c_check = app.add_subcommand("check", "decide a state transformation");
  c_check->add_option("file", common.file, "instance file")->required();
  c_check->add_flag("--catalytic,!--no-catalytic", check.catalytic,
                    "catalytic (default) or exact second law");
  c_check->add_flag("--signed-alpha", check.signed_alpha,
                    "also scan alpha < 0 (block-diagonal states)");
  c_check->add_flag("--lp", check.lp, "cross-check with the d-majorization LP");
  c_check->add_option("--format", common.format, "json or csv");
  add_scan(c_check);

  CLI::App* c_engine = app.add_subcommand("engine", "analyse a one-step engine cycle");
  c_engine->add_option("file", common.file, "instance file")->required();
  c_engine->add_flag("--catalytic,!--no-catalytic", engine.catalytic,
                     "spontaneity under the catalytic (default) or exact law");
  c_engine->add_option("--split", engine.split,
                       "w1=<value>, bath1, bath2, alpha1 or auto");
  c_engine->add_flag("--table", engine.table, "print the alpha-work table as CSV");
  add_scan(c_engine);

  CLI::App* c_curve = app.add_subcommand("curve", "thermo-majorization curve as CSV");
  c_curve->add_option("file", common.file, "instance file")->required();
  c_curve->add_flag("--final", curve_final, "use the final state");

  CLI::App* c_asym = app.add_subcommand("asym", "alpha-asymmetry table");
  c_asym->add_option("file", common.file, "instance file")->required();
  c_asym->add_option("--format", common.format, "json or csv");
  add_scan(c_asym);

  CLI::App* c_bench = app.add_subcommand("bench", "run the verification suites");
  c_bench->add_option("--seed", bench.seed, "base seed");
  c_bench->add_option("--trials", bench.trials, "trials per suite (0: default)");
  c_bench->add_option("--suite", bench.suites, "suite name (repeatable)");
  c_bench->add_flag("--mutate-curve", bench.mutate_curve,
                    "flip the Gibbs-weight sign (harness self-test)");
  add_scan(c_bench);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kFeasible;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kFeasible;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kFeasible;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  // Reports are buffered so that an input error leaves stdout empty.
  std::ostringstream buffer;
  try {
    int code = kInputError;
    if (*c_check) {
      code = cmd_check(common, check, buffer);
    } else if (*c_engine) {
      code = cmd_engine(common, engine, buffer);
    } else if (*c_curve) {
      code = cmd_curve(common, curve_final, buffer);
    } else if (*c_asym) {
      code = cmd_asym(common, buffer);
    } else if (*c_bench) {
      code = cmd_bench(common, bench, buffer);
    }
    out << buffer.str();
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace thermoforge::cli
