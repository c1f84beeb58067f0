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

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using nlohmann::json;
using thermoforge::cli::run_cli;
using testing::near;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return testing::fixture(name); }

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("check exit codes") {
  const Run id = run({"check", fx("identity.json")});
  CHECK(id.code == 0);
  const json r = json::parse(id.out);
  CHECK(r["s_distance"].get<double>() == 0.0);
  CHECK(r["marginal"].get<bool>());

  const Run fwd = run({"check", fx("ground_to_gibbs.json")});
  CHECK(fwd.code == 0);
  const json f = json::parse(fwd.out);
  const double log_z = std::log(testing::qubit_pair_z());
  CHECK(near(f["s_distance"].get<double>(), log_z, 1e-11));
  CHECK(near(f["work"]["w_ext"].get<double>(), 2.0 * log_z, 1e-9));

  const Run back = run({"check", fx("gibbs_to_ground.json")});
  CHECK(back.code == 1);
  CHECK_FALSE(json::parse(back.out)["violating_alpha"].is_null());

  const Run lp = run({"check", fx("ground_to_gibbs.json"), "--lp"});
  CHECK(lp.code == 0);
}

TEST_CASE("check flags") {
  // Catalysis helps here but not without it.
  CHECK(run({"check", fx("catalytic_only.json")}).code == 0);
  CHECK(run({"check", fx("catalytic_only.json"), "--no-catalytic"}).code == 1);
  // Negative alphas reject this pair.
  CHECK(run({"check", fx("signed_violation.json")}).code == 0);
  CHECK(run({"check", fx("signed_violation.json"), "--signed-alpha"}).code == 1);

  const Run csv = run({"check", fx("ground_to_gibbs.json"), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(count_lines(csv.out) == 2);
  CHECK(csv.out.rfind("feasible,", 0) == 0);

  CHECK(run({"check", fx("identity.json"), "--alpha-grid", "16"}).code == 0);
  CHECK(run({"check", fx("identity.json"), "--alpha-grid", "1"}).code == 2);
  CHECK(run({"check", fx("identity.json"), "--format", "xml"}).code == 2);
  CHECK(run({"check", fx("identity.json"), "--tol", "-1"}).code == 2);

  // A coherent initial state is dephased with a note.
  const Run coh = run({"check", fx("coherent.json")});
  CHECK(coh.code != 2);
  CHECK_FALSE(json::parse(coh.out)["notes"].empty());

  // Without a final state there is nothing to decide.
  const Run none = run({"check", fx("gibbs_state.json")});
  CHECK(none.code == 2);
  CHECK(none.out.empty());
}

TEST_CASE("THERMOFORGE_TOL sets the default slack") {
  ::setenv("THERMOFORGE_TOL", "1", 1);
  CHECK(run({"check", fx("gibbs_to_ground.json")}).code == 0);
  ::setenv("THERMOFORGE_TOL", "nonsense", 1);
  CHECK(run({"check", fx("gibbs_to_ground.json")}).code == 2);
  ::unsetenv("THERMOFORGE_TOL");
  CHECK(run({"check", fx("gibbs_to_ground.json")}).code == 1);
}

TEST_CASE("input errors leave stdout empty") {
  const Run bad = run({"check", fx("bad_field.json")});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("/state/p") != std::string::npos);

  const Run syntax = run({"check", fx("bad_syntax.json")});
  CHECK(syntax.code == 2);
  CHECK(syntax.out.empty());
  CHECK(syntax.err.find("line ") != std::string::npos);

  CHECK(run({"check", fx("missing.json")}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("engine") {
  const Run sym = run({"engine", fx("engine_symmetric.json"), "--split", "w1=1"});
  CHECK(sym.code == 0);
  const json s = json::parse(sym.out);
  CHECK(s["budget"].get<double>() == 0.0);

  const Run hot = run({"engine", fx("engine_hotcold.json")});
  CHECK(hot.code == 0);
  CHECK(json::parse(hot.out)["spontaneous"].get<bool>());

  const Run cor = run({"engine", fx("engine_correlated.json")});
  CHECK(cor.code == 0);
  const json c = json::parse(cor.out);
  CHECK(near(c["correlation"]["mutual_information"].get<double>(), std::log(2.0), 1e-11));
  CHECK(c["correlation"]["budget"].get<double>() > 0.0);

  const Run rev = run({"engine", fx("engine_reversed_beta.json")});
  CHECK(rev.code == 2);
  CHECK(rev.out.empty());
  CHECK(rev.err.find("/beta") != std::string::npos);

  for (const char* split : {"auto", "alpha1", "bath1", "bath2", "w1=0.5"}) {
    CHECK(run({"engine", fx("engine_hotcold.json"), "--split", split}).code == 0);
  }
  CHECK(run({"engine", fx("engine_hotcold.json"), "--split", "w1=x"}).code == 2);
  CHECK(run({"engine", fx("engine_hotcold.json"), "--split", "half"}).code == 2);

  const Run table = run({"engine", fx("engine_hotcold.json"), "--table", "--alpha-grid", "10"});
  CHECK(table.code == 0);
  CHECK(table.out.rfind("alpha,w1,w2,w_ext,eta1,eta2\n", 0) == 0);
  CHECK(count_lines(table.out) == 1 + 10 + 3);
  CHECK(run({"engine", fx("engine_correlated.json"), "--table"}).code == 2);
}

TEST_CASE("curve") {
  const Run gibbs = run({"curve", fx("gibbs_state.json")});
  CHECK(gibbs.code == 0);
  CHECK(gibbs.out.rfind("x,y\n0,0\n", 0) == 0);
  CHECK(count_lines(gibbs.out) == 3);

  const Run ground = run({"curve", fx("ground_to_gibbs.json")});
  CHECK(ground.out.find("\n1,1\n") != std::string::npos);
  const Run fin = run({"curve", fx("ground_to_gibbs.json"), "--final"});
  CHECK(count_lines(fin.out) == 3);
  CHECK(run({"curve", fx("gibbs_state.json"), "--final"}).code == 2);
}

TEST_CASE("asym") {
  const Run diag = run({"asym", fx("gibbs_state.json")});
  CHECK(diag.code == 0);
  for (const json& row : json::parse(diag.out)["asymmetry"]) {
    CHECK(std::abs(row["value"].get<double>()) <= 1e-10);
  }
  const Run coh = run({"asym", fx("coherent.json"), "--format", "csv"});
  CHECK(coh.code == 0);
  CHECK(coh.out.find("alpha,") == 0);
}

TEST_CASE("bench") {
  const Run r = run({"bench", "--suite", "thermo_vs_lp", "--trials", "1000", "--seed", "42"});
  CHECK(r.code == 0);
  const json b = json::parse(r.out);
  CHECK(b["pass"].get<bool>());

  const Run again = run({"bench", "--suite", "thermo_vs_lp", "--trials", "1000", "--seed", "42"});
  CHECK(again.out == r.out);

  const Run mutated = run({"bench", "--suite", "thermo_vs_lp", "--trials", "100", "--mutate-curve"});
  CHECK(mutated.code == 1);

  const Run unknown = run({"bench", "--suite", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.empty());
  CHECK(run({"bench", "--trials", "-3"}).code == 2);
}
