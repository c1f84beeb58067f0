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

#include "thermoforge/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "thermoforge/error.hpp"
#include "thermoforge/numeric.hpp"

namespace thermoforge {

using nlohmann::json;

StateInput StateInput::diagonal(std::vector<double> p) {
  StateInput s;
  s.diagonal_ = std::move(p);
  return s;
}

StateInput StateInput::dense(DenseState rho) {
  StateInput s;
  s.dense_ = std::move(rho);
  return s;
}

DenseState StateInput::to_dense() const {
  return dense_ ? *dense_ : DenseState::diagonal(*diagonal_);
}

double StateInput::coherence(const EngineSpec& spec) const {
  if (diagonal_) return 0.0;
  return off_block_magnitude(*dense_, weighted_spectrum(spec));
}

BlockSpectrum StateInput::block(const EngineSpec& spec) const {
  if (diagonal_) return BlockSpectrum(*diagonal_, spec);
  const DenseState dephased = block_dephase(*dense_, weighted_spectrum(spec));
  return block_spectrum(dephased, spec);
}

namespace {

const json& field(const json& obj, const std::string& key,
                  const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + "/" + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw InputError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(path, "expected a finite number");
  return x;
}

std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

EnergyLevels levels(const json& v, const std::string& path) {
  std::vector<double> e = number_array(v, path);
  if (e.empty()) throw InputError(path, "energy levels must be non-empty");
  return EnergyLevels(std::move(e));
}

std::vector<double> probabilities(const json& v, std::size_t expected,
                                  const std::string& path) {
  std::vector<double> p = number_array(v, path);
  if (p.size() != expected) {
    throw InputError(path, "expected " + std::to_string(expected) +
                               " entries, got " + std::to_string(p.size()));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) {
      throw InputError(path + "/" + std::to_string(i),
                       "probabilities must be nonnegative");
    }
  }
  const double total = sum(p);
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError(path, "probabilities sum to " + std::to_string(total) +
                               ", not 1");
  }
  // Totals already at 1 up to rounding are kept as written so that dumped
  // instances reload bit-exactly.
  const double rounding =
      8.0 * static_cast<double>(p.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(total - 1.0) > rounding) {
    for (double& x : p) x /= total;
  }
  return p;
}

ComplexMatrix matrix_part(const json& v, std::size_t n,
                          const std::string& path) {
  if (!v.is_array() || v.size() != n) {
    throw InputError(path, "expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const std::vector<double> row = number_array(v[r], rp);
    if (row.size() != n) {
      throw InputError(rp, "expected " + std::to_string(n) + " columns");
    }
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
  }
  return m;
}

StateInput parse_state(const json& v, const EngineSpec& spec,
                       const std::string& path) {
  if (!v.is_object()) throw InputError(path, "expected an object");
  const json& kind = field(v, "kind", path);
  if (!kind.is_string()) throw InputError(path + "/kind", "expected a string");
  const std::size_t n = spec.joint_dim();
  if (kind == "diagonal") {
    return StateInput::diagonal(
        probabilities(field(v, "p", path), n, path + "/p"));
  }
  if (kind == "dense") {
    ComplexMatrix m = matrix_part(field(v, "re", path), n, path + "/re");
    if (v.contains("im")) {
      m += std::complex<double>(0.0, 1.0) *
           matrix_part(v["im"], n, path + "/im");
    }
    try {
      return StateInput::dense(DenseState(std::move(m)));
    } catch (const InputError& e) {
      throw InputError(path, e.what());
    }
  }
  throw InputError(path + "/kind", "must be \"diagonal\" or \"dense\"");
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  // `byte` counts the offending character itself.
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const char* const kKnownKeys[] = {"beta", "h1",       "h2",       "state",
                                  "final", "h1_final", "h2_final", "meta"};

}  // namespace

Instance parse_instance(std::string_view text) {
  const std::string owned(text);
  json doc;
  try {
    doc = json::parse(owned);
  } catch (const json::parse_error& e) {
    throw InputError(position(owned, e.byte), "invalid JSON");
  }
  if (!doc.is_object()) throw InputError("/", "expected a JSON object");
  for (const auto& item : doc.items()) {
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), item.key()) ==
        std::end(kKnownKeys)) {
      throw InputError("/" + item.key(), "unknown field");
    }
  }
  const json& beta = field(doc, "beta", "");
  if (!beta.is_array() || beta.size() != 2) {
    throw InputError("/beta", "expected [beta1, beta2]");
  }
  const double b1 = number(beta[0], "/beta/0");
  const double b2 = number(beta[1], "/beta/1");
  if (b1 <= 0.0) throw InputError("/beta/0", "must be positive");
  if (b2 <= 0.0) throw InputError("/beta/1", "must be positive");
  const BathPair baths(b1, b2);

  auto make_spec = [&](const EnergyLevels& h1, const EnergyLevels& h2,
                       const std::string& path) {
    try {
      return EngineSpec(h1, h2, baths);
    } catch (const InputError& e) {
      throw InputError(path, e.what());
    }
  };
  const EnergyLevels h1 = levels(field(doc, "h1", ""), "/h1");
  const EnergyLevels h2 = levels(field(doc, "h2", ""), "/h2");
  EngineSpec spec = make_spec(h1, h2, "/h1");
  StateInput state = parse_state(field(doc, "state", ""), spec, "/state");

  Instance inst{std::move(spec), std::move(state), std::nullopt, std::nullopt,
                ""};
  const bool has_final_h = doc.contains("h1_final") || doc.contains("h2_final");
  if (doc.contains("final")) {
    const EnergyLevels f1 =
        doc.contains("h1_final") ? levels(doc["h1_final"], "/h1_final") : h1;
    const EnergyLevels f2 =
        doc.contains("h2_final") ? levels(doc["h2_final"], "/h2_final") : h2;
    inst.final_spec = make_spec(f1, f2, "/h1_final");
    inst.final = parse_state(doc["final"], *inst.final_spec, "/final");
  } else if (has_final_h) {
    throw InputError("/final", "final Hamiltonians given without a final state");
  }
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw InputError("/meta", "expected an object");
    inst.meta_json = doc["meta"].dump();
  }
  return inst;
}

Instance load_instance(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

namespace {

json levels_json(const EnergyLevels& h) {
  return json(std::vector<double>(h.values().begin(), h.values().end()));
}

json state_json(const StateInput& s) {
  if (s.is_diagonal()) {
    return json{{"kind", "diagonal"}, {"p", s.probabilities()}};
  }
  const DenseState rho = s.to_dense();
  const ComplexMatrix& m = rho.matrix();
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"kind", "dense"}, {"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

std::string dump_instance(const Instance& inst) {
  json doc;
  doc["beta"] = {inst.spec.baths().beta1, inst.spec.baths().beta2};
  doc["h1"] = levels_json(inst.spec.h1());
  doc["h2"] = levels_json(inst.spec.h2());
  doc["state"] = state_json(inst.state);
  if (inst.final) {
    doc["final"] = state_json(*inst.final);
    if (!(inst.final_spec->h1() == inst.spec.h1())) {
      doc["h1_final"] = levels_json(inst.final_spec->h1());
    }
    if (!(inst.final_spec->h2() == inst.spec.h2())) {
      doc["h2_final"] = levels_json(inst.final_spec->h2());
    }
  }
  if (!inst.meta_json.empty()) doc["meta"] = json::parse(inst.meta_json);
  return doc.dump(2);
}

}  // namespace thermoforge
