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

// Instance files: the JSON documents consumed by the command-line tool and
// written by the verification harness for counterexamples.
//
//   {"beta": [b1, b2], "h1": [...], "h2": [...],
//    "state": {"kind": "diagonal", "p": [...]}
//           | {"kind": "dense", "re": [[...]], "im": [[...]]},
//    "final": <state>, "h1_final": [...], "h2_final": [...], "meta": {...}}
//
// "final", "h1_final", "h2_final" and "meta" are optional; the final
// Hamiltonians default to the initial ones.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermoforge/spectra.hpp"

namespace thermoforge {

// A state as written in a file: either occupation numbers or a full matrix.
class StateInput {
 public:
  static StateInput diagonal(std::vector<double> p);
  static StateInput dense(DenseState rho);

  bool is_diagonal() const noexcept { return diagonal_.has_value(); }
  const std::vector<double>& probabilities() const { return *diagonal_; }
  DenseState to_dense() const;

  // Inter-block coherence of the state with respect to spec (0 for diagonal
  // inputs).
  double coherence(const EngineSpec& spec) const;
  // Block spectrum of the dephased state.
  BlockSpectrum block(const EngineSpec& spec) const;

 private:
  std::optional<std::vector<double>> diagonal_;
  std::optional<DenseState> dense_;
};

struct Instance {
  EngineSpec spec;
  StateInput state;
  std::optional<EngineSpec> final_spec;  // set iff `final` is present
  std::optional<StateInput> final;
  std::string meta_json;  // raw "meta" object, empty when absent
};

// Parses and validates an instance. Throws InputError whose path() is a JSON
// pointer to the offending field (or "line L, column C" for syntax errors).
// Probability vectors that sum to one within 1e-9 are renormalised.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& file);

// Serialises with 17 significant digits so that a dump reloads bit-exactly.
std::string dump_instance(const Instance& instance);

}  // namespace thermoforge
