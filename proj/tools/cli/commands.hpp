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

#include <iosfwd>
#include <string>
#include <vector>

namespace thermoforge::cli {

// Exit codes shared by every subcommand.
enum Exit : int {
  kFeasible = 0,
  kInfeasible = 1,
  kInputError = 2,
  kUndecided = 3,
};

// Runs one invocation. args excludes the program name. Nothing is written to
// `out` when the result is kInputError.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace thermoforge::cli
