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

#include <stdexcept>
#include <string>

namespace thermoforge {

// Raised for arguments that violate a documented precondition (bad
// dimensions, unnormalized vectors, non-Hermitian matrices, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
  InputError(std::string path, const std::string& what)
      : std::invalid_argument(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}

  // JSON-pointer style location of the offending field, empty when the
  // error does not originate from a document.
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace thermoforge
