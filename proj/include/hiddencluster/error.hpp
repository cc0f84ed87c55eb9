// Copyright 2026 The hiddencluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hiddencluster {

/// Precondition or invariant violation on a value handed to the library.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed serialized document. `where()` is a byte offset or JSON pointer.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string &what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string &where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// The symbolic unzip rule is only derived for GKP-type measured nodes.
class UnsupportedMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The measured node's CV-level degree is not 1, or the graph is not a wire.
class UnsupportedTopology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hiddencluster
