// Copyright 2026 The tmkit Authors.
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

#ifndef TMKIT_DIAGNOSTIC_HPP_
#define TMKIT_DIAGNOSTIC_HPP_

#include <string>
#include <vector>

namespace tmkit {

struct Position {
  int line = 0;  // 1-based; 0 when the diagnostic has no source location
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const Position&, const Position&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  std::string code;
  std::string element;  // offending element id, when there is one
  Position position;
  std::string message;
  Severity severity = Severity::Error;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// "file:line:col: error[Code]: message (element)" style rendering.
std::string format_diagnostic(const Diagnostic& d, const std::string& file = {},
                              bool color = false);

}  // namespace tmkit

#endif  // TMKIT_DIAGNOSTIC_HPP_
