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

#ifndef TMKIT_CONSTRAINTS_HPP_
#define TMKIT_CONSTRAINTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmkit/model.hpp"
#include "tmkit/trace.hpp"

namespace tmkit::constraints {

struct Violation {
  std::string constraint;
  std::int64_t time = 0;
  Binding witness;
  std::vector<std::size_t> occurrences;  // indices into Trace::occurrences
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> checked;

  bool conforming() const { return violations.empty(); }
};

// Id used for violations of the behavior model.
inline constexpr const char* kBehaviorId = "behavior";

// Every occurrence of the anchor event (default: first member) at step t
// needs occurrences of all other members at step t whose bindings agree on
// the composite's shared variables. Throws Error("UnknownComposite").
std::vector<Violation> check_binding(const Trace& trace, const Bundle& bundle,
                                     const std::string& composite,
                                     const std::optional<std::string>& anchor = {},
                                     const std::string& constraint_id = {});

// Every occurrence of `first` must be the immediate predecessor of an
// occurrence of `second` agreeing on their common parameters.
// Throws Error("UnknownEvent").
std::vector<Violation> check_succession(const Trace& trace, const Bundle& bundle,
                                        const std::string& first, const std::string& second,
                                        const std::string& constraint_id = {});

// A complete composite occurrence whose key tuple was already seen and then
// closed by an end marker ("end:<composite>") is a violation.
// Throws Error("UnknownComposite") or Error("BadKey").
std::vector<Violation> check_at_most_once(const Trace& trace, const Bundle& bundle,
                                          const std::string& composite,
                                          const std::vector<std::string>& key,
                                          const std::string& constraint_id = {});

// Consecutive occurrences of modelled events must follow an edge; a
// non-repeatable edge may be taken once per binding of the common params.
std::vector<Violation> check_behavior(const Trace& trace, const BehaviorModel& behavior,
                                      const std::string& constraint_id = kBehaviorId);

// Runs every declared constraint, then the behavior model when present.
// Violations are ordered by (time, constraint declaration order).
Report evaluate(const Bundle& bundle, const Trace& trace);

// "VIOLATION <id> t=<step> <witness>" lines, or a single "CONFORMING" line.
std::string serialize_report(const Report& report);

}  // namespace tmkit::constraints

#endif  // TMKIT_CONSTRAINTS_HPP_
