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

#ifndef TMKIT_SCRIPT_HPP_
#define TMKIT_SCRIPT_HPP_

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tmkit/diagnostic.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/model.hpp"

namespace tmkit::dsl {

// Create <Thimac>=<id>
struct CreateInstance {
  std::string thimac;
  std::string instance;

  friend bool operator==(const CreateInstance&, const CreateInstance&) = default;
};

// Create <Thimac> <id>.<Attr>=<value>   or   Create <Thimac>=<id>.<Attr>=<value>
struct SetAttribute {
  std::string thimac;
  std::string instance;
  std::string attribute;
  Value value;

  friend bool operator==(const SetAttribute&, const SetAttribute&) = default;
};

struct FlowEndpoint {
  std::string thimac;
  std::string instance;
  std::vector<std::pair<std::string, Value>> attributes;
  std::vector<std::string> stages;  // dotted stage words, as written

  friend bool operator==(const FlowEndpoint&, const FlowEndpoint&) = default;
};

// [Create.]<T>=<id>[.<Attr>=<v>]*[.<stage>]* -> <T>=<id>[.<Attr>=<v>]*[.<stage>]*
struct Flow {
  bool create = false;
  FlowEndpoint source;
  FlowEndpoint target;

  friend bool operator==(const Flow&, const Flow&) = default;
};

// Trigger Event <E> [(<p>=<v>, ...)]
struct TriggerEvent {
  std::string event;
  Binding binding;

  friend bool operator==(const TriggerEvent&, const TriggerEvent&) = default;
};

// If <E> print "<text>"   (an unquoted tail is taken verbatim)
struct ConditionalPrint {
  std::string event;
  std::string message;

  friend bool operator==(const ConditionalPrint&, const ConditionalPrint&) = default;
};

using StatementKind =
    std::variant<CreateInstance, SetAttribute, Flow, TriggerEvent, ConditionalPrint>;

struct Statement {
  Position pos;
  std::string label;  // "E1:" line preceding the statement, if any
  StatementKind kind;

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Script {
  std::vector<Statement> statements;

  friend bool operator==(const Script&, const Script&) = default;
};

// One statement per logical line. A line ending in '.' or an arrow
// continues on the next line. "->" and U+2192 are interchangeable.
Result<Script> parse_script(const std::string& text);

// Checks that thimacs and events named by `script` exist in `bundle`
// (codes UnknownThimac, UnknownEvent).
std::vector<Diagnostic> resolve_script(const Bundle& bundle, const Script& script);

}  // namespace tmkit::dsl

#endif  // TMKIT_SCRIPT_HPP_
