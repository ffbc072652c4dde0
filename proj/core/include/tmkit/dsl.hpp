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

#ifndef TMKIT_DSL_HPP_
#define TMKIT_DSL_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tmkit/diagnostic.hpp"
#include "tmkit/model.hpp"

namespace tmkit::dsl {

// Parser output: `value` is set only when no error diagnostic was produced.
template <typename T>
struct Result {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

struct VarDecl {
  Position pos;
  std::string name;
  Value initial;

  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct StageDecl {
  Position pos;
  ActionKind kind = ActionKind::Process;
  std::string id;
  std::optional<std::string> updates;
  std::optional<std::string> emits;
  std::optional<std::string> label;

  friend bool operator==(const StageDecl&, const StageDecl&) = default;
};

struct ThimacDecl {
  Position pos;
  std::string name;
  bool storage = false;
  std::vector<VarDecl> vars;
  std::vector<StageDecl> stages;
  std::vector<ThimacDecl> children;

  friend bool operator==(const ThimacDecl&, const ThimacDecl&) = default;
};

struct NotationDecl {
  Position pos;
  Notation notation = Notation::Simplified;

  friend bool operator==(const NotationDecl&, const NotationDecl&) = default;
};

struct FlowDecl {
  Position pos;
  std::string from;
  std::string to;

  friend bool operator==(const FlowDecl&, const FlowDecl&) = default;
};

struct TriggerDecl {
  Position pos;
  std::string from;
  std::string to;
  std::optional<std::string> guard;

  friend bool operator==(const TriggerDecl&, const TriggerDecl&) = default;
};

struct EventDecl {
  Position pos;
  std::string id;
  std::vector<EventParam> params;
  std::vector<std::string> nodes;

  friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

struct CompositeDecl {
  Position pos;
  std::string id;
  std::vector<std::string> members;
  std::vector<std::string> shared;

  friend bool operator==(const CompositeDecl&, const CompositeDecl&) = default;
};

struct EdgeDecl {
  Position pos;
  std::string from;
  std::string to;
  bool repeatable = true;

  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

struct BehaviorDecl {
  Position pos;
  std::vector<std::string> events;  // events listed on their own
  std::vector<EdgeDecl> edges;

  friend bool operator==(const BehaviorDecl&, const BehaviorDecl&) = default;
};

struct ConstraintDecl {
  Position pos;
  std::string id;
  ConstraintKind kind;

  friend bool operator==(const ConstraintDecl&, const ConstraintDecl&) = default;
};

using Declaration = std::variant<NotationDecl, ThimacDecl, FlowDecl, TriggerDecl,
                                 EventDecl, CompositeDecl, BehaviorDecl, ConstraintDecl>;

struct ModelAST {
  std::vector<Declaration> declarations;

  friend bool operator==(const ModelAST&, const ModelAST&) = default;
};

Position position_of(const Declaration& decl);

// Copy of `ast` with every source position cleared.
ModelAST strip_positions(ModelAST ast);
// Equality that ignores source positions.
bool structurally_equal(const ModelAST& a, const ModelAST& b);

// Grammar (whitespace and newlines are insignificant, comments are /* */
// or // to end of line):
//
//   notation simplified|canonical
//   thimac <Name> [storage] {
//     var <name> = <int | "text" | []>
//     stage <kind> <id> [updates "<expr>"] [emits "<text>"] [label "<text>"]
//     thimac <Name> [storage] { ... }          (nested module)
//   }
//   flow <node> -> <node>
//   trigger <node> -> <node> [when "<expr>"]
//   event <Id>(<param>[=<source>], ...) { <node> ... }
//   composite <Id> = <E>, <E>, ... sharing (<var>, ...)
//   behavior { <E> | <E> -> <E> [norepeat] ... }
//   constraint <Id> : binding <Comp> [anchor <E>]
//                   | succession <E>, <E>
//                   | atmostonce <Comp> key (<var>, ...)
//
// Errors are reported with positions; parsing resumes at the next top-level
// keyword so that several errors are reported in one pass.
Result<ModelAST> parse_model(const std::string& text);

// Canonical source text for `ast`; parse_model(pretty_print(ast)) is
// structurally equal to `ast`.
std::string pretty_print(const ModelAST& ast);

// Resolves names, builds core types and runs validate_bundle. No bundle is
// returned when any error diagnostic is produced.
Result<Bundle> lower(const ModelAST& ast);

// parse_model followed by lower.
Result<Bundle> load_model(const std::string& text);

}  // namespace tmkit::dsl

#endif  // TMKIT_DSL_HPP_
