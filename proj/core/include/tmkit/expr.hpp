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

#ifndef TMKIT_EXPR_HPP_
#define TMKIT_EXPR_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tmkit/value.hpp"

namespace tmkit::expr {

// Guard and update expression language:
//   integer/string/boolean literals, [] (empty list), names (possibly
//   qualified as Thimac.var), + - * unary - and !, comparisons,
//   && ||, and the calls append(l, v), remove_first(l, v), contains(l, v),
//   len(l). Updates are `name := expr` assignments separated by ';'.

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Op {
    Literal, Name, Neg, Not, Add, Sub, Mul, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Call
  };
  Op op = Op::Literal;
  Value literal;
  std::string name;  // Name: identifier; Call: function name
  std::vector<NodePtr> args;
};

struct Assignment {
  std::string target;
  NodePtr value;
};

// Thrown for malformed expressions (code "BadExpression") and for
// evaluation failures (codes "TypeError", "UnboundName").
NodePtr parse_expression(const std::string& text);
std::vector<Assignment> parse_updates(const std::string& text);

// Every name referenced by `node` (assignment targets excluded).
void collect_names(const NodePtr& node, std::vector<std::string>& out);

// Name resolution used during evaluation.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual Value lookup(const std::string& name) const = 0;
  virtual void assign(const std::string& name, Value value) = 0;
};

Value evaluate(const NodePtr& node, const Environment& env);
void execute(const std::vector<Assignment>& program, Environment& env);

// Renders an expression back to source text (fully parenthesized where
// needed for re-parsing).
std::string to_string(const NodePtr& node);

}  // namespace tmkit::expr

#endif  // TMKIT_EXPR_HPP_
