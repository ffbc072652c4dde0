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

#ifndef TMKIT_VALUE_HPP_
#define TMKIT_VALUE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tmkit {

// Runtime value carried by things, machine variables and event bindings.
class Value {
 public:
  enum class Kind { Int, Bool, Text, List };

  Value() = default;
  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value text(std::string v);
  static Value list(std::vector<Value> items = {});

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_text() const { return kind_ == Kind::Text; }
  bool is_list() const { return kind_ == Kind::List; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_text() const;
  const std::vector<Value>& as_list() const;

  // Compact rendering used by traces and reports: integers bare, text bare
  // when it is a plain word and quoted otherwise, lists as [a,b].
  std::string render() const;

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator<(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Int;
  std::int64_t int_ = 0;
  std::string text_;
  std::vector<Value> list_;
};

const char* kind_name(Value::Kind kind);

// Attribute record of a thing; ordered by attribute name.
using Record = std::map<std::string, Value>;

// Ordered association from parameter names to values.
using Binding = std::vector<std::pair<std::string, Value>>;

const Value* find_binding(const Binding& binding, const std::string& name);

// Parses a scalar written in a script or trace: optional sign plus digits is
// an integer, anything else is text.
Value parse_scalar(const std::string& token);

// Quotes `s` with C-style escapes.
std::string quote(const std::string& s);

}  // namespace tmkit

#endif  // TMKIT_VALUE_HPP_
