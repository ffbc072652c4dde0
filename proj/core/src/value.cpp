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

#include "tmkit/value.hpp"

#include <cctype>
#include <charconv>

#include "tmkit/error.hpp"

namespace tmkit {

Value Value::integer(std::int64_t v) {
  Value out;
  out.kind_ = Kind::Int;
  out.int_ = v;
  return out;
}

Value Value::boolean(bool v) {
  Value out;
  out.kind_ = Kind::Bool;
  out.int_ = v ? 1 : 0;
  return out;
}

Value Value::text(std::string v) {
  Value out;
  out.kind_ = Kind::Text;
  out.text_ = std::move(v);
  return out;
}

Value Value::list(std::vector<Value> items) {
  Value out;
  out.kind_ = Kind::List;
  out.list_ = std::move(items);
  return out;
}

const char* kind_name(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::Int: return "int";
    case Value::Kind::Bool: return "bool";
    case Value::Kind::Text: return "text";
    case Value::Kind::List: return "list";
  }
  return "?";
}

namespace {

[[noreturn]] void wrong_kind(Value::Kind want, Value::Kind have) {
  throw Error("TypeError", std::string("expected ") + kind_name(want) + ", got " +
                               kind_name(have));
}

bool is_plain_word(const std::string& s) {
  if (s.empty() || s == "true" || s == "false") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || c == '.' || c == '@' || c == '-' || c == ':'))
      return false;
  }
  return true;
}

}  // namespace

std::int64_t Value::as_int() const {
  if (kind_ != Kind::Int) wrong_kind(Kind::Int, kind_);
  return int_;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) wrong_kind(Kind::Bool, kind_);
  return int_ != 0;
}

const std::string& Value::as_text() const {
  if (kind_ != Kind::Text) wrong_kind(Kind::Text, kind_);
  return text_;
}

const std::vector<Value>& Value::as_list() const {
  if (kind_ != Kind::List) wrong_kind(Kind::List, kind_);
  return list_;
}

std::string Value::render() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(int_);
    case Kind::Bool: return int_ ? "true" : "false";
    case Kind::Text: return is_plain_word(text_) ? text_ : quote(text_);
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < list_.size(); ++i) {
        if (i) out += ',';
        out += list_[i].render();
      }
      return out + "]";
    }
  }
  return {};
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Int:
    case Value::Kind::Bool: return a.int_ == b.int_;
    case Value::Kind::Text: return a.text_ == b.text_;
    case Value::Kind::List: return a.list_ == b.list_;
  }
  return false;
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  switch (a.kind_) {
    case Value::Kind::Int:
    case Value::Kind::Bool: return a.int_ < b.int_;
    case Value::Kind::Text: return a.text_ < b.text_;
    case Value::Kind::List: return a.list_ < b.list_;
  }
  return false;
}

const Value* find_binding(const Binding& binding, const std::string& name) {
  for (const auto& [k, v] : binding)
    if (k == name) return &v;
  return nullptr;
}

Value parse_scalar(const std::string& token) {
  if (!token.empty()) {
    std::int64_t v = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last) return Value::integer(v);
  }
  return Value::text(token);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace tmkit
