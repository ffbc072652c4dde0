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

#include "tmkit/expr.hpp"

#include <cctype>
#include <charconv>

#include "tmkit/error.hpp"

namespace tmkit::expr {
namespace {

enum class Tok { Int, Str, Ident, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

[[noreturn]] void bad(const std::string& source, std::size_t offset, const std::string& what) {
  throw Error("BadExpression",
              what + " at offset " + std::to_string(offset) + " in \"" + source + "\"");
}

std::vector<Token> tokenize(const std::string& src) {
  static const char* const kTwoChar[] = {":=", "<=", ">=", "==", "!=", "&&", "||"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Int, src.substr(start, i - start), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_' || src[i] == '.'))
        ++i;
      if (src[i - 1] == '.') bad(src, i - 1, "dangling '.'");
      out.push_back({Tok::Ident, src.substr(start, i - start), start});
    } else if (c == '"') {
      std::string text;
      ++i;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) ++i;
        text += src[i++];
      }
      if (i >= src.size()) bad(src, start, "unterminated string");
      ++i;
      out.push_back({Tok::Str, std::move(text), start});
    } else {
      bool matched = false;
      for (const char* two : kTwoChar) {
        if (src.compare(i, 2, two) == 0) {
          out.push_back({Tok::Sym, two, start});
          i += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("+-*()<>,[]!;").find(c) == std::string_view::npos)
          bad(src, i, std::string("unexpected character '") + c + "'");
        out.push_back({Tok::Sym, std::string(1, c), start});
        ++i;
      }
    }
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

NodePtr make(Node::Op op, std::vector<NodePtr> args = {}, std::string name = {},
             Value literal = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  n->name = std::move(name);
  n->literal = std::move(literal);
  return n;
}

int arity(const std::string& fn) {
  if (fn == "append" || fn == "remove_first" || fn == "contains") return 2;
  if (fn == "len") return 1;
  return -1;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src), toks_(tokenize(src)) {}

  NodePtr expression() { return parse_or(); }

  std::vector<Assignment> program() {
    std::vector<Assignment> out;
    while (!at_end()) {
      if (peek().kind != Tok::Ident) bad(src_, peek().offset, "expected assignment target");
      std::string target = next().text;
      expect(":=");
      out.push_back({std::move(target), parse_or()});
      if (!accept(";")) break;
    }
    if (!at_end()) bad(src_, peek().offset, "expected ';' or end of updates");
    return out;
  }

  bool at_end() const { return toks_[pos_].kind == Tok::End; }
  const Token& peek() const { return toks_[pos_]; }
  void finish() {
    if (!at_end()) bad(src_, peek().offset, "unexpected '" + peek().text + "'");
  }

 private:
  const Token& next() { return toks_[pos_++]; }

  bool accept(const char* sym) {
    if (peek().kind == Tok::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* sym) {
    if (!accept(sym)) bad(src_, peek().offset, std::string("expected '") + sym + "'");
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("||")) lhs = make(Node::Op::Or, {lhs, parse_and()});
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_cmp();
    while (accept("&&")) lhs = make(Node::Op::And, {lhs, parse_cmp()});
    return lhs;
  }

  NodePtr parse_cmp() {
    NodePtr lhs = parse_add();
    static const std::pair<const char*, Node::Op> kRel[] = {
        {"<=", Node::Op::Le}, {">=", Node::Op::Ge}, {"==", Node::Op::Eq},
        {"!=", Node::Op::Ne}, {"<", Node::Op::Lt},  {">", Node::Op::Gt}};
    for (const auto& [sym, op] : kRel)
      if (accept(sym)) return make(op, {lhs, parse_add()});
    return lhs;
  }

  NodePtr parse_add() {
    NodePtr lhs = parse_mul();
    for (;;) {
      if (accept("+")) lhs = make(Node::Op::Add, {lhs, parse_mul()});
      else if (accept("-")) lhs = make(Node::Op::Sub, {lhs, parse_mul()});
      else return lhs;
    }
  }

  NodePtr parse_mul() {
    NodePtr lhs = parse_unary();
    while (accept("*")) lhs = make(Node::Op::Mul, {lhs, parse_unary()});
    return lhs;
  }

  NodePtr parse_unary() {
    if (accept("-")) return make(Node::Op::Neg, {parse_unary()});
    if (accept("!")) return make(Node::Op::Not, {parse_unary()});
    return parse_primary();
  }

  NodePtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc()) bad(src_, t.offset, "integer out of range");
        ++pos_;
        return make(Node::Op::Literal, {}, {}, Value::integer(v));
      }
      case Tok::Str: ++pos_; return make(Node::Op::Literal, {}, {}, Value::text(t.text));
      case Tok::Ident: {
        std::string name = next().text;
        if (name == "true" || name == "false")
          return make(Node::Op::Literal, {}, {}, Value::boolean(name == "true"));
        if (!accept("(")) return make(Node::Op::Name, {}, name);
        int n = arity(name);
        if (n < 0) bad(src_, t.offset, "unknown function '" + name + "'");
        std::vector<NodePtr> args;
        if (!accept(")")) {
          do args.push_back(parse_or());
          while (accept(","));
          expect(")");
        }
        if (static_cast<int>(args.size()) != n)
          bad(src_, t.offset, name + " takes " + std::to_string(n) + " argument(s)");
        return make(Node::Op::Call, std::move(args), name);
      }
      case Tok::Sym:
        if (accept("(")) {
          NodePtr inner = parse_or();
          expect(")");
          return inner;
        }
        if (accept("[")) {
          expect("]");
          return make(Node::Op::Literal, {}, {}, Value::list());
        }
        break;
      case Tok::End: bad(src_, t.offset, "unexpected end of expression");
    }
    bad(src_, t.offset, "unexpected '" + t.text + "'");
  }

  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void type_error(const std::string& what) { throw Error("TypeError", what); }

Value call(const std::string& fn, const std::vector<Value>& a) {
  if (fn == "len") {
    if (a[0].is_list()) return Value::integer(static_cast<std::int64_t>(a[0].as_list().size()));
    if (a[0].is_text()) return Value::integer(static_cast<std::int64_t>(a[0].as_text().size()));
    type_error("len expects a list or text");
  }
  if (!a[0].is_list()) type_error(fn + " expects a list as first argument");
  const auto& items = a[0].as_list();
  if (fn == "append") {
    auto copy = items;
    copy.push_back(a[1]);
    return Value::list(std::move(copy));
  }
  if (fn == "contains") {
    for (const auto& v : items)
      if (v == a[1]) return Value::boolean(true);
    return Value::boolean(false);
  }
  // remove_first
  auto copy = items;
  for (auto it = copy.begin(); it != copy.end(); ++it) {
    if (*it == a[1]) {
      copy.erase(it);
      break;
    }
  }
  return Value::list(std::move(copy));
}

std::int64_t int_arg(const Value& v, const char* op) {
  if (!v.is_int()) type_error(std::string("operator ") + op + " expects int, got " + kind_name(v.kind()));
  return v.as_int();
}

bool bool_arg(const Value& v, const char* op) {
  if (!v.is_bool()) type_error(std::string("operator ") + op + " expects bool, got " + kind_name(v.kind()));
  return v.as_bool();
}

Value compare(Node::Op op, const Value& l, const Value& r) {
  if (l.kind() != r.kind() || !(l.is_int() || l.is_text()))
    type_error(std::string("cannot order ") + kind_name(l.kind()) + " and " + kind_name(r.kind()));
  switch (op) {
    case Node::Op::Lt: return Value::boolean(l < r);
    case Node::Op::Le: return Value::boolean(!(r < l));
    case Node::Op::Gt: return Value::boolean(r < l);
    default: return Value::boolean(!(l < r));
  }
}

}  // namespace

NodePtr parse_expression(const std::string& text) {
  Parser p(text);
  if (p.at_end()) bad(text, 0, "empty expression");
  NodePtr n = p.expression();
  p.finish();
  return n;
}

std::vector<Assignment> parse_updates(const std::string& text) {
  Parser p(text);
  if (p.at_end()) bad(text, 0, "empty updates");
  return p.program();
}

void collect_names(const NodePtr& node, std::vector<std::string>& out) {
  if (!node) return;
  if (node->op == Node::Op::Name) out.push_back(node->name);
  for (const auto& a : node->args) collect_names(a, out);
}

Value evaluate(const NodePtr& node, const Environment& env) {
  using Op = Node::Op;
  switch (node->op) {
    case Op::Literal: return node->literal;
    case Op::Name: return env.lookup(node->name);
    case Op::Neg: return Value::integer(-int_arg(evaluate(node->args[0], env), "-"));
    case Op::Not: return Value::boolean(!bool_arg(evaluate(node->args[0], env), "!"));
    case Op::And:
      if (!bool_arg(evaluate(node->args[0], env), "&&")) return Value::boolean(false);
      return Value::boolean(bool_arg(evaluate(node->args[1], env), "&&"));
    case Op::Or:
      if (bool_arg(evaluate(node->args[0], env), "||")) return Value::boolean(true);
      return Value::boolean(bool_arg(evaluate(node->args[1], env), "||"));
    case Op::Call: {
      std::vector<Value> args;
      for (const auto& a : node->args) args.push_back(evaluate(a, env));
      return call(node->name, args);
    }
    default: break;
  }
  Value l = evaluate(node->args[0], env);
  Value r = evaluate(node->args[1], env);
  switch (node->op) {
    case Op::Add:
      if (l.is_text() && (r.is_text() || r.is_int()))
        return Value::text(l.as_text() + (r.is_text() ? r.as_text() : r.render()));
      if (l.is_int() && r.is_text()) return Value::text(l.render() + r.as_text());
      return Value::integer(int_arg(l, "+") + int_arg(r, "+"));
    case Op::Sub: return Value::integer(int_arg(l, "-") - int_arg(r, "-"));
    case Op::Mul: return Value::integer(int_arg(l, "*") * int_arg(r, "*"));
    case Op::Eq: return Value::boolean(l == r);
    case Op::Ne: return Value::boolean(!(l == r));
    default: return compare(node->op, l, r);
  }
}

void execute(const std::vector<Assignment>& program, Environment& env) {
  for (const auto& a : program) env.assign(a.target, evaluate(a.value, env));
}

std::string to_string(const NodePtr& node) {
  using Op = Node::Op;
  static const auto sym = [](Op op) -> const char* {
    switch (op) {
      case Op::Add: return "+";
      case Op::Sub: return "-";
      case Op::Mul: return "*";
      case Op::Lt: return "<";
      case Op::Le: return "<=";
      case Op::Gt: return ">";
      case Op::Ge: return ">=";
      case Op::Eq: return "==";
      case Op::Ne: return "!=";
      case Op::And: return "&&";
      case Op::Or: return "||";
      default: return "?";
    }
  };
  switch (node->op) {
    case Op::Literal:
      if (node->literal.is_list()) return "[]";
      if (node->literal.is_text()) return quote(node->literal.as_text());
      return node->literal.render();
    case Op::Name: return node->name;
    case Op::Neg: return "-" + to_string(node->args[0]);
    case Op::Not: return "!" + to_string(node->args[0]);
    case Op::Call: {
      std::string out = node->name + "(";
      for (std::size_t i = 0; i < node->args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(node->args[i]);
      }
      return out + ")";
    }
    default:
      return "(" + to_string(node->args[0]) + " " + sym(node->op) + " " +
             to_string(node->args[1]) + ")";
  }
}

}  // namespace tmkit::expr
