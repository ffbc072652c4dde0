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

#include <set>
#include <string>
#include <utility>

#include "dsl_lexer.hpp"
#include "tmkit/dsl.hpp"

namespace tmkit::dsl {
namespace {

using detail::Token;
using detail::TokenKind;

const std::set<std::string, std::less<>> kTopLevel = {
    "notation", "thimac", "flow", "trigger", "event", "composite", "behavior", "constraint"};

struct ParseError {
  Position pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ModelAST parse(std::vector<Diagnostic>& diagnostics) {
    ModelAST ast;
    while (peek().kind != TokenKind::End) {
      const std::size_t start = pos_;
      try {
        ast.declarations.push_back(declaration());
      } catch (const ParseError& e) {
        diagnostics.push_back({"SyntaxError", {}, e.pos, e.message, Severity::Error});
        recover(start);
      }
    }
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_symbol(std::string_view s) const {
    return peek().kind == TokenKind::Symbol && peek().text == s;
  }
  bool at_word(std::string_view w) const {
    return peek().kind == TokenKind::Ident && peek().text == w;
  }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    std::string found = t.kind == TokenKind::End      ? "end of input"
                        : t.kind == TokenKind::String ? "string \"" + t.text + "\""
                                                      : "'" + t.text + "'";
    throw ParseError{t.pos, "expected " + expected + ", found " + found};
  }
  const Token& symbol(std::string_view s) {
    if (!at_symbol(s)) fail(peek(), "'" + std::string(s) + "'");
    return next();
  }
  void keyword(std::string_view w) {
    if (!at_word(w)) fail(peek(), "'" + std::string(w) + "'");
    next();
  }
  std::string ident(const std::string& what) {
    if (peek().kind != TokenKind::Ident || kTopLevel.count(peek().text)) fail(peek(), what);
    return next().text;
  }
  std::string string_literal(const std::string& what) {
    if (peek().kind != TokenKind::String) fail(peek(), what);
    return next().text;
  }

  // Skips at least one token, then up to the next top-level keyword outside
  // any block.
  // Skips to the next top-level keyword, never stopping where the failed
  // declaration began.
  void recover(std::size_t start) {
    if (pos_ == start) next();
    while (peek().kind != TokenKind::End &&
           !(peek().kind == TokenKind::Ident && peek().depth == 0 && kTopLevel.count(peek().text)))
      next();
  }

  // Closing brace for the block opened by `open`; EOF is reported at the
  // opener.
  void close_block(const Token& open) {
    if (peek().kind == TokenKind::End)
      throw ParseError{open.pos, "unterminated block: '{' is never closed"};
    symbol("}");
  }

  Declaration declaration() {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident || !kTopLevel.count(t.text))
      fail(t, "a declaration keyword");
    if (t.text == "notation") return notation();
    if (t.text == "thimac") return thimac();
    if (t.text == "flow") return flow();
    if (t.text == "trigger") return trigger();
    if (t.text == "event") return event();
    if (t.text == "composite") return composite();
    if (t.text == "behavior") return behavior();
    return constraint();
  }

  NotationDecl notation() {
    NotationDecl d;
    d.pos = next().pos;
    const Token& t = peek();
    auto n = t.kind == TokenKind::Ident ? parse_notation(t.text) : std::nullopt;
    if (!n) fail(t, "'simplified' or 'canonical'");
    next();
    d.notation = *n;
    return d;
  }

  Value literal() {
    const Token& t = peek();
    if (t.kind == TokenKind::Int) return parse_scalar(next().text);
    if (t.kind == TokenKind::String) return Value::text(next().text);
    if (t.kind == TokenKind::Ident && (t.text == "true" || t.text == "false"))
      return Value::boolean(next().text == "true");
    if (at_symbol("[")) {
      next();
      std::vector<Value> items;
      if (!at_symbol("]")) {
        items.push_back(literal());
        while (at_symbol(",")) {
          next();
          items.push_back(literal());
        }
      }
      symbol("]");
      return Value::list(std::move(items));
    }
    fail(t, "a value");
  }

  ThimacDecl thimac() {
    ThimacDecl d;
    d.pos = next().pos;
    d.name = ident("a thimac name");
    if (at_word("storage")) {
      next();
      d.storage = true;
    }
    const Token& open = symbol("{");
    while (!at_symbol("}") && peek().kind != TokenKind::End) {
      if (at_word("var")) {
        VarDecl v;
        v.pos = next().pos;
        v.name = ident("a variable name");
        symbol("=");
        v.initial = literal();
        d.vars.push_back(std::move(v));
      } else if (at_word("stage")) {
        d.stages.push_back(stage());
      } else if (at_word("thimac")) {
        d.children.push_back(thimac());
      } else {
        fail(peek(), "'var', 'stage', 'thimac' or '}'");
      }
    }
    close_block(open);
    return d;
  }

  StageDecl stage() {
    StageDecl s;
    s.pos = next().pos;
    const Token& k = peek();
    auto kind = k.kind == TokenKind::Ident ? parse_action_kind(k.text) : std::nullopt;
    if (!kind) fail(k, "a stage kind (create, process, release, transfer, receive)");
    next();
    s.kind = *kind;
    s.id = ident("a stage id");
    for (;;) {
      if (at_word("updates") && !s.updates) {
        next();
        s.updates = string_literal("an update string");
      } else if (at_word("emits") && !s.emits) {
        next();
        s.emits = string_literal("a message string");
      } else if (at_word("label") && !s.label) {
        next();
        s.label = string_literal("a label string");
      } else {
        return s;
      }
    }
  }

  std::pair<std::string, std::string> arrow_pair() {
    std::string from = ident("a node id");
    symbol("->");
    std::string to = ident("a node id");
    return {from, to};
  }

  FlowDecl flow() {
    FlowDecl d;
    d.pos = next().pos;
    std::tie(d.from, d.to) = arrow_pair();
    return d;
  }

  TriggerDecl trigger() {
    TriggerDecl d;
    d.pos = next().pos;
    std::tie(d.from, d.to) = arrow_pair();
    if (at_word("when")) {
      next();
      d.guard = string_literal("a guard string");
    }
    return d;
  }

  std::vector<std::string> name_list(const std::string& what) {
    std::vector<std::string> out;
    symbol("(");
    if (!at_symbol(")")) {
      out.push_back(ident(what));
      while (at_symbol(",")) {
        next();
        out.push_back(ident(what));
      }
    }
    symbol(")");
    return out;
  }

  EventDecl event() {
    EventDecl d;
    d.pos = next().pos;
    d.id = ident("an event id");
    if (at_symbol("(")) {
      next();
      while (!at_symbol(")")) {
        EventParam p;
        p.name = ident("a parameter name");
        p.source = p.name;
        if (at_symbol("=")) {
          next();
          p.source = ident("a source thimac");
        }
        d.params.push_back(std::move(p));
        if (!at_symbol(",")) break;
        next();
      }
      symbol(")");
    }
    const Token& open = symbol("{");
    while (!at_symbol("}") && peek().kind != TokenKind::End) {
      d.nodes.push_back(ident("a node id"));
      if (at_symbol(",")) next();
    }
    close_block(open);
    return d;
  }

  CompositeDecl composite() {
    CompositeDecl d;
    d.pos = next().pos;
    d.id = ident("a composite id");
    symbol("=");
    d.members.push_back(ident("an event id"));
    while (at_symbol(",")) {
      next();
      d.members.push_back(ident("an event id"));
    }
    if (at_word("sharing")) {
      next();
      d.shared = name_list("a variable name");
    }
    return d;
  }

  BehaviorDecl behavior() {
    BehaviorDecl d;
    d.pos = next().pos;
    const Token& open = symbol("{");
    while (!at_symbol("}") && peek().kind != TokenKind::End) {
      Position at = peek().pos;
      std::string from = ident("an event id");
      if (!at_symbol("->")) {
        d.events.push_back(std::move(from));
        continue;
      }
      next();
      EdgeDecl e{at, std::move(from), ident("an event id"), true};
      if (at_word("norepeat")) {
        next();
        e.repeatable = false;
      }
      d.edges.push_back(std::move(e));
    }
    close_block(open);
    return d;
  }

  ConstraintDecl constraint() {
    ConstraintDecl d;
    d.pos = next().pos;
    d.id = ident("a constraint id");
    symbol(":");
    const Token& k = peek();
    if (at_word("binding")) {
      next();
      BindingRule r{ident("a composite id"), std::nullopt};
      if (at_word("anchor")) {
        next();
        r.anchor = ident("an event id");
      }
      d.kind = std::move(r);
    } else if (at_word("succession")) {
      next();
      SuccessionRule r;
      r.first = ident("an event id");
      symbol(",");
      r.second = ident("an event id");
      d.kind = std::move(r);
    } else if (at_word("atmostonce")) {
      next();
      AtMostOnceRule r;
      r.composite = ident("a composite id");
      keyword("key");
      r.key = name_list("a variable name");
      d.kind = std::move(r);
    } else {
      fail(k, "'binding', 'succession' or 'atmostonce'");
    }
    return d;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void clear(ThimacDecl& t) {
  t.pos = {};
  for (auto& v : t.vars) v.pos = {};
  for (auto& s : t.stages) s.pos = {};
  for (auto& c : t.children) clear(c);
}

}  // namespace

Position position_of(const Declaration& decl) {
  return std::visit([](const auto& d) { return d.pos; }, decl);
}

ModelAST strip_positions(ModelAST ast) {
  for (auto& decl : ast.declarations) {
    std::visit(
        [](auto& d) {
          d.pos = {};
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, ThimacDecl>) clear(d);
          if constexpr (std::is_same_v<T, BehaviorDecl>)
            for (auto& e : d.edges) e.pos = {};
        },
        decl);
  }
  return ast;
}

bool structurally_equal(const ModelAST& a, const ModelAST& b) {
  return strip_positions(a) == strip_positions(b);
}

Result<ModelAST> parse_model(const std::string& text) {
  Result<ModelAST> result;
  auto tokens = detail::lex_model(text, result.diagnostics);
  Parser parser(std::move(tokens));
  ModelAST ast = parser.parse(result.diagnostics);
  if (!has_errors(result.diagnostics)) result.value = std::move(ast);
  return result;
}

Result<Bundle> load_model(const std::string& text) {
  auto parsed = parse_model(text);
  if (!parsed.ok()) return {std::nullopt, std::move(parsed.diagnostics)};
  auto lowered = lower(*parsed.value);
  lowered.diagnostics.insert(lowered.diagnostics.begin(), parsed.diagnostics.begin(),
                             parsed.diagnostics.end());
  return lowered;
}

}  // namespace tmkit::dsl
