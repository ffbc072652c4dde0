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

#include "dsl_lexer.hpp"

#include <cctype>

namespace tmkit::dsl::detail {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

constexpr std::string_view kUnicodeArrow = "\xE2\x86\x92";  // U+2192

}  // namespace

std::vector<Token> lex_model(const std::string& text, std::vector<Diagnostic>& diagnostics) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  int depth = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;  // count code points, not bytes
      }
    }
  };
  auto error = [&](Position pos, std::string message) {
    diagnostics.push_back({"SyntaxError", {}, pos, std::move(message), Severity::Error});
  };

  while (i < text.size()) {
    char c = text[i];
    Position pos{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (text.compare(i, 2, "/*") == 0) {
      std::size_t end = text.find("*/", i + 2);
      if (end == std::string::npos) {
        error(pos, "unterminated comment");
        advance(text.size() - i);
      } else {
        advance(end + 2 - i);
      }
    } else if (text.compare(i, 2, "//") == 0) {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (ident_start(c)) {
      std::size_t start = i;
      // '-' joins composite ids such as E2-3-5 but never swallows "->".
      while (i < text.size() &&
             (ident_char(text[i]) ||
              (text[i] == '-' && i + 1 < text.size() &&
               std::isalnum(static_cast<unsigned char>(text[i + 1])))))
        advance(1);
      out.push_back({TokenKind::Ident, text.substr(start, i - start), pos, depth});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t start = i;
      advance(1);
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
      out.push_back({TokenKind::Int, text.substr(start, i - start), pos, depth});
    } else if (c == '"') {
      std::string value;
      advance(1);
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          closed = true;
          advance(1);
          break;
        }
        if (text[i] == '\n') break;
        if (text[i] == '\\' && i + 1 < text.size()) {
          char e = text[i + 1];
          value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          advance(2);
          continue;
        }
        value += text[i];
        advance(1);
      }
      if (!closed) error(pos, "unterminated string");
      out.push_back({TokenKind::String, std::move(value), pos, depth});
    } else if (text.compare(i, 2, "->") == 0) {
      out.push_back({TokenKind::Symbol, "->", pos, depth});
      advance(2);
    } else if (text.compare(i, kUnicodeArrow.size(), kUnicodeArrow) == 0) {
      out.push_back({TokenKind::Symbol, "->", pos, depth});
      advance(kUnicodeArrow.size());
    } else if (std::string_view("{}(),=:[]").find(c) != std::string_view::npos) {
      if (c == '}' && depth > 0) --depth;
      out.push_back({TokenKind::Symbol, std::string(1, c), pos, depth});
      if (c == '{') ++depth;
      advance(1);
    } else {
      error(pos, std::string("unexpected character '") + c + "'");
      advance(1);
    }
  }
  out.push_back({TokenKind::End, "", Position{line, col}, depth});
  return out;
}

}  // namespace tmkit::dsl::detail
