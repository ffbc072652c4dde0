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

#ifndef TMKIT_SRC_DSL_LEXER_HPP_
#define TMKIT_SRC_DSL_LEXER_HPP_

#include <string>
#include <vector>

#include "tmkit/diagnostic.hpp"

namespace tmkit::dsl::detail {

enum class TokenKind { Ident, Int, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // unescaped for strings; "->" for both arrow spellings
  Position pos;
  int depth = 0;     // brace nesting before this token
};

// Lexes model text. Illegal characters become SyntaxError diagnostics and
// are skipped.
std::vector<Token> lex_model(const std::string& text, std::vector<Diagnostic>& diagnostics);

}  // namespace tmkit::dsl::detail

#endif  // TMKIT_SRC_DSL_LEXER_HPP_
