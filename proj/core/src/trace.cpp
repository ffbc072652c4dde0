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

#include "tmkit/trace.hpp"

#include <charconv>
#include <sstream>

#include "tmkit/error.hpp"

namespace tmkit {
namespace {

[[noreturn]] void decode_error(std::size_t line, const std::string& what) {
  throw Error("DecodeError", "trace line " + std::to_string(line) + ": " + what);
}

class Cursor {
 public:
  Cursor(const std::string& text, std::size_t line) : s_(text), line_(line) {}

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    decode_error(line_, what + " at column " + std::to_string(i_ + 1));
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (!done() && peek() != '"') {
      char c = s_[i_++];
      if (c == '\\') {
        if (done()) fail("dangling escape");
        char e = s_[i_++];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += c;
      }
    }
    expect('"');
    return out;
  }

  // Bare token up to one of `stops`.
  std::string until(std::string_view stops) {
    std::size_t start = i_;
    while (!done() && stops.find(peek()) == std::string_view::npos) ++i_;
    return s_.substr(start, i_ - start);
  }

  Value value() {
    if (peek() == '"') return Value::text(quoted());
    if (accept('[')) {
      std::vector<Value> items;
      if (!accept(']')) {
        do items.push_back(value());
        while (accept(','));
        expect(']');
      }
      return Value::list(std::move(items));
    }
    std::string tok = until(",)]");
    if (tok.empty()) fail("missing value");
    if (tok == "true" || tok == "false") return Value::boolean(tok == "true");
    return parse_scalar(tok);
  }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

}  // namespace

std::string format_occurrence(const Occurrence& o) {
  std::string out = "t=" + std::to_string(o.time) + " " + o.event + "(";
  for (std::size_t i = 0; i < o.binding.size(); ++i) {
    if (i) out += ',';
    out += o.binding[i].first + "=" + o.binding[i].second.render();
  }
  return out + ")";
}

std::string serialize_trace(const Trace& trace) {
  std::string out;
  for (const auto& o : trace.occurrences) out += format_occurrence(o) + "\n";
  for (const auto& m : trace.messages)
    out += "t=" + std::to_string(m.time) + " msg " + quote(m.text) + "\n";
  return out;
}

Trace parse_trace(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.find_first_not_of(" \t") == std::string::npos) continue;
    Cursor c(raw, line_no);
    if (!c.accept('t') || !c.accept('=')) c.fail("expected 't=<step>'");
    std::string step = c.until(" ");
    std::int64_t time = 0;
    auto [p, ec] = std::from_chars(step.data(), step.data() + step.size(), time);
    if (ec != std::errc() || p != step.data() + step.size()) c.fail("bad step '" + step + "'");
    c.expect(' ');
    std::string head = c.until("( ");
    if (head == "msg" && c.accept(' ')) {
      trace.messages.push_back({time, c.quoted()});
    } else {
      if (head.empty()) c.fail("missing event id");
      Occurrence o{head, time, {}};
      c.expect('(');
      if (!c.accept(')')) {
        do {
          std::string name = c.until("=,)");
          if (name.empty()) c.fail("missing parameter name");
          c.expect('=');
          o.binding.emplace_back(std::move(name), c.value());
        } while (c.accept(','));
        c.expect(')');
      }
      trace.occurrences.push_back(std::move(o));
    }
    if (!c.done()) c.fail("trailing characters");
  }
  return trace;
}

}  // namespace tmkit
