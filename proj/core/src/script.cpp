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

#include <cctype>
#include <regex>

#include "tmkit/script.hpp"

namespace tmkit::dsl {
namespace {

struct Line {
  std::string text;
  Position pos;
};

struct ScriptError {
  std::string code;
  std::string message;
};

constexpr std::string_view kUnicodeArrow = "\xE2\x86\x92";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ends_with(const std::string& s, std::string_view tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string first_word(const std::string& s) {
  std::size_t n = 0;
  while (n < s.size() && (std::isalnum(static_cast<unsigned char>(s[n])) || s[n] == '_')) ++n;
  return s.substr(0, n);
}

// Blanks out comments, keeping newlines so that positions survive.
std::string strip_comments(std::string text, std::vector<Diagnostic>& diagnostics) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "/*") == 0) {
      Position at{line, col};
      std::size_t end = text.find("*/", i + 2);
      std::size_t stop = end == std::string::npos ? text.size() : end + 2;
      if (end == std::string::npos)
        diagnostics.push_back({"SyntaxError", {}, at, "unterminated comment", Severity::Error});
      for (; i < stop; ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          text[i] = ' ';
          ++col;
        }
      }
      --i;
      continue;
    }
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return text;
}

// Physical lines joined into statements: a line ending in '.' or an arrow
// continues on the next non-blank line.
std::vector<Line> logical_lines(const std::string& text) {
  std::vector<Line> out;
  bool continuing = false;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++number;
    std::string_view raw(text.data() + start, end - start);
    std::string body = trim(raw);
    if (!body.empty()) {
      if (continuing) {
        out.back().text += body;
      } else {
        int col = static_cast<int>(raw.find_first_not_of(" \t\r")) + 1;
        out.push_back({body, {number, col}});
      }
      std::string w = first_word(out.back().text);
      continuing = w != "If" && w != "Trigger" &&
                   (ends_with(body, ".") || ends_with(body, "->") || ends_with(body, kUnicodeArrow));
    }
    start = end + 1;
  }
  return out;
}

// Splits on '.' outside double quotes.
std::vector<std::string> dotted(const std::string& s) {
  std::vector<std::string> out(1);
  bool in_quote = false;
  for (char c : s) {
    if (c == '"') in_quote = !in_quote;
    if (c == '.' && !in_quote) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  for (auto& part : out) part = trim(part);
  return out;
}

const std::regex kName(R"([A-Za-z_][A-Za-z0-9_\-]*)");

bool is_name(const std::string& s) { return std::regex_match(s, kName); }

Value value_of(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (s[i] == '\\' && i + 2 < s.size()) {
        char e = s[++i];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += s[i];
      }
    }
    return Value::text(out);
  }
  if (s.empty() || s.find_first_of(" \t\",()") != std::string::npos)
    throw ScriptError{"SyntaxError", "malformed value '" + s + "'"};
  if (s == "true" || s == "false") return Value::boolean(s == "true");
  return parse_scalar(s);
}

std::pair<std::string, std::string> assignment(const std::string& s, const char* what) {
  auto eq = s.find('=');
  if (eq == std::string::npos) throw ScriptError{"SyntaxError", std::string("expected ") + what};
  std::string lhs = trim(s.substr(0, eq));
  std::string rhs = trim(s.substr(eq + 1));
  if (!is_name(lhs) || rhs.empty())
    throw ScriptError{"SyntaxError", std::string("malformed ") + what + " '" + s + "'"};
  return {lhs, rhs};
}

FlowEndpoint endpoint(std::vector<std::string> parts, const char* side) {
  if (parts.empty() || parts[0].empty())
    throw ScriptError{"SyntaxError", std::string("missing ") + side + " instance"};
  FlowEndpoint ep;
  auto [thimac, instance] = assignment(parts[0], "Thimac=instance");
  ep.thimac = thimac;
  ep.instance = instance;
  if (!is_name(instance)) throw ScriptError{"SyntaxError", "malformed instance id '" + instance + "'"};
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.empty()) throw ScriptError{"SyntaxError", std::string("empty segment in ") + side};
    if (p.find('=') != std::string::npos) {
      auto [attr, raw] = assignment(p, "attribute=value");
      ep.attributes.emplace_back(attr, value_of(raw));
    } else if (is_name(p)) {
      ep.stages.push_back(p);
    } else {
      throw ScriptError{"SyntaxError", "unexpected '" + p + "' in " + side};
    }
  }
  return ep;
}

StatementKind flow(const std::string& line, std::size_t arrow, std::size_t arrow_len) {
  auto source = dotted(line.substr(0, arrow));
  auto target = dotted(line.substr(arrow + arrow_len));
  Flow f;
  if (!source.empty() && source[0] == "Create") {
    f.create = true;
    source.erase(source.begin());
  }
  f.source = endpoint(std::move(source), "source");
  f.target = endpoint(std::move(target), "target");
  return f;
}

StatementKind create(const std::string& rest) {
  // Create T=id | Create T=id.A=v | Create T id.A=v
  auto parts = dotted(rest);
  std::string head = parts[0];
  std::string thimac;
  std::string instance;
  if (head.find('=') != std::string::npos) {
    std::tie(thimac, instance) = assignment(head, "Thimac=instance");
  } else {
    auto space = head.find_first_of(" \t");
    if (space == std::string::npos)
      throw ScriptError{"SyntaxError", "expected 'Create Thimac=instance'"};
    thimac = trim(head.substr(0, space));
    instance = trim(head.substr(space));
    if (parts.size() != 2)
      throw ScriptError{"SyntaxError", "expected 'Create Thimac instance.Attribute=value'"};
  }
  if (!is_name(thimac) || !is_name(instance))
    throw ScriptError{"SyntaxError", "malformed instance '" + head + "'"};
  if (parts.size() == 1) return CreateInstance{thimac, instance};
  if (parts.size() > 2)
    throw ScriptError{"SyntaxError", "one attribute per Create statement"};
  auto [attr, raw] = assignment(parts[1], "Attribute=value");
  return SetAttribute{thimac, instance, attr, value_of(raw)};
}

StatementKind trigger(const std::string& rest) {
  static const std::regex re(R"(Event\s+([A-Za-z_][A-Za-z0-9_\-:]*)\s*(?:\((.*)\))?\s*)");
  std::smatch m;
  if (!std::regex_match(rest, m, re))
    throw ScriptError{"SyntaxError", "expected 'Trigger Event <E> [(p=v, ...)]'"};
  TriggerEvent t{m[1].str(), {}};
  if (m[2].matched && !trim(m[2].str()).empty()) {
    std::string args = m[2].str();
    std::string cur;
    bool in_quote = false;
    auto flush = [&] {
      auto [name, raw] = assignment(cur, "param=value");
      t.binding.emplace_back(name, value_of(raw));
      cur.clear();
    };
    for (char c : args) {
      if (c == '"') in_quote = !in_quote;
      if (c == ',' && !in_quote) {
        flush();
      } else {
        cur += c;
      }
    }
    flush();
  }
  return t;
}

StatementKind conditional(const std::string& rest) {
  static const std::regex re(R"(([A-Za-z_][A-Za-z0-9_\-:]*)\s+print\s+(.+))");
  std::smatch m;
  if (!std::regex_match(rest, m, re))
    throw ScriptError{"SyntaxError", "expected 'If <E> print <message>'"};
  std::string message = trim(m[2].str());
  if (message.front() == '"') {
    Value v = value_of(message);
    if (!v.is_text() || message.size() < 2 || message.back() != '"')
      throw ScriptError{"SyntaxError", "unterminated message string"};
    message = v.as_text();
  }
  return ConditionalPrint{m[1].str(), message};
}

StatementKind statement(const std::string& line) {
  auto arrow = line.find(kUnicodeArrow);
  std::size_t arrow_len = kUnicodeArrow.size();
  if (arrow == std::string::npos) {
    arrow = line.find("->");
    arrow_len = 2;
  }
  std::string word = first_word(line);
  if (arrow != std::string::npos && word != "If" && word != "Trigger")
    return flow(line, arrow, arrow_len);
  std::string rest = trim(std::string_view(line).substr(word.size()));
  bool separated = line.size() > word.size() && std::isspace(static_cast<unsigned char>(line[word.size()]));
  if (word == "Create" && separated) return create(rest);
  if (word == "Trigger" && separated) return trigger(rest);
  if (word == "If" && separated) return conditional(rest);
  if (word == "Create")
    throw ScriptError{"SyntaxError", "flow statement without an arrow"};
  throw ScriptError{"UnknownStatement", "unknown statement '" + (word.empty() ? line : word) + "'"};
}

}  // namespace

Result<Script> parse_script(const std::string& text) {
  Result<Script> result;
  std::string clean = strip_comments(text, result.diagnostics);
  Script script;
  static const std::regex label(R"(([A-Za-z_][A-Za-z0-9_\-]*)\s*:)");
  std::string pending;
  for (const auto& line : logical_lines(clean)) {
    std::smatch m;
    if (std::regex_match(line.text, m, label)) {
      pending = m[1].str();
      continue;
    }
    try {
      script.statements.push_back({line.pos, pending, statement(line.text)});
    } catch (const ScriptError& e) {
      result.diagnostics.push_back({e.code, {}, line.pos, e.message, Severity::Error});
    }
    pending.clear();
  }
  if (!has_errors(result.diagnostics)) result.value = std::move(script);
  return result;
}

std::vector<Diagnostic> resolve_script(const Bundle& bundle, const Script& script) {
  std::vector<Diagnostic> out;
  auto error = [&](const Statement& s, const char* code, std::string message) {
    out.push_back({code, {}, s.pos, std::move(message), Severity::Error});
  };
  auto thimac = [&](const Statement& s, const std::string& id) {
    if (!bundle.model.find_thimac(id)) error(s, "UnknownThimac", "no thimac named '" + id + "'");
  };
  auto event = [&](const Statement& s, const std::string& id) {
    if (auto target = end_marker_target(id)) {
      if (!bundle.find_composite(*target))
        error(s, "UnknownEvent", "'" + *target + "' is not a composite event");
    } else if (!bundle.find_event(id)) {
      error(s, "UnknownEvent", "no event named '" + id + "'");
    }
  };
  for (const auto& s : script.statements) {
    if (const auto* c = std::get_if<CreateInstance>(&s.kind)) {
      thimac(s, c->thimac);
    } else if (const auto* a = std::get_if<SetAttribute>(&s.kind)) {
      thimac(s, a->thimac);
    } else if (const auto* f = std::get_if<Flow>(&s.kind)) {
      thimac(s, f->source.thimac);
      thimac(s, f->target.thimac);
    } else if (const auto* t = std::get_if<TriggerEvent>(&s.kind)) {
      event(s, t->event);
    } else {
      event(s, std::get<ConditionalPrint>(s.kind).event);
    }
  }
  return out;
}

}  // namespace tmkit::dsl
