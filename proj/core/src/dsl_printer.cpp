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

#include <sstream>

#include "tmkit/dsl.hpp"

namespace tmkit::dsl {
namespace {

std::string literal(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int: return std::to_string(v.as_int());
    case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
    case Value::Kind::Text: return quote(v.as_text());
    case Value::Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.as_list().size(); ++i) {
        if (i) out += ", ";
        out += literal(v.as_list()[i]);
      }
      return out + "]";
    }
  }
  return {};
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void print_thimac(std::ostream& os, const ThimacDecl& t, int indent) {
  std::string pad(indent * 2, ' ');
  os << pad << "thimac " << t.name << (t.storage ? " storage" : "") << " {\n";
  for (const auto& v : t.vars) os << pad << "  var " << v.name << " = " << literal(v.initial) << "\n";
  for (const auto& s : t.stages) {
    os << pad << "  stage " << to_string(s.kind) << " " << s.id;
    if (s.updates) os << " updates " << quote(*s.updates);
    if (s.emits) os << " emits " << quote(*s.emits);
    if (s.label) os << " label " << quote(*s.label);
    os << "\n";
  }
  for (const auto& c : t.children) print_thimac(os, c, indent + 1);
  os << pad << "}\n";
}

struct Printer {
  std::ostream& os;

  void operator()(const NotationDecl& d) { os << "notation " << to_string(d.notation) << "\n"; }
  void operator()(const ThimacDecl& d) { print_thimac(os, d, 0); }
  void operator()(const FlowDecl& d) { os << "flow " << d.from << " -> " << d.to << "\n"; }
  void operator()(const TriggerDecl& d) {
    os << "trigger " << d.from << " -> " << d.to;
    if (d.guard) os << " when " << quote(*d.guard);
    os << "\n";
  }
  void operator()(const EventDecl& d) {
    os << "event " << d.id << "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) os << ", ";
      os << d.params[i].name;
      if (d.params[i].source != d.params[i].name) os << " = " << d.params[i].source;
    }
    os << ") { " << join(d.nodes, " ") << (d.nodes.empty() ? "}" : " }") << "\n";
  }
  void operator()(const CompositeDecl& d) {
    os << "composite " << d.id << " = " << join(d.members, ", ");
    os << " sharing (" << join(d.shared, ", ") << ")\n";
  }
  void operator()(const BehaviorDecl& d) {
    os << "behavior {\n";
    for (const auto& e : d.events) os << "  " << e << "\n";
    for (const auto& e : d.edges)
      os << "  " << e.from << " -> " << e.to << (e.repeatable ? "" : " norepeat") << "\n";
    os << "}\n";
  }
  void operator()(const ConstraintDecl& d) {
    os << "constraint " << d.id << " : ";
    if (const auto* b = std::get_if<BindingRule>(&d.kind)) {
      os << "binding " << b->composite;
      if (b->anchor) os << " anchor " << *b->anchor;
    } else if (const auto* s = std::get_if<SuccessionRule>(&d.kind)) {
      os << "succession " << s->first << ", " << s->second;
    } else {
      const auto& a = std::get<AtMostOnceRule>(d.kind);
      os << "atmostonce " << a.composite << " key (" << join(a.key, ", ") << ")";
    }
    os << "\n";
  }
};

}  // namespace

std::string pretty_print(const ModelAST& ast) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ast.declarations.size(); ++i) {
    if (i && (ast.declarations[i].index() != ast.declarations[i - 1].index() ||
              std::holds_alternative<ThimacDecl>(ast.declarations[i])))
      os << "\n";
    std::visit(Printer{os}, ast.declarations[i]);
  }
  return os.str();
}

}  // namespace tmkit::dsl
