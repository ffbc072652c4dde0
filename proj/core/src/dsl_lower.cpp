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

#include <map>
#include <set>

#include "tmkit/dsl.hpp"
#include "tmkit/validate.hpp"

namespace tmkit::dsl {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits an update block into single assignments at ';' outside quotes.
std::vector<std::string> split_updates(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quote = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quote && c == '\\' && i + 1 < text.size()) {
      cur += c;
      cur += text[++i];
      continue;
    }
    if (c == '"') in_quote = !in_quote;
    if (c == ';' && !in_quote) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

class Lowering {
 public:
  Result<Bundle> run(const ModelAST& ast) {
    std::vector<const EventDecl*> events;
    bool notation_seen = false;
    bool behavior_seen = false;

    for (const auto& decl : ast.declarations) {
      if (const auto* n = std::get_if<NotationDecl>(&decl)) {
        if (notation_seen) error("DuplicateDeclaration", "notation", n->pos, "notation declared twice");
        notation_seen = true;
        bundle_.model.notation = n->notation;
      } else if (const auto* t = std::get_if<ThimacDecl>(&decl)) {
        thimac(*t, std::nullopt);
      } else if (const auto* f = std::get_if<FlowDecl>(&decl)) {
        note("flow#" + std::to_string(bundle_.model.flows.size()), f->pos);
        bundle_.model.flows.push_back({f->from, f->to});
      } else if (const auto* g = std::get_if<TriggerDecl>(&decl)) {
        note("trigger#" + std::to_string(bundle_.model.triggers.size()), g->pos);
        bundle_.model.triggers.push_back({g->from, g->to, g->guard});
      } else if (const auto* e = std::get_if<EventDecl>(&decl)) {
        events.push_back(e);  // regions need every arc, so build them last
      } else if (const auto* c = std::get_if<CompositeDecl>(&decl)) {
        note(c->id, c->pos);
        bundle_.composites.push_back({c->id, c->members, c->shared});
      } else if (const auto* b = std::get_if<BehaviorDecl>(&decl)) {
        if (behavior_seen) error("DuplicateDeclaration", "behavior", b->pos, "behavior declared twice");
        behavior_seen = true;
        behavior(*b);
      } else {
        const auto& k = std::get<ConstraintDecl>(decl);
        note(k.id, k.pos);
        bundle_.constraints.push_back({k.id, k.kind});
      }
    }

    for (const EventDecl* e : events) {
      note(e->id, e->pos);
      for (const auto& n : e->nodes)
        if (!bundle_.model.find_node(n))
          error("UnknownNode", e->id, e->pos, "event " + e->id + " names unknown node '" + n + "'");
      bundle_.events.push_back({e->id, induced_region(bundle_.model, e->nodes), e->params});
    }

    for (auto d : validate_bundle(bundle_)) {
      bool duplicate = false;
      for (const auto& seen : result_.diagnostics)
        duplicate = duplicate || (seen.element == d.element &&
                                  (seen.code == d.code || d.code == "RegionInvalid"));
      if (duplicate) continue;
      auto it = positions_.find(d.element);
      if (it != positions_.end())
        d.position = d.code == "DuplicateId" ? it->second.back() : it->second.front();
      result_.diagnostics.push_back(std::move(d));
    }
    if (!has_errors(result_.diagnostics)) result_.value = std::move(bundle_);
    return std::move(result_);
  }

 private:
  void note(const std::string& element, Position pos) { positions_[element].push_back(pos); }
  void error(std::string code, std::string element, Position pos, std::string message) {
    result_.diagnostics.push_back(
        {std::move(code), std::move(element), pos, std::move(message), Severity::Error});
  }

  void thimac(const ThimacDecl& t, std::optional<std::string> parent) {
    note(t.name, t.pos);
    Thimac out{t.name, t.name, parent, t.storage, {}};
    for (const auto& v : t.vars) out.variables.push_back({v.name, v.initial});
    bundle_.model.thimacs.push_back(std::move(out));
    for (const auto& s : t.stages) {
      note(s.id, s.pos);
      ActionNode n{s.id, t.name, s.kind, s.label.value_or(""), {}, s.emits};
      if (s.updates) n.updates = split_updates(*s.updates);
      bundle_.model.nodes.push_back(std::move(n));
    }
    for (const auto& c : t.children) thimac(c, t.name);
  }

  void behavior(const BehaviorDecl& b) {
    note("behavior", b.pos);
    BehaviorModel m;
    std::set<std::string> seen;
    auto add = [&](const std::string& e) {
      if (seen.insert(e).second) m.events.push_back(e);
    };
    for (const auto& e : b.events) add(e);
    for (const auto& e : b.edges) {
      add(e.from);
      add(e.to);
      m.edges.push_back({e.from, e.to, e.repeatable});
    }
    bundle_.behavior = std::move(m);
  }

  Bundle bundle_;
  Result<Bundle> result_;
  std::map<std::string, std::vector<Position>> positions_;
};

}  // namespace

Result<Bundle> lower(const ModelAST& ast) { return Lowering().run(ast); }

}  // namespace tmkit::dsl
