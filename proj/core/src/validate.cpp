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

#include "tmkit/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tmkit/compose.hpp"
#include "tmkit/error.hpp"
#include "tmkit/expr.hpp"

namespace tmkit {

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d, const std::string& file, bool color) {
  std::string out;
  if (!file.empty()) out += file + ":";
  if (d.position.known())
    out += std::to_string(d.position.line) + ":" + std::to_string(d.position.column) + ":";
  if (!out.empty()) out += " ";
  const bool err = d.severity == Severity::Error;
  if (color) out += err ? "\033[1;31m" : "\033[1;33m";
  out += err ? "error" : "warning";
  if (color) out += "\033[0m";
  out += "[" + d.code + "]: " + d.message;
  if (!d.element.empty()) out += " (" + d.element + ")";
  return out;
}

namespace {

using K = ActionKind;

Diagnostic diag(std::string code, std::string element, std::string message,
                Severity severity = Severity::Error) {
  return Diagnostic{std::move(code), std::move(element), {}, std::move(message), severity};
}

std::string arc_element(const char* kind, std::size_t i) {
  return std::string(kind) + "#" + std::to_string(i);
}

// "Thimac.var" -> (Thimac, var); unqualified names yield nullopt.
std::optional<std::pair<std::string, std::string>> split_qualified(const std::string& name) {
  auto dot = name.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  return std::make_pair(name.substr(0, dot), name.substr(dot + 1));
}

bool declares(const Thimac& t, const std::string& var) {
  return std::any_of(t.variables.begin(), t.variables.end(),
                     [&](const Variable& v) { return v.name == var; });
}

void check_updates(const StaticModel& model, const ActionNode& node,
                   std::vector<Diagnostic>& out) {
  auto in_scope = [&](const std::string& qualified) {
    auto q = split_qualified(qualified);
    for (const Thimac* t : model.scope_chain(node.owner))
      if (t->id == q->first && declares(*t, q->second)) return true;
    return false;
  };
  for (const auto& text : node.updates) {
    std::vector<expr::Assignment> program;
    try {
      program = expr::parse_updates(text);
    } catch (const Error& e) {
      out.push_back(diag("BadExpression", node.id, e.what()));
      continue;
    }
    for (const auto& a : program) {
      std::vector<std::string> names{a.target};
      expr::collect_names(a.value, names);
      for (const auto& n : names) {
        if (split_qualified(n) && !in_scope(n))
          out.push_back(diag("UpdateScopeViolation", node.id,
                             "'" + n + "' is not a variable of " + node.owner +
                                 " or its enclosing machines"));
      }
    }
  }
}

bool reachable_undirected(const std::vector<std::string>& nodes,
                          const std::vector<ArcRef>& arcs) {
  if (nodes.empty()) return false;
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& a : arcs) {
    adj[a.from].push_back(a.to);
    adj[a.to].push_back(a.from);
  }
  std::set<std::string> seen{nodes.front()};
  std::vector<std::string> stack{nodes.front()};
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    for (const auto& m : adj[n])
      if (seen.insert(m).second) stack.push_back(m);
  }
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](const std::string& n) { return seen.count(n) > 0; });
}

}  // namespace

bool same_machine_flow_legal(ActionKind from, ActionKind to) {
  static const std::pair<K, K> kLegal[] = {
      {K::Transfer, K::Receive}, {K::Receive, K::Process}, {K::Receive, K::Release},
      {K::Process, K::Release},  {K::Create, K::Process},  {K::Create, K::Release},
      {K::Release, K::Transfer}};
  return std::find(std::begin(kLegal), std::end(kLegal), std::make_pair(from, to)) !=
         std::end(kLegal);
}

bool cross_machine_flow_legal(ActionKind from, ActionKind to, Notation notation) {
  if (from == K::Transfer && to == K::Transfer) return true;
  return notation == Notation::Simplified && from != K::Transfer && to != K::Transfer;
}

std::vector<Diagnostic> validate_static_model(const StaticModel& model) {
  std::vector<Diagnostic> out;

  std::set<std::string> thimac_ids;
  for (const auto& t : model.thimacs) {
    if (!thimac_ids.insert(t.id).second)
      out.push_back(diag("DuplicateId", t.id, "thimac '" + t.id + "' declared twice"));
    if (t.parent && !model.find_thimac(*t.parent))
      out.push_back(diag("UnknownThimac", t.id, "parent '" + *t.parent + "' does not exist"));
    std::set<std::string> vars;
    for (const auto& v : t.variables)
      if (!vars.insert(v.name).second)
        out.push_back(diag("DuplicateVariable", t.id,
                           "variable '" + v.name + "' declared twice in " + t.id));
  }
  for (const auto& t : model.thimacs) {
    // Walk the parent chain; revisiting any thimac means a cycle.
    std::set<std::string> seen{t.id};
    const Thimac* cur = &t;
    while (cur->parent) {
      const Thimac* up = model.find_thimac(*cur->parent);
      if (!up) break;
      if (!seen.insert(up->id).second) {
        out.push_back(diag("ParentCycle", t.id, "parent chain of " + t.id + " is cyclic"));
        break;
      }
      cur = up;
    }
  }

  std::set<std::string> node_ids;
  for (const auto& n : model.nodes) {
    if (!node_ids.insert(n.id).second)
      out.push_back(diag("DuplicateId", n.id, "node '" + n.id + "' declared twice"));
    if (!model.find_thimac(n.owner)) {
      out.push_back(diag("UnknownThimac", n.id, "owner '" + n.owner + "' does not exist"));
      continue;
    }
    check_updates(model, n, out);
  }

  for (std::size_t i = 0; i < model.flows.size(); ++i) {
    const auto& f = model.flows[i];
    const ActionNode* a = model.find_node(f.from);
    const ActionNode* b = model.find_node(f.to);
    const std::string el = arc_element("flow", i);
    if (!a) out.push_back(diag("UnknownNode", el, "flow source '" + f.from + "' does not exist"));
    if (!b) out.push_back(diag("UnknownNode", el, "flow target '" + f.to + "' does not exist"));
    if (!a || !b) continue;
    const bool same = a->owner == b->owner;
    const bool legal = same ? same_machine_flow_legal(a->kind, b->kind)
                            : cross_machine_flow_legal(a->kind, b->kind, model.notation);
    if (!legal)
      out.push_back(diag("FlowOrderViolation", el,
                         std::string(same ? "same-machine" : "cross-machine") + " flow " +
                             to_string(a->kind) + " -> " + to_string(b->kind) + " (" + f.from +
                             " -> " + f.to + ") is not allowed in " +
                             to_string(model.notation) + " notation"));
  }

  for (std::size_t i = 0; i < model.triggers.size(); ++i) {
    const auto& t = model.triggers[i];
    const ActionNode* a = model.find_node(t.from);
    const ActionNode* b = model.find_node(t.to);
    const std::string el = arc_element("trigger", i);
    if (!a) out.push_back(diag("UnknownNode", el, "trigger source '" + t.from + "' does not exist"));
    if (!b) out.push_back(diag("UnknownNode", el, "trigger target '" + t.to + "' does not exist"));
    if (t.from == t.to) out.push_back(diag("SelfTrigger", el, "node '" + t.from + "' triggers itself"));
    else if (a && b && a->owner == b->owner)
      out.push_back(diag("SameMachineTrigger", el,
                         "trigger " + t.from + " -> " + t.to + " stays inside " + a->owner,
                         Severity::Warning));
    if (!t.guard) continue;
    try {
      std::vector<std::string> names;
      expr::collect_names(expr::parse_expression(*t.guard), names);
      for (const auto& n : names) {
        auto q = split_qualified(n);
        if (!q) continue;
        const Thimac* owner = model.find_thimac(q->first);
        if (!owner || !declares(*owner, q->second))
          out.push_back(diag("UnknownVariable", el, "guard refers to undeclared '" + n + "'"));
      }
    } catch (const Error& e) {
      out.push_back(diag("BadExpression", el, e.what()));
    }
  }
  return out;
}

bool check_region(const Region& region, const StaticModel& model) {
  if (region.nodes.empty()) return false;
  std::set<std::string> members;
  for (const auto& n : region.nodes)
    if (!model.find_node(n) || !members.insert(n).second) return false;
  for (const auto& a : region.arcs) {
    if (!members.count(a.from) || !members.count(a.to)) return false;
    bool exists = false;
    if (a.kind == ArcKind::Flow) {
      for (const auto& f : model.flows) exists = exists || (f.from == a.from && f.to == a.to);
    } else {
      for (const auto& t : model.triggers) exists = exists || (t.from == a.from && t.to == a.to);
    }
    if (!exists) return false;
  }
  return reachable_undirected(region.nodes, region.arcs);
}

std::vector<Diagnostic> validate_bundle(const Bundle& bundle) {
  std::vector<Diagnostic> out = validate_static_model(bundle.model);

  std::set<std::string> ids;
  for (const auto& e : bundle.events) {
    if (!ids.insert(e.id).second)
      out.push_back(diag("DuplicateId", e.id, "event '" + e.id + "' declared twice"));
    std::set<std::string> params;
    for (const auto& p : e.params)
      if (!params.insert(p.name).second)
        out.push_back(diag("DuplicateParam", e.id, "parameter '" + p.name + "' repeated"));
    if (!check_region(e.region, bundle.model))
      out.push_back(diag("RegionInvalid", e.id,
                         "region of " + e.id +
                             " must be a nonempty, weakly connected subdiagram of the model"));
  }

  for (const auto& c : bundle.composites) {
    if (!ids.insert(c.id).second)
      out.push_back(diag("DuplicateId", c.id, "'" + c.id + "' declared twice"));
    if (c.members.size() < 2)
      out.push_back(diag("TooFewMembers", c.id, "a composite binds at least two events"));
    std::set<std::string> params;
    bool resolved = true;
    for (const auto& m : c.members) {
      const EventDef* e = bundle.find_event(m);
      if (!e) {
        out.push_back(diag("UnknownEvent", c.id, "member '" + m + "' is not an event"));
        resolved = false;
        continue;
      }
      for (const auto& p : e->params) params.insert(p.name);
    }
    for (const auto& s : c.shared)
      if (resolved && !params.count(s))
        out.push_back(diag("UnsharedVariable", c.id,
                           "shared variable '" + s + "' is not a parameter of any member"));
    if (!c.members.empty() && composite_id(c.members) != c.id)
      out.push_back(diag("CompositeIdMismatch", c.id,
                         "composite of these members is named '" + composite_id(c.members) + "'"));
  }

  if (bundle.behavior) {
    for (const auto& e : bundle.behavior->events)
      if (!bundle.find_event(e))
        out.push_back(diag("UnknownEvent", "behavior", "'" + e + "' is not an event"));
    for (const auto& edge : bundle.behavior->edges)
      for (const auto* end : {&edge.from, &edge.to})
        if (!bundle.behavior->contains(*end))
          out.push_back(diag("UnknownEvent", "behavior",
                             "edge endpoint '" + *end + "' is not an event of the behavior model"));
  }

  std::set<std::string> constraint_ids;
  for (const auto& spec : bundle.constraints) {
    if (!constraint_ids.insert(spec.id).second)
      out.push_back(diag("DuplicateId", spec.id, "constraint '" + spec.id + "' declared twice"));
    if (const auto* b = std::get_if<BindingRule>(&spec.kind)) {
      const CompositeEvent* c = bundle.find_composite(b->composite);
      if (!c) {
        out.push_back(diag("UnknownComposite", spec.id, "'" + b->composite + "' is not a composite"));
      } else if (b->anchor && std::find(c->members.begin(), c->members.end(), *b->anchor) ==
                                  c->members.end()) {
        out.push_back(diag("UnknownEvent", spec.id,
                           "anchor '" + *b->anchor + "' is not a member of " + c->id));
      }
    } else if (const auto* s = std::get_if<SuccessionRule>(&spec.kind)) {
      for (const auto* e : {&s->first, &s->second})
        if (!bundle.find_event(*e))
          out.push_back(diag("UnknownEvent", spec.id, "'" + *e + "' is not an event"));
    } else if (const auto* m = std::get_if<AtMostOnceRule>(&spec.kind)) {
      const CompositeEvent* c = bundle.find_composite(m->composite);
      if (!c) {
        out.push_back(diag("UnknownComposite", spec.id, "'" + m->composite + "' is not a composite"));
        continue;
      }
      for (const auto& k : m->key)
        if (std::find(c->shared.begin(), c->shared.end(), k) == c->shared.end())
          out.push_back(diag("BadKey", spec.id, "key '" + k + "' is not shared by " + c->id));
    }
  }
  return out;
}

}  // namespace tmkit
