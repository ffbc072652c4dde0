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

#include "tmkit/model.hpp"

#include <algorithm>
#include <set>

namespace tmkit {

const char* to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Create: return "create";
    case ActionKind::Process: return "process";
    case ActionKind::Release: return "release";
    case ActionKind::Transfer: return "transfer";
    case ActionKind::Receive: return "receive";
  }
  return "?";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
  for (auto k : {ActionKind::Create, ActionKind::Process, ActionKind::Release,
                 ActionKind::Transfer, ActionKind::Receive})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Notation notation) {
  return notation == Notation::Canonical ? "canonical" : "simplified";
}

std::optional<Notation> parse_notation(std::string_view text) {
  if (text == "canonical") return Notation::Canonical;
  if (text == "simplified") return Notation::Simplified;
  return std::nullopt;
}

const Thimac* StaticModel::find_thimac(std::string_view id) const {
  for (const auto& t : thimacs)
    if (t.id == id) return &t;
  return nullptr;
}

const ActionNode* StaticModel::find_node(std::string_view id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::optional<std::size_t> StaticModel::node_index(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return std::nullopt;
}

std::vector<const Thimac*> StaticModel::scope_chain(std::string_view thimac_id) const {
  std::vector<const Thimac*> chain;
  std::set<std::string_view> seen;
  const Thimac* t = find_thimac(thimac_id);
  while (t && seen.insert(t->id).second) {
    chain.push_back(t);
    t = t->parent ? find_thimac(*t->parent) : nullptr;
  }
  return chain;
}

bool StaticModel::within(std::string_view thimac_id, std::string_view ancestor) const {
  for (const Thimac* t : scope_chain(thimac_id))
    if (t->id == ancestor) return true;
  return false;
}

const Variable* StaticModel::find_variable_in_scope(std::string_view thimac_id,
                                                    std::string_view name) const {
  for (const Thimac* t : scope_chain(thimac_id))
    for (const auto& v : t->variables)
      if (v.name == name) return &v;
  return nullptr;
}

Region induced_region(const StaticModel& model, std::vector<std::string> nodes) {
  Region region;
  std::set<std::string> members(nodes.begin(), nodes.end());
  region.nodes = std::move(nodes);
  for (const auto& f : model.flows)
    if (members.count(f.from) && members.count(f.to))
      region.arcs.push_back({ArcKind::Flow, f.from, f.to});
  for (const auto& t : model.triggers)
    if (members.count(t.from) && members.count(t.to))
      region.arcs.push_back({ArcKind::Trigger, t.from, t.to});
  return region;
}

bool EventDef::has_param(std::string_view name) const {
  return std::any_of(params.begin(), params.end(),
                     [&](const EventParam& p) { return p.name == name; });
}

bool BehaviorModel::contains(std::string_view event) const {
  return std::find(events.begin(), events.end(), event) != events.end();
}

const BehaviorEdge* BehaviorModel::find_edge(std::string_view from, std::string_view to) const {
  for (const auto& e : edges)
    if (e.from == from && e.to == to) return &e;
  return nullptr;
}

const EventDef* Bundle::find_event(std::string_view id) const {
  for (const auto& e : events)
    if (e.id == id) return &e;
  return nullptr;
}

const CompositeEvent* Bundle::find_composite(std::string_view id) const {
  for (const auto& c : composites)
    if (c.id == id) return &c;
  return nullptr;
}

std::string end_marker_for(std::string_view composite_id) {
  return std::string(kEndMarkerPrefix) + std::string(composite_id);
}

std::optional<std::string> end_marker_target(std::string_view event_id) {
  if (event_id.substr(0, kEndMarkerPrefix.size()) != kEndMarkerPrefix) return std::nullopt;
  return std::string(event_id.substr(kEndMarkerPrefix.size()));
}

}  // namespace tmkit
