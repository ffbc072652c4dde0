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

#include <algorithm>
#include <functional>
#include <sstream>

#include "tmkit/io.hpp"

namespace tmkit::io {
namespace {

std::string q(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

template <typename T, typename Key>
std::vector<const T*> sorted(const std::vector<T>& items, Key key) {
  std::vector<const T*> out;
  for (const auto& i : items) out.push_back(&i);
  std::stable_sort(out.begin(), out.end(),
                   [&](const T* a, const T* b) { return key(*a) < key(*b); });
  return out;
}

void static_view(std::ostream& os, const StaticModel& m) {
  os << "digraph static {\n  compound=true;\n  node [shape=box];\n";
  std::function<void(const std::string*, int)> clusters = [&](const std::string* parent, int depth) {
    std::string pad(depth * 2, ' ');
    for (const Thimac* t : sorted(m.thimacs, [](const Thimac& x) { return x.id; })) {
      bool child = parent ? (t->parent && *t->parent == *parent) : !t->parent.has_value();
      if (!child) continue;
      os << pad << "subgraph " << q("cluster_" + t->id) << " {\n";
      os << pad << "  label=" << q(t->name + (t->has_storage ? " [storage]" : "")) << ";\n";
      for (const ActionNode* n : sorted(m.nodes, [](const ActionNode& x) { return x.id; }))
        if (n->owner == t->id)
          os << pad << "  " << q(n->id) << " [label=" << q(n->id + "\n" + to_string(n->kind))
             << "];\n";
      clusters(&t->id, depth + 1);
      os << pad << "}\n";
    }
  };
  clusters(nullptr, 1);
  for (const FlowArc* f : sorted(m.flows, [](const FlowArc& a) { return std::tie(a.from, a.to); }))
    os << "  " << q(f->from) << " -> " << q(f->to) << ";\n";
  for (const TriggerArc* t :
       sorted(m.triggers, [](const TriggerArc& a) { return std::tie(a.from, a.to); })) {
    os << "  " << q(t->from) << " -> " << q(t->to) << " [style=dashed";
    if (t->guard) os << ", label=" << q(*t->guard);
    os << "];\n";
  }
  os << "}\n";
}

void events_view(std::ostream& os, const Bundle& b) {
  os << "digraph events {\n  node [shape=box];\n";
  for (const EventDef* e : sorted(b.events, [](const EventDef& x) { return x.id; })) {
    std::string label = e->id;
    if (!e->params.empty()) {
      label += "(";
      for (std::size_t i = 0; i < e->params.size(); ++i)
        label += (i ? "," : "") + e->params[i].name;
      label += ")";
    }
    os << "  subgraph " << q("cluster_" + e->id) << " {\n    label=" << q(label) << ";\n";
    std::vector<std::string> nodes = e->region.nodes;
    std::sort(nodes.begin(), nodes.end());
    for (const auto& n : nodes) os << "    " << q(e->id + "::" + n) << " [label=" << q(n) << "];\n";
    for (const ArcRef* a :
         sorted(e->region.arcs, [](const ArcRef& x) { return std::tie(x.from, x.to, x.kind); })) {
      os << "    " << q(e->id + "::" + a->from) << " -> " << q(e->id + "::" + a->to);
      if (a->kind == ArcKind::Trigger) os << " [style=dashed]";
      os << ";\n";
    }
    os << "  }\n";
  }
  os << "}\n";
}

void behavior_view(std::ostream& os, const Bundle& b) {
  os << "digraph behavior {\n  node [shape=ellipse];\n";
  std::vector<std::string> events;
  std::vector<BehaviorEdge> edges;
  if (b.behavior) {
    events = b.behavior->events;
    edges = b.behavior->edges;
  } else {
    for (const auto& e : b.events) events.push_back(e.id);
  }
  std::sort(events.begin(), events.end());
  for (const auto& e : events) os << "  " << q(e) << ";\n";
  std::stable_sort(edges.begin(), edges.end(), [](const BehaviorEdge& x, const BehaviorEdge& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  for (const auto& e : edges) {
    os << "  " << q(e.from) << " -> " << q(e.to);
    if (!e.repeatable) os << " [arrowhead=tee, label=\"norepeat\"]";
    os << ";\n";
  }
  os << "}\n";
}

}  // namespace

std::optional<View> parse_view(std::string_view text) {
  if (text == "static") return View::Static;
  if (text == "events") return View::Events;
  if (text == "behavior") return View::Behavior;
  return std::nullopt;
}

std::string to_dot(const Bundle& bundle, View view) {
  std::ostringstream os;
  switch (view) {
    case View::Static: static_view(os, bundle.model); break;
    case View::Events: events_view(os, bundle); break;
    case View::Behavior: behavior_view(os, bundle); break;
  }
  return os.str();
}

}  // namespace tmkit::io
