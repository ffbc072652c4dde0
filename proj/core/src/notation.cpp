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

#include "tmkit/notation.hpp"

#include <map>
#include <set>

#include "tmkit/error.hpp"
#include "tmkit/validate.hpp"

namespace tmkit {
namespace {

void require_valid(const StaticModel& model, const char* op) {
  for (const auto& d : validate_static_model(model))
    if (d.severity == Severity::Error)
      throw Error("InvalidModel", std::string(op) + ": " + d.code + ": " + d.message);
}

struct Degree {
  int flow_in = 0;
  int flow_out = 0;
  int triggers = 0;
};

}  // namespace

StaticModel canonicalize(const StaticModel& model) {
  require_valid(model, "canonicalize");

  StaticModel out = model;
  out.notation = Notation::Canonical;
  out.flows.clear();

  std::set<std::string> ids;
  for (const auto& n : model.nodes) ids.insert(n.id);

  for (std::size_t i = 0; i < model.flows.size(); ++i) {
    const FlowArc& arc = model.flows[i];
    const ActionNode& a = *model.find_node(arc.from);
    const ActionNode& b = *model.find_node(arc.to);
    if (a.owner == b.owner || a.kind == ActionKind::Transfer) {
      out.flows.push_back(arc);
      continue;
    }
    const std::string prefix = "f" + std::to_string(i + 1) + ".";
    const std::pair<const char*, ActionKind> stages[] = {
        {"release", ActionKind::Release},
        {"transfer_out", ActionKind::Transfer},
        {"transfer_in", ActionKind::Transfer},
        {"receive", ActionKind::Receive}};
    std::string prev = arc.from;
    for (std::size_t s = 0; s < 4; ++s) {
      ActionNode n;
      n.id = prefix + stages[s].first;
      n.owner = s < 2 ? a.owner : b.owner;
      n.kind = stages[s].second;
      if (!ids.insert(n.id).second)
        throw Error("InvalidModel", "canonicalize: generated id '" + n.id + "' already exists");
      out.flows.push_back({prev, n.id});
      prev = n.id;
      out.nodes.push_back(std::move(n));
    }
    out.flows.push_back({prev, arc.to});
  }
  return out;
}

StaticModel simplify(const StaticModel& model) {
  if (model.notation != Notation::Canonical)
    throw Error("InvalidModel", "simplify: model is not in canonical notation");
  require_valid(model, "simplify");

  std::map<std::string, Degree> degree;
  std::map<std::string, std::size_t> out_arc;  // node -> index of its outgoing flow
  for (std::size_t i = 0; i < model.flows.size(); ++i) {
    degree[model.flows[i].from].flow_out++;
    degree[model.flows[i].to].flow_in++;
    out_arc[model.flows[i].from] = i;
  }
  for (const auto& t : model.triggers) {
    degree[t.from].triggers++;
    degree[t.to].triggers++;
  }

  auto plain = [&](const ActionNode* n, ActionKind kind) {
    if (!n || n->kind != kind || n->annotated()) return false;
    const Degree& d = degree[n->id];
    return d.flow_in == 1 && d.flow_out == 1 && d.triggers == 0;
  };
  auto successor = [&](const ActionNode* n) {
    return model.find_node(model.flows[out_arc.at(n->id)].to);
  };

  std::set<std::string> removed_nodes;
  std::set<std::size_t> removed_arcs;
  std::map<std::size_t, FlowArc> replaced;  // arc index -> collapsed arc

  for (std::size_t i = 0; i < model.flows.size(); ++i) {
    const ActionNode* src = model.find_node(model.flows[i].from);
    const ActionNode* rel = model.find_node(model.flows[i].to);
    if (!plain(rel, ActionKind::Release) || src->owner != rel->owner) continue;
    const ActionNode* out_t = successor(rel);
    if (!plain(out_t, ActionKind::Transfer) || out_t->owner != rel->owner) continue;
    const ActionNode* in_t = successor(out_t);
    if (!plain(in_t, ActionKind::Transfer) || in_t->owner == out_t->owner) continue;
    const ActionNode* rcv = successor(in_t);
    if (!plain(rcv, ActionKind::Receive) || rcv->owner != in_t->owner) continue;
    const ActionNode* dst = successor(rcv);
    if (dst->owner != rcv->owner) continue;

    for (const ActionNode* n : {rel, out_t, in_t, rcv}) {
      removed_nodes.insert(n->id);
      removed_arcs.insert(out_arc.at(n->id));
    }
    replaced[i] = FlowArc{src->id, dst->id};
  }

  StaticModel out = model;
  out.notation = Notation::Simplified;
  out.nodes.clear();
  for (const auto& n : model.nodes)
    if (!removed_nodes.count(n.id)) out.nodes.push_back(n);
  out.flows.clear();
  for (std::size_t i = 0; i < model.flows.size(); ++i) {
    if (auto it = replaced.find(i); it != replaced.end()) out.flows.push_back(it->second);
    else if (!removed_arcs.count(i)) out.flows.push_back(model.flows[i]);
  }
  return out;
}

}  // namespace tmkit
