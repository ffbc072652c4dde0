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

#ifndef TMKIT_MODEL_HPP_
#define TMKIT_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tmkit/value.hpp"

namespace tmkit {

// The five generic actions of a machine.
enum class ActionKind { Create, Process, Release, Transfer, Receive };

const char* to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

enum class Notation { Canonical, Simplified };

const char* to_string(Notation notation);
std::optional<Notation> parse_notation(std::string_view text);

struct Variable {
  std::string name;
  Value initial;

  friend bool operator==(const Variable&, const Variable&) = default;
};

// A thing/machine. Sub-thimacs ("modules") name their parent.
struct Thimac {
  std::string id;
  std::string name;
  std::optional<std::string> parent;
  bool has_storage = false;
  std::vector<Variable> variables;

  friend bool operator==(const Thimac&, const Thimac&) = default;
};

struct ActionNode {
  std::string id;
  std::string owner;
  ActionKind kind = ActionKind::Process;
  std::string label;
  // Each entry is one `target := expr` assignment.
  std::vector<std::string> updates;
  // Message text produced whenever the node fires.
  std::optional<std::string> emits;

  bool annotated() const { return !updates.empty() || emits.has_value(); }
  friend bool operator==(const ActionNode&, const ActionNode&) = default;
};

struct FlowArc {
  std::string from;
  std::string to;

  friend bool operator==(const FlowArc&, const FlowArc&) = default;
};

struct TriggerArc {
  std::string from;
  std::string to;
  std::optional<std::string> guard;

  friend bool operator==(const TriggerArc&, const TriggerArc&) = default;
};

struct StaticModel {
  Notation notation = Notation::Simplified;
  std::vector<Thimac> thimacs;
  std::vector<ActionNode> nodes;
  std::vector<FlowArc> flows;
  std::vector<TriggerArc> triggers;

  const Thimac* find_thimac(std::string_view id) const;
  const ActionNode* find_node(std::string_view id) const;
  std::optional<std::size_t> node_index(std::string_view id) const;

  // `id` followed by its ancestors, innermost first. Stops on cycles.
  std::vector<const Thimac*> scope_chain(std::string_view thimac_id) const;
  // True when `thimac_id` is `ancestor` or nested (transitively) inside it.
  bool within(std::string_view thimac_id, std::string_view ancestor) const;
  // The machine-variable declaration visible from `thimac_id`, if any.
  const Variable* find_variable_in_scope(std::string_view thimac_id,
                                         std::string_view name) const;

  friend bool operator==(const StaticModel&, const StaticModel&) = default;
};

enum class ArcKind { Flow, Trigger };

struct ArcRef {
  ArcKind kind = ArcKind::Flow;
  std::string from;
  std::string to;

  friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

// Subdiagram of the static model; the spatial part of an event.
struct Region {
  std::vector<std::string> nodes;
  std::vector<ArcRef> arcs;

  friend bool operator==(const Region&, const Region&) = default;
};

// Every arc of `model` with both endpoints in `nodes`.
Region induced_region(const StaticModel& model, std::vector<std::string> nodes);

// Event parameter `name` is bound from the attribute or machine variable
// called `source` at the moment the region's nodes fire.
struct EventParam {
  std::string name;
  std::string source;

  friend bool operator==(const EventParam&, const EventParam&) = default;
};

struct EventDef {
  std::string id;
  Region region;
  std::vector<EventParam> params;

  bool has_param(std::string_view name) const;
  friend bool operator==(const EventDef&, const EventDef&) = default;
};

struct CompositeEvent {
  std::string id;
  std::vector<std::string> members;
  std::vector<std::string> shared;

  friend bool operator==(const CompositeEvent&, const CompositeEvent&) = default;
};

struct BehaviorEdge {
  std::string from;
  std::string to;
  bool repeatable = true;

  friend bool operator==(const BehaviorEdge&, const BehaviorEdge&) = default;
};

struct BehaviorModel {
  std::vector<std::string> events;
  std::vector<BehaviorEdge> edges;

  bool contains(std::string_view event) const;
  const BehaviorEdge* find_edge(std::string_view from, std::string_view to) const;
  friend bool operator==(const BehaviorModel&, const BehaviorModel&) = default;
};

// Every occurrence of `anchor` (default: the composite's first member) must be
// accompanied, at the same step, by occurrences of all other members.
struct BindingRule {
  std::string composite;
  std::optional<std::string> anchor;

  friend bool operator==(const BindingRule&, const BindingRule&) = default;
};

struct SuccessionRule {
  std::string first;
  std::string second;

  friend bool operator==(const SuccessionRule&, const SuccessionRule&) = default;
};

struct AtMostOnceRule {
  std::string composite;
  std::vector<std::string> key;

  friend bool operator==(const AtMostOnceRule&, const AtMostOnceRule&) = default;
};

using ConstraintKind = std::variant<BindingRule, SuccessionRule, AtMostOnceRule>;

struct ConstraintSpec {
  std::string id;
  ConstraintKind kind;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

// Static model, events, behavior model and constraints of one system.
struct Bundle {
  StaticModel model;
  std::vector<EventDef> events;
  std::vector<CompositeEvent> composites;
  std::optional<BehaviorModel> behavior;
  std::vector<ConstraintSpec> constraints;

  const EventDef* find_event(std::string_view id) const;
  const CompositeEvent* find_composite(std::string_view id) const;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

// Prefix of occurrences that close a composite: "end:E2-3-5-6-7".
inline constexpr std::string_view kEndMarkerPrefix = "end:";

std::string end_marker_for(std::string_view composite_id);
// The composite id of an end marker, or nullopt for ordinary event ids.
std::optional<std::string> end_marker_target(std::string_view event_id);

}  // namespace tmkit

#endif  // TMKIT_MODEL_HPP_
