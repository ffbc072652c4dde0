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

#include "tmkit/engine.hpp"

#include <algorithm>
#include <set>

#include "tmkit/expr.hpp"

namespace tmkit::engine {
namespace {

constexpr std::size_t kFiringBudget = 10000;

}  // namespace

// Per-bundle data derived once: compiled expressions, adjacency and
// reachability.
struct Engine::Compiled {
  const StaticModel& model;
  std::vector<std::vector<expr::Assignment>> programs;  // per node
  std::vector<expr::NodePtr> guards;                    // per trigger, may be null
  std::vector<std::vector<std::size_t>> out_flows;      // node -> target nodes
  std::vector<std::vector<std::size_t>> out_triggers;   // node -> trigger indices
  std::vector<std::size_t> trigger_target;
  std::vector<std::set<std::size_t>> reach;             // node -> nodes reachable, itself included

  explicit Compiled(const StaticModel& m) : model(m) {
    std::size_t n = m.nodes.size();
    programs.resize(n);
    out_flows.resize(n);
    out_triggers.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& text : m.nodes[i].updates) {
        auto p = expr::parse_updates(text);
        programs[i].insert(programs[i].end(), p.begin(), p.end());
      }
    for (const auto& f : m.flows) {
      auto a = m.node_index(f.from);
      auto b = m.node_index(f.to);
      if (!a || !b) throw Error("UnknownNode", "flow " + f.from + " -> " + f.to);
      out_flows[*a].push_back(*b);
    }
    for (std::size_t t = 0; t < m.triggers.size(); ++t) {
      const auto& arc = m.triggers[t];
      auto a = m.node_index(arc.from);
      auto b = m.node_index(arc.to);
      if (!a || !b) throw Error("UnknownNode", "trigger " + arc.from + " -> " + arc.to);
      out_triggers[*a].push_back(t);
      trigger_target.push_back(*b);
      guards.push_back(arc.guard ? expr::parse_expression(*arc.guard) : nullptr);
    }
    reach.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        std::size_t k = stack.back();
        stack.pop_back();
        if (!reach[i].insert(k).second) continue;
        for (auto to : out_flows[k]) stack.push_back(to);
        for (auto t : out_triggers[k]) stack.push_back(trigger_target[t]);
      }
    }
  }

  const ActionNode& node(std::size_t i) const { return model.nodes[i]; }

  bool can_reach(std::size_t from, const std::string& thimac) const {
    for (auto k : reach[from])
      if (model.within(model.nodes[k].owner, thimac)) return true;
    return false;
  }
};

namespace {

// Name resolution for one firing: variables along the owner's scope chain
// first, then the flowing thing's attributes. `X.v` names variable v as seen
// from thimac X.
class FiringEnv : public expr::Environment {
 public:
  FiringEnv(const StaticModel& model, State& state, Record& attributes, std::string owner)
      : model_(model), state_(state), attributes_(attributes), owner_(std::move(owner)) {}

  Value lookup(const std::string& name) const override {
    if (const Value* v = find_variable(name)) return *v;
    auto it = attributes_.find(name);
    if (it != attributes_.end()) return it->second;
    throw Error("UnboundName", "'" + name + "' is neither a variable in scope of " + owner_ +
                                   " nor an attribute of the thing");
  }

  void assign(const std::string& name, Value value) override {
    if (Value* v = find_variable(name)) {
      *v = std::move(value);
    } else if (name.find('.') != std::string::npos) {
      throw Error("UnboundName", "no variable '" + name + "'");
    } else {
      attributes_[name] = std::move(value);
    }
  }

 private:
  Value* find_variable(const std::string& name) const {
    std::string scope = owner_;
    std::string var = name;
    if (auto dot = name.find('.'); dot != std::string::npos) {
      scope = name.substr(0, dot);
      var = name.substr(dot + 1);
    }
    for (const Thimac* t : model_.scope_chain(scope)) {
      auto vars = state_.variables.find(t->id);
      if (vars == state_.variables.end()) continue;
      auto it = vars->second.find(var);
      if (it != vars->second.end()) return &it->second;
    }
    return nullptr;
  }

  const StaticModel& model_;
  State& state_;
  Record& attributes_;
  std::string owner_;
};

}  // namespace

// Execution of one statement against a working copy of the state.
class Engine::Step {
 public:
  enum class Mode { Instance, Flow, Region };

  Step(const Compiled& c, State& state) : c_(c), state_(state) {}

  StepResult result;

  void create_instance(const std::string& thimac, const std::string& id) {
    require_thimac(thimac);
    Thing* thing = find_stored(thimac, id);
    if (!thing) thing = &deposit_instance(thimac, id);
    state_.context = thing->attributes;
    mode_ = Mode::Instance;
    for (std::size_t i = 0; i < c_.model.nodes.size(); ++i) {
      if (c_.node(i).owner == thimac && c_.node(i).kind == ActionKind::Create) {
        fire(i, thing->attributes, std::nullopt);
        state_.context = thing->attributes;
        break;
      }
    }
  }

  void set_attribute(const dsl::SetAttribute& s) {
    require_thimac(s.thimac);
    Thing* thing = find_stored(s.thimac, s.instance);
    if (!thing)
      throw Error("UnknownInstance", "no instance " + s.thimac + "=" + s.instance);
    thing->attributes[s.attribute] = s.value;
    auto& vars = state_.variables[s.thimac];
    if (auto it = vars.find(s.attribute); it != vars.end()) it->second = s.value;
  }

  void flow(const dsl::Flow& f) {
    require_thimac(f.source.thimac);
    require_thimac(f.target.thimac);
    Thing* source = find_stored(f.source.thimac, f.source.instance);
    if (!source && f.create) source = &deposit_instance(f.source.thimac, f.source.instance);
    if (!source)
      throw Error("UnknownInstance", "no instance " + f.source.thimac + "=" + f.source.instance);

    const Thing* target = find_stored(f.target.thimac, f.target.instance);
    bool matches = target != nullptr;
    for (const auto& [attr, value] : f.target.attributes) {
      if (!matches) break;
      auto it = target->attributes.find(attr);
      matches = it != target->attributes.end() && it->second == value;
    }
    if (!matches)
      throw Error("StorageMiss", "no instance " + f.target.thimac + "=" + f.target.instance +
                                     " matching the flow in storage");

    std::optional<std::size_t> entry;
    for (std::size_t i = 0; i < c_.model.nodes.size() && !entry; ++i)
      if (c_.node(i).owner == f.source.thimac && c_.node(i).kind == ActionKind::Create &&
          c_.can_reach(i, f.target.thimac))
        entry = i;
    if (!entry)
      throw Error("NoFlowPath", "no create stage of " + f.source.thimac + " leads to " +
                                    f.target.thimac);

    Thing thing;
    thing.id = "#" + std::to_string(++state_.next_thing);
    thing.origin = f.source.thimac;
    thing.attributes = source->attributes;
    for (const auto& [attr, value] : f.source.attributes) thing.attributes[attr] = value;
    thing.attributes[f.target.thimac] = Value::text(f.target.instance);
    state_.context = thing.attributes;

    mode_ = Mode::Flow;
    target_ = f.target.thimac;
    travel(std::move(thing), *entry, false);
  }

  // Fires the region of `event` on its own. Vacuous when no thing is
  // available at the region's entry.
  void trigger_event(const EventDef& event) {
    mode_ = Mode::Region;
    region_.clear();
    for (const auto& n : event.region.nodes) region_.insert(*c_.model.node_index(n));
    std::size_t entry = *c_.model.node_index(event.region.nodes.front());
    const ActionNode& node = c_.node(entry);

    if (node.kind == ActionKind::Create) {
      Thing thing;
      thing.id = "#" + std::to_string(++state_.next_thing);
      thing.origin = node.owner;
      if (state_.context) thing.attributes = *state_.context;
      travel(std::move(thing), entry, true);
      return;
    }
    auto resting = std::find_if(state_.in_flight.begin(), state_.in_flight.end(),
                                [&](const Thing& t) { return t.node == node.id; });
    if (resting != state_.in_flight.end()) {
      Thing thing = std::move(*resting);
      state_.in_flight.erase(resting);
      travel(std::move(thing), entry, false);
      return;
    }
    if (node.kind == ActionKind::Release) {
      auto& stored = state_.storages[node.owner];
      auto it = std::find_if(stored.begin(), stored.end(),
                             [&](const Thing& t) { return t.origin != node.owner; });
      if (it != stored.end()) {
        Thing thing = std::move(*it);
        stored.erase(it);
        travel(std::move(thing), entry, false);
      }
    }
  }

 private:
  void require_thimac(const std::string& id) const {
    if (!c_.model.find_thimac(id)) throw Error("UnknownThimac", "no thimac named '" + id + "'");
  }

  Thing* find_stored(const std::string& thimac, const std::string& id) {
    auto it = state_.storages.find(thimac);
    if (it == state_.storages.end()) return nullptr;
    for (auto& t : it->second)
      if (t.id == id) return &t;
    return nullptr;
  }

  Thing& deposit_instance(const std::string& thimac, const std::string& id) {
    Thing t;
    t.id = id;
    t.origin = thimac;
    t.thimac = thimac;
    t.attributes[thimac] = Value::text(id);
    auto& list = state_.storages[thimac];
    list.push_back(std::move(t));
    return list.back();
  }

  bool flow_eligible(std::size_t from, std::size_t to) const {
    switch (mode_) {
      case Mode::Instance: return false;
      case Mode::Region: return region_.count(to) > 0;
      case Mode::Flow:
        if (c_.model.within(c_.node(from).owner, target_))
          return c_.model.within(c_.node(to).owner, target_);
        return c_.can_reach(to, target_);
    }
    return false;
  }

  bool trigger_allowed(std::size_t to) const { return mode_ != Mode::Region || region_.count(to); }

  // Fires node `n` for a thing with `attributes`. `at` is the node where the
  // thing sits, if any. Returns the node the thing is moved to by a trigger.
  std::optional<std::size_t> fire(std::size_t n, Record& attributes, std::optional<std::size_t> at) {
    if (++firings_ > kFiringBudget)
      throw Error("FiringLimit", "more than " + std::to_string(kFiringBudget) +
                                     " firings in one statement");
    const ActionNode& node = c_.node(n);
    FiringEnv env(c_.model, state_, attributes, node.owner);
    expr::execute(c_.programs[n], env);
    if (node.emits) result.messages.push_back({state_.step, *node.emits});
    result.record.firings.push_back({node.id, scope_of(node.owner, attributes)});

    std::optional<std::size_t> move;
    for (std::size_t t : c_.out_triggers[n]) {
      std::size_t to = c_.trigger_target[t];
      if (!trigger_allowed(to)) continue;
      if (const auto& guard = c_.guards[t]) {
        FiringEnv genv(c_.model, state_, attributes, node.owner);
        Value v = expr::evaluate(guard, genv);
        if (!v.is_bool())
          throw Error("GuardTypeError", "guard of trigger " + node.id + " -> " + c_.node(to).id +
                                            " yields " + kind_name(v.kind()));
        if (!v.as_bool()) continue;
      }
      if (!move && at == n && mode_ != Mode::Instance && c_.node(to).kind == ActionKind::Release) {
        move = to;
        continue;
      }
      fire(to, attributes, std::nullopt);
    }
    return move;
  }

  Record scope_of(const std::string& owner, const Record& attributes) const {
    Record scope = attributes;
    auto chain = c_.model.scope_chain(owner);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      auto vars = state_.variables.find((*it)->id);
      if (vars == state_.variables.end()) continue;
      for (const auto& [name, value] : vars->second) scope[name] = value;
    }
    return scope;
  }

  void travel(Thing thing, std::size_t cur, bool transient) {
    for (;;) {
      thing.node = c_.node(cur).id;
      thing.thimac = c_.node(cur).owner;
      if (auto moved = fire(cur, thing.attributes, cur)) {
        cur = *moved;
        continue;
      }
      auto next = std::find_if(c_.out_flows[cur].begin(), c_.out_flows[cur].end(),
                               [&](std::size_t to) { return flow_eligible(cur, to); });
      if (next == c_.out_flows[cur].end()) break;
      cur = *next;
    }
    if (transient) return;
    const ActionNode& node = c_.node(cur);
    const Thimac* owner = c_.model.find_thimac(node.owner);
    if ((node.kind == ActionKind::Create || node.kind == ActionKind::Receive) && owner &&
        owner->has_storage) {
      thing.node.clear();
      state_.storages[owner->id].push_back(std::move(thing));
    } else {
      state_.in_flight.push_back(std::move(thing));
    }
  }

  const Compiled& c_;
  State& state_;
  Mode mode_ = Mode::Instance;
  std::string target_;
  std::set<std::size_t> region_;
  std::size_t firings_ = 0;
};

const Value* State::variable(const std::string& thimac, const std::string& name) const {
  auto vars = variables.find(thimac);
  if (vars == variables.end()) return nullptr;
  auto it = vars->second.find(name);
  return it == vars->second.end() ? nullptr : &it->second;
}

const Thing* State::find_instance(const std::string& thimac, const std::string& id) const {
  auto it = storages.find(thimac);
  if (it == storages.end()) return nullptr;
  for (const auto& t : it->second)
    if (t.id == id) return &t;
  return nullptr;
}

std::size_t State::count_thing(const std::string& id) const {
  std::size_t n = 0;
  for (const auto& [_, things] : storages)
    n += std::count_if(things.begin(), things.end(), [&](const Thing& t) { return t.id == id; });
  n += std::count_if(in_flight.begin(), in_flight.end(), [&](const Thing& t) { return t.id == id; });
  return n;
}

Engine::Engine(const Bundle& bundle)
    : bundle_(bundle), compiled_(std::make_unique<Compiled>(bundle.model)) {}

Engine::~Engine() = default;

State Engine::init_state() const {
  State s;
  for (const auto& t : bundle_.model.thimacs) {
    if (t.has_storage) s.storages[t.id];
    for (const auto& v : t.variables) s.variables[t.id][v.name] = v.initial;
  }
  return s;
}

StepResult Engine::exec_statement(State& state, const dsl::Statement& statement) const {
  State work = state;
  work.step += 1;
  Step step(*compiled_, work);

  std::vector<Occurrence> extra;
  if (const auto* c = std::get_if<dsl::CreateInstance>(&statement.kind)) {
    step.create_instance(c->thimac, c->instance);
  } else if (const auto* a = std::get_if<dsl::SetAttribute>(&statement.kind)) {
    step.set_attribute(*a);
  } else if (const auto* f = std::get_if<dsl::Flow>(&statement.kind)) {
    step.flow(*f);
  } else if (const auto* t = std::get_if<dsl::TriggerEvent>(&statement.kind)) {
    if (auto target = end_marker_target(t->event)) {
      if (!bundle_.find_composite(*target))
        throw Error("UnknownEvent", "'" + *target + "' is not a composite event");
      extra.push_back({t->event, work.step, t->binding});
    } else if (const EventDef* e = bundle_.find_event(t->event)) {
      step.trigger_event(*e);
    } else {
      throw Error("UnknownEvent", "no event named '" + t->event + "'");
    }
  } else {
    const auto& p = std::get<dsl::ConditionalPrint>(statement.kind);
    if (!bundle_.find_event(p.event) && !end_marker_target(p.event))
      throw Error("UnknownEvent", "no event named '" + p.event + "'");
    const auto& last = work.last_events;
    if (work.last_event_step > 0 && std::find(last.begin(), last.end(), p.event) != last.end())
      step.result.messages.push_back({work.step, p.message});
  }

  StepResult result = std::move(step.result);
  result.occurrences = detect_occurrences(result.record, work.step);
  result.occurrences.insert(result.occurrences.end(), extra.begin(), extra.end());
  if (!result.occurrences.empty()) {
    work.last_event_step = work.step;
    work.last_events.clear();
    for (const auto& o : result.occurrences) work.last_events.push_back(o.event);
  }
  state = std::move(work);
  return result;
}

RunResult Engine::run_script(const dsl::Script& script) const {
  RunResult run;
  run.state = init_state();
  for (const auto& statement : script.statements) {
    try {
      StepResult r = exec_statement(run.state, statement);
      for (auto& o : r.occurrences) run.trace.occurrences.push_back(std::move(o));
      for (auto& m : r.messages) run.trace.messages.push_back(std::move(m));
      ++run.executed;
    } catch (const Error& e) {
      std::string where = statement.pos.known() ? "line " + std::to_string(statement.pos.line) + ": " : "";
      run.error = Error(e.code(), where + e.what());
      break;
    }
  }
  return run;
}

namespace {

// Picks one firing per region node so that every parameter gets a single
// value. Firings are tried in order, so the earliest consistent choice wins.
bool bind_params(const EventDef& event, const std::vector<std::vector<const Firing*>>& choices,
          std::size_t index, std::vector<const Firing*>& picked, Binding& out) {
  if (index == choices.size()) {
    Binding b;
    for (const auto& p : event.params) {
      const Value* value = nullptr;
      for (const Firing* f : picked) {
        auto it = f->scope.find(p.source);
        if (it == f->scope.end()) continue;
        if (value && !(*value == it->second)) return false;
        value = &it->second;
      }
      if (!value) return false;
      b.emplace_back(p.name, *value);
    }
    out = std::move(b);
    return true;
  }
  for (const Firing* f : choices[index]) {
    picked.push_back(f);
    if (bind_params(event, choices, index + 1, picked, out)) return true;
    picked.pop_back();
  }
  return false;
}

}  // namespace

std::vector<Occurrence> Engine::detect_occurrences(const StepRecord& record,
                                                   std::int64_t time) const {
  std::vector<Occurrence> out;
  for (const auto& event : bundle_.events) {
    std::vector<std::vector<const Firing*>> choices;
    bool complete = !event.region.nodes.empty();
    for (const auto& node : event.region.nodes) {
      std::vector<const Firing*> fired;
      for (const auto& f : record.firings)
        if (f.node == node) fired.push_back(&f);
      if (fired.empty()) {
        complete = false;
        break;
      }
      choices.push_back(std::move(fired));
    }
    if (!complete) continue;
    std::vector<const Firing*> picked;
    Binding binding;
    if (bind_params(event, choices, 0, picked, binding)) out.push_back({event.id, time, binding});
  }
  return out;
}

State init_state(const Bundle& bundle) { return Engine(bundle).init_state(); }

RunResult run_script(const Bundle& bundle, const dsl::Script& script) {
  return Engine(bundle).run_script(script);
}

std::vector<Occurrence> detect_occurrences(const Bundle& bundle, const StepRecord& record,
                                           std::int64_t time) {
  return Engine(bundle).detect_occurrences(record, time);
}

}  // namespace tmkit::engine
