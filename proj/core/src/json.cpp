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

#include <set>

#include "json.hpp"

#include "tmkit/io.hpp"
#include "tmkit/validate.hpp"

namespace tmkit::io {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "tmkit/1";

json encode(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int: return v.as_int();
    case Value::Kind::Bool: return v.as_bool();
    case Value::Kind::Text: return v.as_text();
    case Value::Kind::List: {
      json out = json::array();
      for (const auto& item : v.as_list()) out.push_back(encode(item));
      return out;
    }
  }
  return nullptr;
}

json encode(const Binding& b) {
  json out = json::array();
  for (const auto& [name, value] : b) out.push_back(json::array({name, encode(value)}));
  return out;
}

json strings(const std::vector<std::string>& items) { return items; }

// Read access to a JSON object that tracks the pointer path and rejects
// fields it was not asked about.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw DecodeError(path_, message); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j_.items())
      if (!ok.count(key)) throw DecodeError(path_ + "/" + key, "unknown field");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_[key].is_null(); }

  Reader at(const char* key) const {
    if (!j_.contains(key)) throw DecodeError(path_ + "/" + key, "missing field");
    return {j_[key], path_ + "/" + key};
  }

  Reader at(std::size_t i) const { return {j_[i], path_ + "/" + std::to_string(i)}; }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean");
    return j_.get<bool>();
  }

  std::int64_t integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<std::int64_t>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0, n = size(); i < n; ++i) out.push_back(at(i).str());
    return out;
  }

  Value value() const {
    if (j_.is_boolean()) return Value::boolean(j_.get<bool>());
    if (j_.is_number_integer()) return Value::integer(j_.get<std::int64_t>());
    if (j_.is_string()) return Value::text(j_.get<std::string>());
    if (j_.is_array()) {
      std::vector<Value> items;
      for (std::size_t i = 0; i < j_.size(); ++i) items.push_back(at(i).value());
      return Value::list(std::move(items));
    }
    fail("expected an integer, boolean, string or array");
  }

  Binding binding() const {
    Binding out;
    for (std::size_t i = 0, n = size(); i < n; ++i) {
      Reader pair = at(i);
      if (pair.size() != 2) pair.fail("expected a [name, value] pair");
      out.emplace_back(pair.at(std::size_t{0}).str(), pair.at(std::size_t{1}).value());
    }
    return out;
  }

  template <typename F>
  auto list(F each) const {
    std::vector<decltype(each(std::declval<Reader>()))> out;
    for (std::size_t i = 0, n = size(); i < n; ++i) out.push_back(each(at(i)));
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DecodeError("", std::string("malformed JSON: ") + e.what());
  }
}

void check_header(const Reader& r, const char* kind) {
  if (r.at("format").str() != kFormat) throw DecodeError("/format", "unsupported format");
  if (r.at("kind").str() != kind)
    throw DecodeError("/kind", std::string("expected kind \"") + kind + "\"");
}

StaticModel decode_static(const Reader& r) {
  r.expect_object({"notation", "thimacs", "nodes", "flows", "triggers"});
  StaticModel m;
  auto notation = parse_notation(r.at("notation").str());
  if (!notation) r.at("notation").fail("unknown notation");
  m.notation = *notation;
  m.thimacs = r.at("thimacs").list([](const Reader& t) {
    t.expect_object({"id", "name", "parent", "storage", "variables"});
    Thimac out;
    out.id = t.at("id").str();
    out.name = t.at("name").str();
    if (t.has("parent")) out.parent = t.at("parent").str();
    out.has_storage = t.at("storage").boolean();
    out.variables = t.at("variables").list([](const Reader& v) {
      v.expect_object({"name", "initial"});
      return Variable{v.at("name").str(), v.at("initial").value()};
    });
    return out;
  });
  m.nodes = r.at("nodes").list([](const Reader& n) {
    n.expect_object({"id", "owner", "kind", "label", "updates", "emits"});
    ActionNode out;
    out.id = n.at("id").str();
    out.owner = n.at("owner").str();
    auto kind = parse_action_kind(n.at("kind").str());
    if (!kind) n.at("kind").fail("unknown action kind");
    out.kind = *kind;
    out.label = n.at("label").str();
    out.updates = n.at("updates").strings();
    if (n.has("emits")) out.emits = n.at("emits").str();
    return out;
  });
  m.flows = r.at("flows").list([](const Reader& f) {
    f.expect_object({"from", "to"});
    return FlowArc{f.at("from").str(), f.at("to").str()};
  });
  m.triggers = r.at("triggers").list([](const Reader& t) {
    t.expect_object({"from", "to", "guard"});
    TriggerArc out{t.at("from").str(), t.at("to").str(), std::nullopt};
    if (t.has("guard")) out.guard = t.at("guard").str();
    return out;
  });
  return m;
}

std::string pointer_for(const Bundle& b, const std::string& element) {
  auto index_of = [](const auto& items, const std::string& id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < items.size(); ++i)
      if (items[i].id == id) return i;
    return std::nullopt;
  };
  for (const char* kind : {"flow", "trigger"}) {
    std::string prefix = std::string(kind) + "#";
    if (element.rfind(prefix, 0) == 0)
      return "/static/" + std::string(kind) + "s/" + element.substr(prefix.size());
  }
  if (element == "behavior") return "/behavior";
  if (auto i = index_of(b.model.nodes, element)) return "/static/nodes/" + std::to_string(*i);
  if (auto i = index_of(b.model.thimacs, element)) return "/static/thimacs/" + std::to_string(*i);
  if (auto i = index_of(b.events, element)) return "/events/" + std::to_string(*i);
  if (auto i = index_of(b.composites, element)) return "/composites/" + std::to_string(*i);
  if (auto i = index_of(b.constraints, element)) return "/constraints/" + std::to_string(*i);
  return "";
}

Bundle decode_bundle(const json& j) {
  Reader r(j, "");
  r.expect_object({"format", "kind", "static", "events", "composites", "behavior", "constraints"});
  check_header(r, "bundle");
  Bundle b;
  b.model = decode_static(r.at("static"));
  b.events = r.at("events").list([](const Reader& e) {
    e.expect_object({"id", "params", "nodes", "arcs"});
    EventDef out;
    out.id = e.at("id").str();
    out.params = e.at("params").list([](const Reader& p) {
      p.expect_object({"name", "source"});
      return EventParam{p.at("name").str(), p.at("source").str()};
    });
    out.region.nodes = e.at("nodes").strings();
    out.region.arcs = e.at("arcs").list([](const Reader& a) {
      a.expect_object({"kind", "from", "to"});
      std::string kind = a.at("kind").str();
      if (kind != "flow" && kind != "trigger") a.at("kind").fail("expected \"flow\" or \"trigger\"");
      return ArcRef{kind == "flow" ? ArcKind::Flow : ArcKind::Trigger, a.at("from").str(),
                    a.at("to").str()};
    });
    return out;
  });
  b.composites = r.at("composites").list([](const Reader& c) {
    c.expect_object({"id", "members", "shared"});
    return CompositeEvent{c.at("id").str(), c.at("members").strings(), c.at("shared").strings()};
  });
  if (r.has("behavior")) {
    Reader bm = r.at("behavior");
    bm.expect_object({"events", "edges"});
    BehaviorModel model;
    model.events = bm.at("events").strings();
    model.edges = bm.at("edges").list([](const Reader& e) {
      e.expect_object({"from", "to", "repeatable"});
      return BehaviorEdge{e.at("from").str(), e.at("to").str(), e.at("repeatable").boolean()};
    });
    b.behavior = std::move(model);
  }
  b.constraints = r.at("constraints").list([](const Reader& c) {
    c.expect_object({"id", "kind", "composite", "anchor", "first", "second", "key"});
    ConstraintSpec out;
    out.id = c.at("id").str();
    std::string kind = c.at("kind").str();
    if (kind == "binding") {
      BindingRule rule{c.at("composite").str(), std::nullopt};
      if (c.has("anchor")) rule.anchor = c.at("anchor").str();
      out.kind = rule;
    } else if (kind == "succession") {
      out.kind = SuccessionRule{c.at("first").str(), c.at("second").str()};
    } else if (kind == "atmostonce") {
      out.kind = AtMostOnceRule{c.at("composite").str(), c.at("key").strings()};
    } else {
      c.at("kind").fail("unknown constraint kind");
    }
    return out;
  });

  for (const auto& d : validate_bundle(b))
    if (d.severity == Severity::Error)
      throw DecodeError(pointer_for(b, d.element), d.code + ": " + d.message);
  return b;
}

Trace decode_trace(const json& j) {
  Reader r(j, "");
  r.expect_object({"format", "kind", "occurrences", "messages"});
  check_header(r, "trace");
  Trace t;
  t.occurrences = r.at("occurrences").list([](const Reader& o) {
    o.expect_object({"event", "time", "binding"});
    return Occurrence{o.at("event").str(), o.at("time").integer(), o.at("binding").binding()};
  });
  t.messages = r.at("messages").list([](const Reader& m) {
    m.expect_object({"time", "text"});
    return Message{m.at("time").integer(), m.at("text").str()};
  });
  return t;
}

}  // namespace

std::string to_json(const Bundle& b) {
  json thimacs = json::array();
  for (const auto& t : b.model.thimacs) {
    json vars = json::array();
    for (const auto& v : t.variables) vars.push_back({{"name", v.name}, {"initial", encode(v.initial)}});
    json o = {{"id", t.id}, {"name", t.name}, {"storage", t.has_storage}, {"variables", vars}};
    if (t.parent) o["parent"] = *t.parent;
    thimacs.push_back(std::move(o));
  }
  json nodes = json::array();
  for (const auto& n : b.model.nodes) {
    json o = {{"id", n.id},
              {"owner", n.owner},
              {"kind", to_string(n.kind)},
              {"label", n.label},
              {"updates", strings(n.updates)}};
    if (n.emits) o["emits"] = *n.emits;
    nodes.push_back(std::move(o));
  }
  json flows = json::array();
  for (const auto& f : b.model.flows) flows.push_back({{"from", f.from}, {"to", f.to}});
  json triggers = json::array();
  for (const auto& t : b.model.triggers) {
    json o = {{"from", t.from}, {"to", t.to}};
    if (t.guard) o["guard"] = *t.guard;
    triggers.push_back(std::move(o));
  }
  json events = json::array();
  for (const auto& e : b.events) {
    json params = json::array();
    for (const auto& p : e.params) params.push_back({{"name", p.name}, {"source", p.source}});
    json arcs = json::array();
    for (const auto& a : e.region.arcs)
      arcs.push_back({{"kind", a.kind == ArcKind::Flow ? "flow" : "trigger"}, {"from", a.from}, {"to", a.to}});
    events.push_back({{"id", e.id}, {"params", params}, {"nodes", strings(e.region.nodes)}, {"arcs", arcs}});
  }
  json composites = json::array();
  for (const auto& c : b.composites)
    composites.push_back({{"id", c.id}, {"members", strings(c.members)}, {"shared", strings(c.shared)}});
  json behavior = nullptr;
  if (b.behavior) {
    json edges = json::array();
    for (const auto& e : b.behavior->edges)
      edges.push_back({{"from", e.from}, {"to", e.to}, {"repeatable", e.repeatable}});
    behavior = {{"events", strings(b.behavior->events)}, {"edges", edges}};
  }
  json constraints = json::array();
  for (const auto& c : b.constraints) {
    json o = {{"id", c.id}};
    if (const auto* r = std::get_if<BindingRule>(&c.kind)) {
      o["kind"] = "binding";
      o["composite"] = r->composite;
      if (r->anchor) o["anchor"] = *r->anchor;
    } else if (const auto* s = std::get_if<SuccessionRule>(&c.kind)) {
      o["kind"] = "succession";
      o["first"] = s->first;
      o["second"] = s->second;
    } else {
      const auto& a = std::get<AtMostOnceRule>(c.kind);
      o["kind"] = "atmostonce";
      o["composite"] = a.composite;
      o["key"] = strings(a.key);
    }
    constraints.push_back(std::move(o));
  }
  json doc = {{"format", kFormat},
              {"kind", "bundle"},
              {"static",
               {{"notation", to_string(b.model.notation)},
                {"thimacs", thimacs},
                {"nodes", nodes},
                {"flows", flows},
                {"triggers", triggers}}},
              {"events", events},
              {"composites", composites},
              {"behavior", behavior},
              {"constraints", constraints}};
  return doc.dump(2) + "\n";
}

std::string to_json(const Trace& t) {
  json occurrences = json::array();
  for (const auto& o : t.occurrences)
    occurrences.push_back({{"event", o.event}, {"time", o.time}, {"binding", encode(o.binding)}});
  json messages = json::array();
  for (const auto& m : t.messages) messages.push_back({{"time", m.time}, {"text", m.text}});
  json doc = {{"format", kFormat},
              {"kind", "trace"},
              {"occurrences", occurrences},
              {"messages", messages}};
  return doc.dump(2) + "\n";
}

Bundle bundle_from_json(const std::string& text) { return decode_bundle(parse_text(text)); }

Trace trace_from_json(const std::string& text) { return decode_trace(parse_text(text)); }

std::variant<Bundle, Trace> from_json(const std::string& text) {
  json j = parse_text(text);
  Reader r(j, "");
  if (!j.is_object()) r.fail("expected an object");
  std::string kind = r.at("kind").str();
  if (kind == "bundle") return decode_bundle(j);
  if (kind == "trace") return decode_trace(j);
  throw DecodeError("/kind", "unknown kind \"" + kind + "\"");
}

}  // namespace tmkit::io
