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
#include <map>
#include <random>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "test_support.hpp"
#include "tmkit/compose.hpp"
#include "tmkit/error.hpp"
#include "tmkit/expr.hpp"
#include "tmkit/notation.hpp"
#include "tmkit/validate.hpp"

namespace tmkit {
namespace {

using testing::load_corpus_bundle;

constexpr ActionKind kKinds[] = {ActionKind::Create, ActionKind::Process, ActionKind::Release,
                                 ActionKind::Transfer, ActionKind::Receive};

// Written out by hand from the legality table; kept separate from the
// implementation on purpose.
const std::set<std::string> kSameMachineLegal = {
    "transfer>receive", "receive>process", "receive>release", "process>release",
    "create>process",   "create>release",  "release>transfer"};

std::string pair_key(ActionKind a, ActionKind b) {
  return std::string(to_string(a)) + ">" + to_string(b);
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

StaticModel two_nodes(ActionKind a, ActionKind b, bool same_machine, Notation notation) {
  StaticModel m;
  m.notation = notation;
  m.thimacs = {{"A", "A", std::nullopt, false, {}}, {"B", "B", std::nullopt, false, {}}};
  m.nodes = {{"a", "A", a, "", {}, std::nullopt},
             {"b", same_machine ? "A" : "B", b, "", {}, std::nullopt}};
  m.flows = {{"a", "b"}};
  return m;
}

TEST(FlowLegality, SameMachinePairsMatchOracle) {
  int legal = 0;
  for (auto a : kKinds) {
    for (auto b : kKinds) {
      bool expected = kSameMachineLegal.count(pair_key(a, b)) > 0;
      legal += expected;
      EXPECT_EQ(same_machine_flow_legal(a, b), expected) << pair_key(a, b);
      auto ds = validate_static_model(two_nodes(a, b, true, Notation::Canonical));
      EXPECT_EQ(has_code(ds, "FlowOrderViolation"), !expected) << pair_key(a, b);
    }
  }
  EXPECT_EQ(legal, 7);
}

TEST(FlowLegality, CrossMachinePairs) {
  for (auto a : kKinds) {
    for (auto b : kKinds) {
      bool both_transfer = a == ActionKind::Transfer && b == ActionKind::Transfer;
      bool neither_transfer = a != ActionKind::Transfer && b != ActionKind::Transfer;
      EXPECT_EQ(cross_machine_flow_legal(a, b, Notation::Canonical), both_transfer)
          << pair_key(a, b);
      EXPECT_EQ(cross_machine_flow_legal(a, b, Notation::Simplified),
                both_transfer || neither_transfer)
          << pair_key(a, b);
    }
  }
}

TEST(ValidateStaticModel, CorpusModelsAreClean) {
  for (const char* name : testing::kModels) {
    Bundle b = load_corpus_bundle(name);
    EXPECT_TRUE(validate_static_model(b.model).empty()) << name;
    EXPECT_TRUE(validate_bundle(b).empty()) << name;
    for (const auto& e : b.events) EXPECT_TRUE(check_region(e.region, b.model)) << e.id;
  }
}

TEST(ValidateStaticModel, EmptyModelIsClean) {
  EXPECT_TRUE(validate_static_model(StaticModel{}).empty());
}

TEST(ValidateStaticModel, ReceiveToTransferInsideOneMachine) {
  auto ds = validate_static_model(
      two_nodes(ActionKind::Receive, ActionKind::Transfer, true, Notation::Simplified));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "FlowOrderViolation");
  EXPECT_EQ(ds[0].element, "flow#0");
}

TEST(ValidateStaticModel, CollectsEveryProblem) {
  StaticModel m;
  m.thimacs = {{"A", "A", std::string("B"), false, {{"x", Value::integer(0)}, {"x", Value::integer(1)}}},
               {"B", "B", std::string("A"), false, {}},
               {"A", "A", std::nullopt, false, {}}};
  m.nodes = {{"n", "A", ActionKind::Process, "", {"y := Zed.q"}, std::nullopt},
             {"n", "Nowhere", ActionKind::Create, "", {}, std::nullopt}};
  m.flows = {{"n", "missing"}};
  m.triggers = {{"n", "n", std::nullopt}, {"n", "n", std::string("1 +")}};
  auto ds = validate_static_model(m);
  for (const char* code : {"DuplicateId", "DuplicateVariable", "ParentCycle", "UnknownThimac",
                           "UnknownNode", "SelfTrigger", "BadExpression", "UpdateScopeViolation"})
    EXPECT_TRUE(has_code(ds, code)) << code;
}

TEST(ValidateStaticModel, SameMachineTriggerIsOnlyAWarning) {
  StaticModel m = two_nodes(ActionKind::Create, ActionKind::Process, true, Notation::Simplified);
  m.flows.clear();
  m.triggers = {{"a", "b", std::nullopt}};
  auto ds = validate_static_model(m);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "SameMachineTrigger");
  EXPECT_EQ(ds[0].severity, Severity::Warning);
  EXPECT_FALSE(has_errors(ds));
}

TEST(ValidateStaticModel, GuardMustNameDeclaredVariables) {
  StaticModel m = two_nodes(ActionKind::Create, ActionKind::Process, false, Notation::Simplified);
  m.flows.clear();
  m.thimacs[1].variables = {{"n", Value::integer(3)}};
  m.triggers = {{"a", "b", std::string("B.n > 1")}, {"a", "b", std::string("B.missing > 1")}};
  auto ds = validate_static_model(m);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "UnknownVariable");
  EXPECT_EQ(ds[0].element, "trigger#1");
}

TEST(CheckRegion, CartGetsACart) {
  Bundle cart = load_corpus_bundle("cart.tm");
  const EventDef* e2 = cart.find_event("E2");
  ASSERT_NE(e2, nullptr);
  EXPECT_TRUE(check_region(e2->region, cart.model));
  EXPECT_EQ(e2->region.arcs.size(), 1u);
}

TEST(CheckRegion, RejectsEmptyUnknownAndDisconnected) {
  Bundle cart = load_corpus_bundle("cart.tm");
  EXPECT_FALSE(check_region(Region{}, cart.model));
  EXPECT_FALSE(check_region(induced_region(cart.model, {"cart.create", "ghost"}), cart.model));
  EXPECT_FALSE(check_region(induced_region(cart.model, {"cart.create", "add.create"}), cart.model));
  Region bogus = induced_region(cart.model, {"cart.create", "customer.hold"});
  bogus.arcs.push_back({ArcKind::Trigger, "cart.create", "customer.hold"});
  EXPECT_FALSE(check_region(bogus, cart.model));
}

TEST(Compose, HyphenJoinedIds) {
  EXPECT_EQ(composite_id({"E2", "E3"}), "E2-3");
  EXPECT_EQ(composite_id({"E5", "E6"}), "E5-6");
  EXPECT_EQ(composite_id({"E2", "E3", "E5", "E6", "E7"}), "E2-3-5-6-7");
  EXPECT_EQ(composite_id({"Start", "Stop"}), "Start-Stop");
}

TEST(Compose, RegistersInBundle) {
  Bundle edp = load_corpus_bundle("edp.tm");
  edp.composites.clear();
  EXPECT_EQ(compose(edp, {"E2", "E3"}, {"x"}).id, "E2-3");
  EXPECT_EQ(compose(edp, {"E5", "E6"}, {"z"}).id, "E5-6");
  const auto& big = compose(edp, {"E2", "E3", "E5", "E6", "E7"}, {"x", "y", "z"});
  EXPECT_EQ(big.id, "E2-3-5-6-7");
  EXPECT_EQ(edp.composites.size(), 3u);
  EXPECT_NE(edp.find_composite("E5-6"), nullptr);
}

TEST(Compose, Errors) {
  Bundle edp = load_corpus_bundle("edp.tm");
  auto code_of = [&](std::vector<std::string> members, std::vector<std::string> shared) {
    try {
      compose(edp, members, shared);
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of({"E2", "E9"}, {"x"}), "UnknownEvent");
  EXPECT_EQ(code_of({"E2", "E3"}, {"w"}), "UnsharedVariable");
  EXPECT_EQ(code_of({"E2"}, {"x"}), "TooFewMembers");
  EXPECT_EQ(code_of({"E2", "E3"}, {"x"}), "DuplicateId");
}

// Nodes whose id was not present before.
std::vector<const ActionNode*> new_nodes(const StaticModel& before, const StaticModel& after) {
  std::vector<const ActionNode*> out;
  for (const auto& n : after.nodes)
    if (!before.find_node(n.id)) out.push_back(&n);
  return out;
}

TEST(Canonicalize, FlightGainsOneChain) {
  Bundle flight = load_corpus_bundle("flight.tm");
  StaticModel c = canonicalize(flight.model);
  EXPECT_EQ(c.notation, Notation::Canonical);
  EXPECT_EQ(c.nodes.size(), flight.model.nodes.size() + 4);
  EXPECT_TRUE(validate_static_model(c).empty());
  // person.create -> release -> transfer -> transfer -> receive -> flight.admit
  std::string at = "person.create";
  std::vector<ActionKind> kinds;
  for (int i = 0; i < 5; ++i) {
    auto it = std::find_if(c.flows.begin(), c.flows.end(),
                           [&](const FlowArc& f) { return f.from == at; });
    ASSERT_NE(it, c.flows.end());
    at = it->to;
    kinds.push_back(c.find_node(at)->kind);
  }
  EXPECT_EQ(at, "flight.admit");
  EXPECT_EQ(kinds, (std::vector<ActionKind>{ActionKind::Release, ActionKind::Transfer,
                                            ActionKind::Transfer, ActionKind::Receive,
                                            ActionKind::Process}));
}

TEST(Canonicalize, ThreeCrossArcsAddTwelveNodes) {
  StaticModel m;
  m.thimacs = {{"A", "A", std::nullopt, false, {}}, {"B", "B", std::nullopt, true, {}}};
  m.nodes = {{"a1", "A", ActionKind::Create, "", {}, std::nullopt},
             {"a2", "A", ActionKind::Process, "", {}, std::nullopt},
             {"b1", "B", ActionKind::Process, "", {}, std::nullopt},
             {"b2", "B", ActionKind::Process, "", {}, std::nullopt}};
  m.flows = {{"a1", "b1"}, {"a1", "a2"}, {"a2", "b2"}, {"b2", "a2"}};
  StaticModel c = canonicalize(m);
  auto added = new_nodes(m, c);
  EXPECT_EQ(added.size(), 12u);
  EXPECT_EQ(c.nodes.size(), m.nodes.size() + 12);
  // Every added node lies on exactly one in and one out arc.
  for (const ActionNode* n : added) {
    auto in = std::count_if(c.flows.begin(), c.flows.end(), [&](const FlowArc& f) { return f.to == n->id; });
    auto out = std::count_if(c.flows.begin(), c.flows.end(), [&](const FlowArc& f) { return f.from == n->id; });
    EXPECT_EQ(in, 1);
    EXPECT_EQ(out, 1);
  }
  EXPECT_EQ(c.flows.size(), 1u + 3 * 5);
}

TEST(Canonicalize, FixedPointOnCanonicalModels) {
  Bundle order = load_corpus_bundle("order.tm");
  EXPECT_EQ(canonicalize(order.model), order.model);
  for (const char* name : {"cart.tm", "flight.tm", "edp.tm"}) {
    StaticModel once = canonicalize(load_corpus_bundle(name).model);
    EXPECT_EQ(canonicalize(once), once) << name;
  }
}

TEST(Canonicalize, RejectsInvalidModelsAndIdCollisions) {
  StaticModel bad = two_nodes(ActionKind::Receive, ActionKind::Transfer, true, Notation::Simplified);
  EXPECT_THROW(canonicalize(bad), Error);
  StaticModel clash = two_nodes(ActionKind::Create, ActionKind::Process, false, Notation::Simplified);
  clash.nodes.push_back({"f1.release", "A", ActionKind::Process, "", {}, std::nullopt});
  try {
    canonicalize(clash);
    FAIL() << "expected InvalidModel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "InvalidModel");
  }
}

TEST(Simplify, InvertsCanonicalizeOnCorpus) {
  for (const char* name : {"cart.tm", "flight.tm", "edp.tm"}) {
    StaticModel m = load_corpus_bundle(name).model;
    ASSERT_EQ(m.notation, Notation::Simplified);
    EXPECT_EQ(simplify(canonicalize(m)), m) << name;
  }
}

TEST(Simplify, LeavesModelsWithoutChainsAlone) {
  StaticModel order = load_corpus_bundle("order.tm").model;
  StaticModel s = simplify(order);
  EXPECT_EQ(s.nodes, order.nodes);
  EXPECT_EQ(s.flows, order.flows);
  EXPECT_EQ(s.notation, Notation::Simplified);
}

TEST(Simplify, KeepsAnnotatedChains) {
  StaticModel m = two_nodes(ActionKind::Create, ActionKind::Process, false, Notation::Simplified);
  StaticModel c = canonicalize(m);
  for (auto& n : c.nodes)
    if (n.kind == ActionKind::Release) n.emits = "leaving";
  StaticModel s = simplify(c);
  EXPECT_NE(s, m);
  EXPECT_EQ(s.nodes.size(), c.nodes.size());
}

TEST(Simplify, RequiresCanonicalNotation) {
  StaticModel m = two_nodes(ActionKind::Create, ActionKind::Process, false, Notation::Simplified);
  EXPECT_THROW(simplify(m), Error);
}

TEST(NotationProperty, RoundTripOnRandomModels) {
  std::mt19937 rng(20261015);
  for (int i = 0; i < 500; ++i) {
    StaticModel m = testing::random_model(rng);
    ASSERT_TRUE(validate_static_model(m).empty());
    StaticModel c = canonicalize(m);
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_EQ(simplify(c), m) << "model " << i;
  }
}

class MapEnv : public expr::Environment {
 public:
  std::map<std::string, Value> vars;
  Value lookup(const std::string& name) const override {
    auto it = vars.find(name);
    if (it == vars.end()) throw Error("UnboundName", name);
    return it->second;
  }
  void assign(const std::string& name, Value v) override { vars[name] = std::move(v); }
};

TEST(Expr, ArithmeticComparisonAndLists) {
  MapEnv env;
  env.vars["x"] = Value::integer(2);
  env.vars["names"] = Value::list({Value::text("a")});
  auto eval = [&](const std::string& s) { return expr::evaluate(expr::parse_expression(s), env); };
  EXPECT_EQ(eval("x + 1 * 3"), Value::integer(5));
  EXPECT_EQ(eval("(x + 1) * 3"), Value::integer(9));
  EXPECT_EQ(eval("x - 5"), Value::integer(-3));
  EXPECT_EQ(eval("x >= 2 && !(x == 3)"), Value::boolean(true));
  EXPECT_EQ(eval("x < 1 || x != 2"), Value::boolean(false));
  EXPECT_EQ(eval("contains(names, \"a\")"), Value::boolean(true));
  EXPECT_EQ(eval("len(append(names, \"b\"))"), Value::integer(2));
  EXPECT_EQ(eval("len(remove_first(names, \"a\"))"), Value::integer(0));
  EXPECT_EQ(eval("\"P\" + \"@\" + \"D\""), Value::text("P@D"));
}

TEST(Expr, UpdatesRunInOrder) {
  MapEnv env;
  env.vars["x"] = Value::integer(0);
  env.vars["y"] = Value::integer(0);
  expr::execute(expr::parse_updates("y := x + 1; x := y"), env);
  EXPECT_EQ(env.vars["x"], Value::integer(1));
  EXPECT_EQ(env.vars["y"], Value::integer(1));
}

TEST(Expr, Errors) {
  MapEnv env;
  env.vars["t"] = Value::text("a");
  auto code_of = [&](const std::string& s) {
    try {
      expr::evaluate(expr::parse_expression(s), env);
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of("t - 1"), "TypeError");
  EXPECT_EQ(code_of("missing"), "UnboundName");
  EXPECT_EQ(code_of("len(1)"), "TypeError");
  EXPECT_THROW(expr::parse_expression("1 +"), Error);
  EXPECT_THROW(expr::parse_expression("nosuch(1)"), Error);
  EXPECT_THROW(expr::parse_updates("x = 1"), Error);
}

TEST(Value, RenderAndScalarParsing) {
  EXPECT_EQ(parse_scalar("300"), Value::integer(300));
  EXPECT_EQ(parse_scalar("-4"), Value::integer(-4));
  EXPECT_EQ(parse_scalar("Michael"), Value::text("Michael"));
  EXPECT_EQ(Value::text("Michael").render(), "Michael");
  EXPECT_EQ(Value::text("two words").render(), "\"two words\"");
  EXPECT_EQ(Value::text("12").render(), "\"12\"");
  EXPECT_EQ(Value::list({Value::integer(1), Value::text("a")}).render(), "[1,a]");
  EXPECT_THROW(Value::integer(1).as_text(), Error);
}

}  // namespace
}  // namespace tmkit
