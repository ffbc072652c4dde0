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
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "explore.hpp"
#include "test_support.hpp"
#include "tmkit/engine.hpp"
#include "tmkit/error.hpp"

namespace tmkit::engine {
namespace {

using testing::load_corpus_bundle;
using testing::parse_script_or_throw;
using testing::read_corpus;

dsl::Statement statement(const std::string& line) {
  auto script = parse_script_or_throw(line + "\n");
  EXPECT_EQ(script.statements.size(), 1u) << line;
  return script.statements.at(0);
}

std::int64_t int_var(const State& s, const std::string& thimac, const std::string& name) {
  const Value* v = s.variable(thimac, name);
  EXPECT_NE(v, nullptr) << thimac << "." << name;
  return v ? v->as_int() : -1;
}

std::vector<std::string> passengers(const State& s) {
  std::vector<std::string> out;
  for (const Value& v : s.variable("Flight", "passengers")->as_list()) out.push_back(v.as_text());
  return out;
}

std::string bound(const Occurrence& o, const std::string& name) {
  for (const auto& [k, v] : o.binding)
    if (k == name) return v.render();
  return "<unbound>";
}

std::vector<std::string> event_ids(const std::vector<Occurrence>& occ) {
  std::vector<std::string> out;
  for (const auto& o : occ) out.push_back(o.event);
  return out;
}

TEST(InitState, SeedsVariablesAndStorages) {
  Bundle flight = load_corpus_bundle("flight.tm");
  State s = init_state(flight);
  EXPECT_EQ(s.step, 0);
  EXPECT_EQ(int_var(s, "Seats", "x"), 0);
  EXPECT_EQ(int_var(s, "Seats", "y"), 0);
  EXPECT_EQ(int_var(s, "Airplane", "NoSeats"), 0);
  EXPECT_TRUE(passengers(s).empty());
  for (const char* t : {"Person", "Flight", "Airplane"}) {
    ASSERT_TRUE(s.storages.count(t)) << t;
    EXPECT_TRUE(s.storages.at(t).empty());
  }
  EXPECT_FALSE(s.storages.count("Seats"));
  EXPECT_TRUE(s.in_flight.empty());
  EXPECT_EQ(init_state(Bundle{}), State{});
}

TEST(RunScript, SampleScriptSeatsMichael) {
  Bundle flight = load_corpus_bundle("flight.tm");
  RunResult r = run_script(flight, parse_script_or_throw(read_corpus("flight_michael.tms")));
  ASSERT_FALSE(r.error) << r.error->what();
  EXPECT_EQ(int_var(r.state, "Seats", "x"), 1);
  EXPECT_EQ(passengers(r.state), std::vector<std::string>{"Michael"});
  EXPECT_EQ(int_var(r.state, "Airplane", "NoSeats"), 300);
  EXPECT_EQ(event_ids(r.trace.occurrences), (std::vector<std::string>{"E1", "E2", "E3"}));
  for (const auto& o : r.trace.occurrences) {
    EXPECT_EQ(o.time, 6);
    EXPECT_EQ(bound(o, "Name"), "Michael");
  }
  ASSERT_EQ(r.trace.messages.size(), 1u);
  EXPECT_EQ(r.trace.messages[0].text, "OK");
  EXPECT_EQ(r.trace.messages[0].time, 8);
  EXPECT_EQ(r.executed, 9u);
  EXPECT_EQ(r.state.step, 9);
}

TEST(ExecStatement, TriggerWithNothingToMoveIsVacuous) {
  Bundle flight = load_corpus_bundle("flight.tm");
  Engine engine(flight);
  State s = engine.init_state();
  State before = s;
  StepResult r = engine.exec_statement(s, statement("Trigger Event E2"));
  EXPECT_TRUE(r.occurrences.empty());
  EXPECT_TRUE(r.messages.empty());
  EXPECT_EQ(s.step, before.step + 1);
  before.step = s.step;
  EXPECT_EQ(s, before);
}

TEST(ExecStatement, FailedStatementLeavesStateAlone) {
  Bundle flight = load_corpus_bundle("flight.tm");
  Engine engine(flight);
  State s = engine.init_state();
  engine.exec_statement(s, statement("Create Person=P1"));
  State before = s;
  auto code_of = [&](const std::string& line) {
    try {
      engine.exec_statement(s, statement(line));
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of("Create.Person=P1.Name=A -> Flight=Nowhere"), "StorageMiss");
  EXPECT_EQ(code_of("Person=P7.Name=A -> Flight=F"), "UnknownInstance");
  EXPECT_EQ(code_of("Create Boat=B"), "UnknownThimac");
  EXPECT_EQ(code_of("Trigger Event E9"), "UnknownEvent");
  EXPECT_EQ(code_of("Create Airplane A1.NoSeats=3"), "UnknownInstance");
  EXPECT_EQ(s, before);
}

TEST(RunScript, SecondOrderIsRefused) {
  Bundle order = load_corpus_bundle("order.tm");
  RunResult r = run_script(order, parse_script_or_throw(read_corpus("order_double.tms")));
  ASSERT_FALSE(r.error);
  ASSERT_EQ(r.trace.messages.size(), 1u);
  EXPECT_EQ(r.trace.messages[0].text, "error: customer already placed an order");
  EXPECT_EQ(r.trace.messages[0].time, 3);
  EXPECT_EQ(int_var(r.state, "Customer", "orders"), 1);
  // Only the first order reached the Order storage.
  std::size_t forwarded = 0;
  for (const auto& t : r.state.storages.at("Order"))
    if (t.origin == "Customer") ++forwarded;
  EXPECT_EQ(forwarded, 1u);
  auto ids = event_ids(r.trace.occurrences);
  EXPECT_EQ(std::count(ids.begin(), ids.end(), "E3"), 1);
  EXPECT_EQ(std::count(ids.begin(), ids.end(), "E2"), 1);
}

// State after each statement, worked out by hand for NoSeats=1:
//   t  statement            x  y  passengers  events
//   6  flow Ann             1  1  [Ann]       E1 E2 E3
//   7  flow Bob             1  2  [Ann]       E1 E2 E4 + rejection
//   8  flow Cyd             1  2  [Ann]       E1 E2 E4 + rejection
TEST(RunScript, OneSeatTwoPassengersStateTable) {
  Bundle flight = load_corpus_bundle("flight.tm");
  Engine engine(flight);
  State s = engine.init_state();
  for (const char* line : {"Create Airplane=A", "Create Airplane A.NoSeats=1", "Create Flight=F",
                           "Create Person=P1", "Create Person=P2"})
    engine.exec_statement(s, statement(line));
  struct Row {
    const char* line;
    std::int64_t t, x, y;
    std::vector<std::string> passengers, events;
    bool rejected;
  };
  const Row rows[] = {
      {"Person=P1.Name=Ann.release.transfer -> Flight=F", 6, 1, 1, {"Ann"}, {"E1", "E2", "E3"}, false},
      {"Person=P2.Name=Bob.release.transfer -> Flight=F", 7, 1, 2, {"Ann"}, {"E1", "E2", "E4"}, true},
      {"Create.Person=P3.Name=Cyd -> Flight=F", 8, 1, 2, {"Ann"}, {"E1", "E2", "E4"}, true},
  };
  for (const Row& row : rows) {
    StepResult r = engine.exec_statement(s, statement(row.line));
    EXPECT_EQ(s.step, row.t);
    EXPECT_EQ(int_var(s, "Seats", "x"), row.x) << row.line;
    EXPECT_EQ(int_var(s, "Seats", "y"), row.y) << row.line;
    EXPECT_EQ(passengers(s), row.passengers) << row.line;
    EXPECT_EQ(event_ids(r.occurrences), row.events) << row.line;
    for (const auto& o : r.occurrences) EXPECT_EQ(o.time, row.t);
    EXPECT_EQ(r.messages.size(), row.rejected ? 1u : 0u) << row.line;
  }
}

TEST(RunScript, StopsAtFirstErrorWithLineNumber) {
  Bundle flight = load_corpus_bundle("flight.tm");
  RunResult r = run_script(flight, parse_script_or_throw("Create Flight=F\n\nCreate Airplane Z.NoSeats=1\nCreate Person=P\n"));
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.error->code(), "UnknownInstance");
  EXPECT_NE(std::string(r.error->what()).find("line 3"), std::string::npos);
  EXPECT_EQ(r.executed, 1u);
  EXPECT_EQ(r.state.step, 1);
}

TEST(RunScript, Deterministic) {
  const std::pair<const char*, const char*> runs[] = {
      {"flight.tm", "flight_michael.tms"}, {"flight.tm", "flight_capacity.tms"},
      {"order.tm", "order_redeliver.tms"}, {"edp.tm", "edp_conforming.tms"},
      {"cart.tm", "cart_session.tms"}};
  for (const auto& [model, script] : runs) {
    Bundle b = load_corpus_bundle(model);
    dsl::Script s = parse_script_or_throw(read_corpus(script));
    RunResult a = run_script(b, s);
    RunResult c = run_script(b, s);
    EXPECT_EQ(a.state, c.state) << script;
    EXPECT_EQ(a.trace, c.trace) << script;
    EXPECT_EQ(serialize_trace(a.trace), serialize_trace(c.trace)) << script;
  }
}

// Step discipline holds on every explored transition.
template <typename Check>
std::size_t explore_checked(const Bundle& bundle, const std::vector<std::string>& setup,
                            const std::vector<std::string>& alphabet, int depth, Check check) {
  return testing::explore(bundle, setup, alphabet, depth,
                          [&](const State* before, const State& after, const StepResult* r,
                              const std::vector<int>& path) {
                            if (before) {
                              EXPECT_EQ(after.step, r ? before->step + 1 : before->step);
                              if (!r) {
                                EXPECT_EQ(after, *before);
                              }
                            }
                            check(after, r, path);
                          });
}

const std::vector<std::string> kFlightSetup = {"Create Airplane=A", "Create Airplane A.NoSeats=1",
                                              "Create Flight=F", "Create Person=P1",
                                              "Create Person=P2"};
const std::vector<std::string> kFlightAlphabet = {
    "Person=P1.Name=Ann.release.transfer -> Flight=F",
    "Person=P2.Name=Bob.release.transfer -> Flight=F",
    "Trigger Event E2",
    "Trigger Event E3",
    "If E3 print \"OK\""};

TEST(Exhaustive, SeatAcceptedOrRejectedNeverBoth) {
  Bundle flight = load_corpus_bundle("flight.tm");
  std::size_t visited = explore_checked(flight, kFlightSetup, kFlightAlphabet, 3,
          [](const State&, const StepResult* r, const std::vector<int>& path) {
            if (!r) return;
            std::set<std::string> accepted, rejected;
            for (const auto& o : r->occurrences) {
              if (o.event == "E3") accepted.insert(bound(o, "Name"));
              if (o.event == "E4") rejected.insert(bound(o, "Name"));
            }
            for (const auto& n : accepted) EXPECT_FALSE(rejected.count(n)) << testing::describe(path);
          });
  EXPECT_EQ(visited, 5u + 25u + 125u);
}

TEST(Exhaustive, FlightNeverOverbooks) {
  Bundle flight = load_corpus_bundle("flight.tm");
  std::size_t visited = explore_checked(flight, kFlightSetup, kFlightAlphabet, 4,
          [](const State& s, const StepResult*, const std::vector<int>& path) {
            std::int64_t n = s.variable("Airplane", "NoSeats")->as_int();
            std::int64_t x = s.variable("Seats", "x")->as_int();
            auto len = static_cast<std::int64_t>(s.variable("Flight", "passengers")->as_list().size());
            EXPECT_LE(len, n) << testing::describe(path);
            EXPECT_EQ(x, len) << testing::describe(path);
          });
  EXPECT_EQ(visited, 5u + 25u + 125u + 625u);
}

TEST(Exhaustive, OneOpenOrderPerCustomerThimac) {
  Bundle order = load_corpus_bundle("order.tm");
  const std::vector<std::string> alphabet = {
      "Create.Customer=C1.Item=book -> Order=O",
      "Create.Customer=C2.Item=lamp -> Order=O",
      "Trigger Event E4",
      "Trigger Event E3"};
  std::size_t visited = explore_checked(order, {"Create Order=O"}, alphabet, 4,
          [](const State& s, const StepResult* r, const std::vector<int>& path) {
            std::int64_t orders = s.variable("Customer", "orders")->as_int();
            EXPECT_GE(orders, 0);
            EXPECT_LE(orders, 1) << testing::describe(path);
            if (r) {
              auto ids = event_ids(r->occurrences);
              EXPECT_FALSE(std::count(ids.begin(), ids.end(), "E2") &&
                           std::count(ids.begin(), ids.end(), "E3"))
                  << testing::describe(path);
            }
          });
  EXPECT_GT(visited, 300u);
}

TEST(Exhaustive, ThingsAreNeverDuplicated) {
  const std::pair<const char*, std::vector<std::string>> models[] = {
      {"flight.tm", kFlightAlphabet},
      {"cart.tm", {"Create Cart=K", "Create Item=I1", "Create.Customer=C.Item=I1 -> Cart=K",
                   "Trigger Event E3", "Trigger Event E4"}}};
  for (const auto& [model, alphabet] : models) {
    Bundle b = load_corpus_bundle(model);
    std::vector<std::string> setup = std::string(model) == "flight.tm" ? kFlightSetup
                                                                     : std::vector<std::string>{};
    std::size_t visited = explore_checked(b, setup, alphabet, 3,
            [](const State& s, const StepResult*, const std::vector<int>& path) {
              std::set<std::string> seen;
              std::size_t total = s.in_flight.size();
              for (const auto& [_, things] : s.storages) total += things.size();
              auto note = [&](const Thing& t) {
                EXPECT_TRUE(seen.insert(t.id).second) << t.id << " " << testing::describe(path);
                EXPECT_EQ(s.count_thing(t.id), 1u);
              };
              for (const auto& [_, things] : s.storages)
                for (const auto& t : things) note(t);
              for (const auto& t : s.in_flight) note(t);
              EXPECT_EQ(seen.size(), total);
            });
    EXPECT_EQ(visited, 5u + 25u + 125u) << model;
  }
}

TEST(DetectOccurrences, RequiresEveryRegionNode) {
  Bundle flight = load_corpus_bundle("flight.tm");
  StepRecord record;
  record.firings.push_back({"person.create", {{"Name", Value::text("Ann")}}});
  EXPECT_TRUE(detect_occurrences(flight, record, 1).empty());
  record.firings.push_back({"flight.admit", {{"Name", Value::text("Ann")}}});
  auto occ = detect_occurrences(flight, record, 4);
  ASSERT_EQ(occ.size(), 1u);
  EXPECT_EQ(occ[0], (Occurrence{"E1", 4, {{"Name", Value::text("Ann")}}}));
}

TEST(DetectOccurrences, ParamsMustAgreeAcrossNodes) {
  Bundle flight = load_corpus_bundle("flight.tm");
  StepRecord record;
  record.firings.push_back({"person.create", {{"Name", Value::text("Ann")}}});
  record.firings.push_back({"flight.admit", {{"Name", Value::text("Bob")}}});
  EXPECT_TRUE(detect_occurrences(flight, record, 1).empty());
  record.firings.push_back({"flight.admit", {{"Name", Value::text("Ann")}}});
  EXPECT_EQ(detect_occurrences(flight, record, 1).size(), 1u);
}

}  // namespace
}  // namespace tmkit::engine
