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

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "tmkit/constraints.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/engine.hpp"
#include "tmkit/io.hpp"
#include "tmkit/notation.hpp"
#include "tmkit/script.hpp"

namespace {

using namespace tmkit;

std::string read(const std::string& name) {
  std::ifstream in(std::string(TMKIT_CORPUS_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Bundle bundle(const std::string& name) { return *dsl::load_model(read(name)).value; }

void BM_ParseModel(benchmark::State& state) {
  std::string text = read("edp.tm");
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse_model(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseModel);

void BM_LoadModel(benchmark::State& state) {
  std::string text = read("edp.tm");
  for (auto _ : state) benchmark::DoNotOptimize(dsl::load_model(text));
}
BENCHMARK(BM_LoadModel);

// A flight with `range(0)` seats and as many passengers plus one.
void BM_RunCapacityScript(benchmark::State& state) {
  Bundle flight = bundle("flight.tm");
  const auto seats = state.range(0);
  std::string text = "Create Airplane=A\nCreate Airplane A.NoSeats=" + std::to_string(seats) +
                     "\nCreate Flight=F\n";
  for (std::int64_t i = 0; i <= seats; ++i)
    text += "Create.Person=P" + std::to_string(i) + ".Name=N" + std::to_string(i) + " -> Flight=F\n";
  dsl::Script script = *dsl::parse_script(text).value;
  for (auto _ : state) benchmark::DoNotOptimize(engine::run_script(flight, script));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(script.statements.size()));
}
BENCHMARK(BM_RunCapacityScript)->Range(8, 512);

// Random edp-shaped traces with `range(0)` enrollments.
Trace enrollments(std::int64_t n) {
  std::mt19937 rng(1);
  Trace t;
  for (std::int64_t i = 0; i < n; ++i) {
    Value x = Value::text("e" + std::to_string(rng() % 16));
    Value y = Value::text("d" + std::to_string(rng() % 4));
    Value z = Value::text("p" + std::to_string(rng() % 8));
    std::int64_t time = 2 * i + 1;
    t.occurrences.push_back({"E2", time, {{"x", x}}});
    t.occurrences.push_back({"E3", time, {{"x", x}, {"y", y}}});
    t.occurrences.push_back({"E5", time, {{"z", z}}});
    t.occurrences.push_back({"E6", time, {{"z", z}, {"y", y}}});
    t.occurrences.push_back({"E7", time, {{"x", x}, {"z", z}}});
    if (rng() % 3 == 0)
      t.occurrences.push_back({"end:E2-3-5-6-7", time + 1, {{"x", x}, {"y", y}, {"z", z}}});
  }
  return t;
}

void BM_Evaluate(benchmark::State& state) {
  Bundle edp = bundle("edp.tm");
  Trace trace = enrollments(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(constraints::evaluate(edp, trace));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.occurrences.size()));
}
BENCHMARK(BM_Evaluate)->Range(8, 1024);

void BM_Canonicalize(benchmark::State& state) {
  StaticModel model = bundle("edp.tm").model;
  for (auto _ : state) benchmark::DoNotOptimize(simplify(canonicalize(model)));
}
BENCHMARK(BM_Canonicalize);

void BM_JsonRoundTrip(benchmark::State& state) {
  Bundle edp = bundle("edp.tm");
  for (auto _ : state) benchmark::DoNotOptimize(io::bundle_from_json(io::to_json(edp)));
}
BENCHMARK(BM_JsonRoundTrip);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so main is defined here.
BENCHMARK_MAIN();
