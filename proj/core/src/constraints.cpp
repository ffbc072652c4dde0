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

#include "tmkit/constraints.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tmkit/error.hpp"

namespace tmkit::constraints {
namespace {

std::string witness_text(const Binding& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ',';
    out += b[i].first + "=" + b[i].second.render();
  }
  return out + ")";
}

const CompositeEvent& require_composite(const Bundle& bundle, const std::string& id) {
  const CompositeEvent* c = bundle.find_composite(id);
  if (!c) throw Error("UnknownComposite", "'" + id + "' is not a composite event");
  return *c;
}

// Occurrence indices grouped by time, per event.
using ByTime = std::map<std::int64_t, std::map<std::string, std::vector<std::size_t>>>;

ByTime group(const Trace& trace) {
  ByTime out;
  for (std::size_t i = 0; i < trace.occurrences.size(); ++i) {
    const auto& o = trace.occurrences[i];
    out[o.time][o.event].push_back(i);
  }
  return out;
}

// Merges `b` into `acc` for the shared names; false on disagreement.
bool agree(Binding& acc, const Binding& b, const std::vector<std::string>& shared) {
  for (const auto& name : shared) {
    const Value* v = find_binding(b, name);
    if (!v) continue;
    if (const Value* have = find_binding(acc, name)) {
      if (!(*have == *v)) return false;
    } else {
      acc.emplace_back(name, *v);
    }
  }
  return true;
}

// Enumerates consistent selections, one occurrence per member (in member
// order), calling `visit(indices, merged)` for each. `visit` returns false
// to stop.
template <typename Visit>
bool select(const Trace& trace, const std::vector<std::vector<std::size_t>>& choices,
            const std::vector<std::string>& shared, std::size_t k, std::vector<std::size_t>& picked,
            const Binding& acc, Visit& visit) {
  if (k == choices.size()) return visit(picked, acc);
  for (std::size_t idx : choices[k]) {
    Binding next = acc;
    if (!agree(next, trace.occurrences[idx].binding, shared)) continue;
    picked.push_back(idx);
    bool go_on = select(trace, choices, shared, k + 1, picked, next, visit);
    picked.pop_back();
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

std::vector<Violation> check_binding(const Trace& trace, const Bundle& bundle,
                                     const std::string& composite,
                                     const std::optional<std::string>& anchor,
                                     const std::string& constraint_id) {
  const CompositeEvent& c = require_composite(bundle, composite);
  std::string anchor_event = anchor.value_or(c.members.front());
  if (std::find(c.members.begin(), c.members.end(), anchor_event) == c.members.end())
    throw Error("UnknownEvent", "'" + anchor_event + "' is not a member of " + c.id);
  std::string id = constraint_id.empty() ? c.id : constraint_id;

  std::vector<Violation> out;
  ByTime grouped = group(trace);
  for (std::size_t i = 0; i < trace.occurrences.size(); ++i) {
    const auto& o = trace.occurrences[i];
    if (o.event != anchor_event) continue;
    const auto& at = grouped[o.time];
    std::vector<std::vector<std::size_t>> choices;
    bool possible = true;
    for (const auto& m : c.members) {
      if (m == anchor_event) continue;
      auto it = at.find(m);
      if (it == at.end()) {
        possible = false;
        break;
      }
      choices.push_back(it->second);
    }
    bool found = false;
    if (possible) {
      Binding acc;
      agree(acc, o.binding, c.shared);
      std::vector<std::size_t> picked;
      auto visit = [&](const std::vector<std::size_t>&, const Binding&) {
        found = true;
        return false;
      };
      select(trace, choices, c.shared, 0, picked, acc, visit);
    }
    if (!found)
      out.push_back({id, o.time, o.binding, {i},
                     anchor_event + " occurred without the other members of " + c.id});
  }
  return out;
}

std::vector<Violation> check_succession(const Trace& trace, const Bundle& bundle,
                                        const std::string& first, const std::string& second,
                                        const std::string& constraint_id) {
  for (const auto& e : {first, second})
    if (!bundle.find_event(e)) throw Error("UnknownEvent", "no event named '" + e + "'");
  std::string id = constraint_id.empty() ? first + "->" + second : constraint_id;

  std::vector<Violation> out;
  const auto& occ = trace.occurrences;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i].event != first) continue;
    bool ok = i + 1 < occ.size() && occ[i + 1].event == second;
    if (ok) {
      for (const auto& [name, value] : occ[i].binding) {
        const Value* other = find_binding(occ[i + 1].binding, name);
        if (other && !(*other == value)) ok = false;
      }
    }
    if (!ok)
      out.push_back({id, occ[i].time, occ[i].binding, {i},
                     first + " is not immediately followed by " + second});
  }
  return out;
}

std::vector<Violation> check_at_most_once(const Trace& trace, const Bundle& bundle,
                                          const std::string& composite,
                                          const std::vector<std::string>& key,
                                          const std::string& constraint_id) {
  const CompositeEvent& c = require_composite(bundle, composite);
  for (const auto& k : key)
    if (std::find(c.shared.begin(), c.shared.end(), k) == c.shared.end())
      throw Error("BadKey", "key '" + k + "' is not shared by " + c.id);
  std::string id = constraint_id.empty() ? c.id : constraint_id;
  std::string marker = end_marker_for(c.id);

  enum class Phase { Active, Ended };
  struct KeyState {
    Phase phase;
    std::size_t first;
  };
  std::map<std::vector<Value>, KeyState> states;
  std::vector<Violation> out;

  auto key_of = [&](const Binding& b) -> std::optional<std::vector<Value>> {
    std::vector<Value> tuple;
    for (const auto& k : key) {
      const Value* v = find_binding(b, k);
      if (!v) return std::nullopt;
      tuple.push_back(*v);
    }
    return tuple;
  };

  for (const auto& [time, events] : group(trace)) {
    std::vector<std::vector<std::size_t>> choices;
    bool complete = true;
    for (const auto& m : c.members) {
      auto it = events.find(m);
      if (it == events.end()) {
        complete = false;
        break;
      }
      choices.push_back(it->second);
    }
    if (complete) {
      std::set<std::vector<Value>> seen;
      std::vector<std::size_t> picked;
      auto visit = [&](const std::vector<std::size_t>& idx, const Binding& merged) {
        auto tuple = key_of(merged);
        if (!tuple || !seen.insert(*tuple).second) return true;
        auto it = states.find(*tuple);
        if (it == states.end()) {
          states.emplace(*tuple, KeyState{Phase::Active, idx.front()});
        } else if (it->second.phase == Phase::Ended) {
          Binding witness;
          for (std::size_t k = 0; k < key.size(); ++k) witness.emplace_back(key[k], (*tuple)[k]);
          out.push_back({id, time, witness, {it->second.first, idx.front()},
                         c.id + " repeated after it ended"});
          it->second.phase = Phase::Active;
        }
        return true;
      };
      select(trace, choices, c.shared, 0, picked, Binding{}, visit);
    }
    if (auto it = events.find(marker); it != events.end()) {
      for (std::size_t idx : it->second) {
        const Binding& b = trace.occurrences[idx].binding;
        for (auto& [tuple, st] : states) {
          bool match = true;
          for (std::size_t k = 0; k < key.size() && match; ++k) {
            const Value* v = find_binding(b, key[k]);
            match = v && *v == tuple[k];
          }
          if (match) st.phase = Phase::Ended;
        }
      }
    }
  }
  return out;
}

std::vector<Violation> check_behavior(const Trace& trace, const BehaviorModel& behavior,
                                      const std::string& constraint_id) {
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < trace.occurrences.size(); ++i)
    if (behavior.contains(trace.occurrences[i].event)) seq.push_back(i);

  std::vector<Violation> out;
  std::set<std::pair<const BehaviorEdge*, Binding>> taken;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    const auto& a = trace.occurrences[seq[k - 1]];
    const auto& b = trace.occurrences[seq[k]];
    const BehaviorEdge* edge = behavior.find_edge(a.event, b.event);
    if (!edge) {
      out.push_back({constraint_id, b.time, b.binding, {seq[k - 1], seq[k]},
                     "no behavior edge " + a.event + " -> " + b.event});
      continue;
    }
    if (edge->repeatable) continue;
    Binding common;
    for (const auto& [name, value] : a.binding)
      if (find_binding(b.binding, name)) common.emplace_back(name, value);
    if (!taken.insert({edge, common}).second)
      out.push_back({constraint_id, b.time, b.binding, {seq[k - 1], seq[k]},
                     "edge " + a.event + " -> " + b.event + " taken again"});
  }
  return out;
}

Report evaluate(const Bundle& bundle, const Trace& trace) {
  Report report;
  std::vector<std::pair<std::size_t, Violation>> all;
  std::size_t order = 0;
  for (const auto& spec : bundle.constraints) {
    std::vector<Violation> found;
    if (const auto* b = std::get_if<BindingRule>(&spec.kind)) {
      found = check_binding(trace, bundle, b->composite, b->anchor, spec.id);
    } else if (const auto* s = std::get_if<SuccessionRule>(&spec.kind)) {
      found = check_succession(trace, bundle, s->first, s->second, spec.id);
    } else {
      const auto& a = std::get<AtMostOnceRule>(spec.kind);
      found = check_at_most_once(trace, bundle, a.composite, a.key, spec.id);
    }
    for (auto& v : found) all.emplace_back(order, std::move(v));
    report.checked.push_back(spec.id);
    ++order;
  }
  if (bundle.behavior) {
    for (auto& v : check_behavior(trace, *bundle.behavior)) all.emplace_back(order, std::move(v));
    report.checked.push_back(kBehaviorId);
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.time, x.first) < std::tie(y.second.time, y.first);
  });
  for (auto& [_, v] : all) report.violations.push_back(std::move(v));
  return report;
}

std::string serialize_report(const Report& report) {
  std::ostringstream os;
  std::string checked;
  for (std::size_t i = 0; i < report.checked.size(); ++i)
    checked += (i ? ", " : "") + report.checked[i];
  if (report.conforming()) {
    os << "CONFORMING checked: " << checked << "\n";
    return os.str();
  }
  for (const auto& v : report.violations)
    os << "VIOLATION " << v.constraint << " t=" << v.time << " " << witness_text(v.witness)
       << ": " << v.message << "\n";
  os << "checked: " << checked << "\n";
  return os.str();
}

}  // namespace tmkit::constraints
