// Copyright 2026 The pamon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <functional>
#include <random>

#include "pamon/engine/engine.hpp"
#include "pamon/ltlf/parser.hpp"
#include "pamon/policy/trace_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_policy.hpp"

using namespace pamon;
using ltlf::parse;
using testing::req;

namespace {

SymbolicAutomaton automaton_for(const Policy& p, const std::string& purpose) {
  return specialize(build_pre_automaton(build_purpose_formula(p, purpose)), p);
}

ConfigSet run(const SymbolicAutomaton& a, const Policy& p, const std::vector<Request>& trace) {
  ConfigSet cfgs = initial_configs(a);
  for (const auto& r : trace) cfgs = step_configs(a, p, cfgs, r);
  return cfgs;
}

bool accepted(const SymbolicAutomaton& a, const Policy& p, const std::vector<Request>& trace) {
  return any_accepting(a, run(a, p, trace));
}

std::vector<Request> ground_requests(const SymbolicAutomaton& a, const Policy& p, const std::string& wid = "wid") {
  std::vector<Request> out;
  for (const auto& l : ground_letters(a, p)) out.push_back({wid, l.subject, l.task, l.owner, a.purpose()});
  return out;
}

/// Calls f on every trace over `letters` of length <= max_len, the empty one first.
void for_each_request_trace(const std::vector<Request>& letters, std::size_t max_len,
                            const std::function<void(const std::vector<Request>&)>& f) {
  std::vector<Request> cur;
  std::function<void()> go = [&] {
    f(cur);
    if (cur.size() == max_len) return;
    for (const auto& r : letters) {
      cur.push_back(r);
      go();
      cur.pop_back();
    }
  };
  go();
}

std::string show(const std::vector<Request>& t) {
  std::string out;
  for (const auto& r : t) out += format_request(r) + "; ";
  return out;
}

}  // namespace

TEST_CASE("binding store") {
  const std::vector<VarConstraint> cs = {{"x", "y", Relation::NotEqual}, {"x", "z", Relation::Equal}};
  BindingStore s;
  CHECK(s.empty());
  auto s1 = s.bind("x", "bob", cs);
  REQUIRE(s1);
  CHECK(s1->get("x") == "bob");
  CHECK(s1->bind("x", "bob", cs) == s1);
  CHECK_FALSE(s1->bind("x", "adam", cs));
  CHECK_FALSE(s1->bind("y", "bob", cs));
  CHECK(s1->bind("y", "adam", cs));
  CHECK_FALSE(s1->admits("z", "adam", cs));
  CHECK(s1->admits("z", "bob", cs));
  CHECK(s1->admits("w", "anyone", cs));
  CHECK(s1->consistent(cs));
  CHECK_FALSE(s.get("x"));
}

TEST_CASE("step on job hunting requests") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton a = automaton_for(p, "jobHunting");
  const auto golden = testing::golden_trace();

  const ConfigSet after_r0 = step_configs(a, p, initial_configs(a), golden[0]);
  REQUIRE_FALSE(after_r0.empty());
  for (const auto& c : after_r0) {
    CHECK(c.store.bindings() == std::map<std::string, std::string>{{"sub_interview", "bob"}});
  }
  // interview has to come first
  CHECK(step_configs(a, p, initial_configs(a), req("adam", "findJobs")).empty());
  // unauthorized: adam cannot write the consent form
  CHECK(run(a, p, {golden[0], req("adam", "optOut")}).empty());
  // bob ran the interview, so bob may not find jobs
  CHECK(run(a, p, {golden[0], golden[1], golden[2], req("bob", "findJobs")}).empty());
  // bob ran the interview, so adam may not propose jobs
  CHECK(run(a, p, {golden[0], golden[1], golden[2], golden[3], req("adam", "propJobs")}).empty());

  const ConfigSet done = run(a, p, golden);
  CHECK(any_accepting(a, done));
  for (std::size_t i = 0; i + 1 < golden.size(); ++i) {
    CHECK_FALSE(accepted(a, p, std::vector<Request>(golden.begin(), golden.begin() + static_cast<long>(i) + 1)));
  }
}

TEST_CASE("witness search on job hunting") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton a = automaton_for(p, "jobHunting");
  const auto golden = testing::golden_trace();
  const auto model = testing::ground_purpose(p, "jobHunting");

  SearchStats stats;
  const auto w = reachable_accepting(a, p, initial_configs(a), "w7", &stats);
  REQUIRE(w);
  CHECK(accepted(a, p, w->requests));
  CHECK(w->requests.size() == testing::oracle_classify(model, {}).shortest);
  CHECK(w->requests.size() == 6);
  for (const auto& r : w->requests) CHECK(r.wid == "w7");
  CHECK(w->substitution.at("sub_interview") == w->substitution.at("sub_propJobs"));
  CHECK(w->substitution.at("sub_interview") != w->substitution.at("sub_findJobs"));
  CHECK(stats.substitutions_tried >= 1);
  CHECK(stats.states_explored > 0);

  // from a satisfied configuration the witness is empty
  const auto done = reachable_accepting(a, p, run(a, p, golden));
  REQUIRE(done);
  CHECK(done->requests.empty());
  CHECK(done->substitution.at("sub_interview") == "bob");

  // after bob interviews, the rest of the run has to keep bob on propJobs
  const auto rest = reachable_accepting(a, p, run(a, p, {golden[0]}));
  REQUIRE(rest);
  std::vector<Request> full{golden[0]};
  full.insert(full.end(), rest->requests.begin(), rest->requests.end());
  CHECK(accepted(a, p, full));

  CHECK_FALSE(reachable_accepting(a, p, {}));

  // only bob holds permissions: separation of duty cannot be met
  const Policy only = testing::onlybob_policy();
  const SymbolicAutomaton b = automaton_for(only, "jobHunting");
  SearchStats none;
  CHECK_FALSE(reachable_accepting(b, only, initial_configs(b), "wid", &none));
  CHECK_FALSE(testing::oracle_classify(testing::ground_purpose(only, "jobHunting"), {}).some_extension_satisfies);
}

TEST_CASE("witness search ignores constraints on tasks never run") {
  // sod between a and b, but the workflow can finish with c alone
  Policy p = testing::make_policy({"a", "b", "c"}, {parse("c | (a & X b)")}, {"s1"});
  p.add_sod("p", "a", "b");
  const SymbolicAutomaton a = automaton_for(p, "p");
  const auto w = reachable_accepting(a, p, initial_configs(a));
  REQUIRE(w);
  CHECK(w->requests.size() == 1);
  CHECK(w->requests[0].task == "c");
  CHECK(w->requests[0].purpose == "p");
}

TEST_CASE("property: witness search and falsifiability agree with the oracle") {
  std::mt19937 rng(7);
  int checked = 0;
  int achievable = 0;
  for (int i = 0; i < 60; ++i) {
    const Policy p = testing::random_policy(rng);
    const SymbolicAutomaton a = automaton_for(p, "p");
    const auto model = testing::ground_purpose(p, "p");
    CAPTURE(print_policy(p));
    for_each_request_trace(ground_requests(a, p), 2, [&](const std::vector<Request>& prefix) {
      const std::string shown = show(prefix);
      CAPTURE(shown);
      const auto o = testing::oracle_classify(model, prefix);
      const ConfigSet cfgs = run(a, p, prefix);
      const auto w = reachable_accepting(a, p, cfgs);
      CHECK(w.has_value() == o.some_extension_satisfies);
      if (!prefix.empty()) {
        CHECK(any_accepting(a, cfgs) == o.sat_now);
        if (o.sat_now) CHECK(falsifiable(a, p, cfgs) == o.some_extension_falsifies);
      }
      if (w) {
        ++achievable;
        std::vector<Request> full = prefix;
        full.insert(full.end(), w->requests.begin(), w->requests.end());
        CHECK(accepted(a, p, full));
        if (!full.empty()) CHECK(ltlf::evaluate(model.phi, model.trace(full), 0));
        if (!prefix.empty() || !w->requests.empty()) CHECK(w->requests.size() >= o.shortest);
      }
      ++checked;
    });
  }
  CHECK(checked > 1000);
  CHECK(achievable > 0);
}

TEST_CASE("property: grounding agrees with the symbolic run and the oracle") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    const Policy p = testing::random_policy(rng);
    const SymbolicAutomaton a = automaton_for(p, "p");
    const auto model = testing::ground_purpose(p, "p");
    const GroundAutomaton g = ground(a, p);
    const Dfa d = determinize(g);
    const Dfa c = complement(d);
    const Dfa cc = complement(c);
    CAPTURE(print_policy(p));
    for_each_request_trace(ground_requests(a, p), 3, [&](const std::vector<Request>& t) {
      const bool sym = accepted(a, p, t);
      CHECK(g.accepts(t) == sym);
      CHECK(d.accepts(t) == sym);
      CHECK(c.accepts(t) == !sym);
      CHECK(cc.accepts(t) == sym);
      if (!t.empty()) CHECK(sym == ltlf::evaluate(model.phi, model.trace(t), 0));
    });
  }
}

TEST_CASE("property: specialized runs accept only authorized traces") {
  std::mt19937 rng(23);
  for (int i = 0; i < 40; ++i) {
    const Policy p = testing::random_policy(rng);
    const SymbolicAutomaton pre = build_pre_automaton(build_purpose_formula(p, "p"));
    const SymbolicAutomaton sp = specialize(pre, p);
    for_each_request_trace(ground_requests(sp, p), 3, [&](const std::vector<Request>& t) {
      const bool all_ok = std::all_of(t.begin(), t.end(), [&](const Request& r) {
        return authorized(p, r.subject, r.task, r.owner, r.purpose);
      });
      const std::string shown = show(t);
      CAPTURE(shown);
      if (accepted(sp, p, t)) CHECK(all_ok);
      if (all_ok) CHECK(accepted(sp, p, t) == accepted(pre, p, t));
    });
  }
}

TEST_CASE("complement of a single atom") {
  const Policy p = testing::make_policy({"a", "b"}, {parse("a")});
  const SymbolicAutomaton a = automaton_for(p, "p");
  const Dfa c = ground_and_complement(a, p);
  const Request ra{"wid", "s1", "a", "o1", "p"};
  const Request rb{"wid", "s1", "b", "o1", "p"};
  CHECK(c.accepts({rb}));
  CHECK_FALSE(c.accepts({ra}));
  CHECK_FALSE(c.accepts({ra, rb}));
  CHECK(c.accepts({rb, ra}));
  CHECK_THROWS_AS(c.accepts({Request{"wid", "s9", "a", "o1", "p"}}), Error);
  CHECK_THROWS_AS(c.accepts({Request{"wid", "s1", "a", "o1", "q"}}), Error);
  CHECK(c.letters().size() == 2);
}

TEST_CASE("complement of job hunting") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton a = automaton_for(p, "jobHunting");
  const Dfa c = ground_and_complement(a, p);
  const auto golden = testing::golden_trace();
  CHECK(c.accepts({golden[0], golden[1]}));
  CHECK_FALSE(c.accepts(golden));
  CHECK(c.accepts({golden[0], golden[1], golden[2], req("bob", "findJobs")}));
  CHECK(c.letters().size() == 27);
}

TEST_CASE("grounding cap") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton a = automaton_for(p, "jobHunting");
  CHECK_THROWS_AS(ground(a, p, 3), GroundingCapExceeded);
  const GroundAutomaton g = ground(a, p);
  CHECK_THROWS_AS(determinize(g, 2), GroundingCapExceeded);
  try {
    ground(a, p, 5);
    FAIL("expected the cap to trip");
  } catch (const GroundingCapExceeded& e) {
    CHECK(e.cap() == 5);
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
  const auto golden = testing::golden_trace();
  const ConfigSet done = run(a, p, golden);
  CHECK(falsifiable(a, p, done, done.size()));  // the first letter already refutes

  // F a stays satisfied forever, so the whole subset space is explored
  const Policy f = testing::make_policy({"a", "b"}, {parse("F a")}, {"s1", "s2"});
  const SymbolicAutomaton fa = automaton_for(f, "p");
  const ConfigSet after = run(fa, f, {Request{"wid", "s1", "a", "o1", "p"}});
  CHECK_FALSE(falsifiable(fa, f, after));
  CHECK_FALSE(falsifiable(fa, f, after, after.size()));
  CHECK_THROWS_AS(falsifiable(fa, f, after, after.size() - 1), GroundingCapExceeded);
}
