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

#include <random>
#include <regex>

#include "pamon/compiler/purpose.hpp"
#include "pamon/ltlf/parser.hpp"
#include "pamon/ltlf/semantics.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace pamon;
using ltlf::Formula;
using ltlf::parse;

namespace {

std::vector<std::string> golden_tasks() {
  std::vector<std::string> out;
  for (const auto& r : testing::golden_trace()) out.push_back(r.task);
  return out;
}

std::size_t count_lines(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("purpose formula for job hunting") {
  const Policy p = testing::jobhunting_policy();
  const PurposeFormula pf = build_purpose_formula(p, "jobHunting");
  CHECK(pf.sod_pairs == std::set<TaskPair>{{"interview", "findJobs"}});
  CHECK(pf.bod_pairs == std::set<TaskPair>{{"interview", "propJobs"}});
  CHECK(pf.task_link.at("interview") == std::set<Action>{{"read", "userProfile"}});
  CHECK(pf.task_link.at("findJobs").size() == 2);
  const auto& w = p.workflow("jobHunting");
  CHECK(pf.phi == Formula::conj(w.formula(), ltlf::inject_single_task_constraint(w.tasks)));
}

TEST_CASE("purpose formula errors and degenerate cases") {
  const Policy p = testing::jobhunting_policy();
  CHECK_THROWS_AS(build_purpose_formula(p, "marketing"), UnknownEntityError);

  const Policy f = testing::make_policy({"a"}, {Formula::falsity()});
  const PurposeFormula pf = build_purpose_formula(f, "p");
  CHECK(pf.sod_pairs.empty());
  const SymbolicAutomaton a = build_pre_automaton(pf);
  CHECK(a.across_vars().empty());
  CHECK(a.edge_count() == 0);
  CHECK_FALSE(a.accepting(a.initial()));

  // a workflow built by hand can still name a task the policy lacks
  Policy bad = testing::make_policy({"a"}, {parse("F a")});
  bad.add_purpose("q", WorkflowSpec{"q.wf", {"a"}, {parse("F b")}});
  CHECK_THROWS_WITH_AS(build_purpose_formula(bad, "q"), doctest::Contains("undeclared task 'b'"), Error);
}

TEST_CASE("pre-automaton for a single atom") {
  const Policy p = testing::make_policy({"a"}, {parse("a")});
  const SymbolicAutomaton a = build_pre_automaton(build_purpose_formula(p, "p"));
  CHECK(a.size() == 2);
  REQUIRE(a.out(a.initial()).size() == 1);
  const SymEdge& e = a.out(a.initial())[0];
  CHECK(e.guard.task == "a");
  CHECK_FALSE(e.guard.subject.has_value());
  CHECK(e.guard.checks.empty());
  CHECK(a.accepting(e.to));
  CHECK_FALSE(a.accepting(a.initial()));
}

TEST_CASE("job hunting pre-automaton binds separate subject variables") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton a = build_pre_automaton(build_purpose_formula(p, "jobHunting"));
  CHECK(a.across_vars() == std::vector<std::string>{"sub_interview", "sub_findJobs", "sub_propJobs"});
  CHECK(a.constraints() == std::vector<VarConstraint>{{"sub_findJobs", "sub_interview", Relation::NotEqual},
                                                      {"sub_interview", "sub_propJobs", Relation::Equal}});
  CHECK(a.accepts_tasks(golden_tasks()));
  CHECK_FALSE(a.accepts_tasks({"interview", "optOut"}));

  // every edge for a task carries the same subject slot
  std::map<std::string, std::set<std::optional<std::string>>> slots;
  for (std::size_t q = 0; q < a.size(); ++q) {
    for (const auto& e : a.out(q)) slots[e.guard.task].insert(e.guard.subject);
  }
  using Slot = std::set<std::optional<std::string>>;
  CHECK(slots.at("interview") == Slot{"sub_interview"});
  CHECK(slots.at("findJobs") == Slot{"sub_findJobs"});
  CHECK(slots.at("propJobs") == Slot{"sub_propJobs"});
  CHECK(slots.at("optOut") == Slot{std::nullopt});
  for (std::size_t q = 0; q < a.size(); ++q) {
    for (const auto& e : a.out(q)) CHECK(e.guard.checks.empty());
  }
}

TEST_CASE("property: pre-automaton agrees with evaluate on task traces") {
  std::mt19937 rng(2026);
  const std::vector<std::string> tasks = {"a", "b", "c"};
  for (int i = 0; i < 150; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const std::vector<std::string> ts(tasks.begin(), tasks.begin() + static_cast<long>(k));
    const Formula f = testing::random_formula(rng, ts, 1 + static_cast<int>(rng() % 3));
    const Policy p = testing::make_policy(ts, {f});
    const PurposeFormula pf = build_purpose_formula(p, "p");
    const SymbolicAutomaton a = build_pre_automaton(pf);
    CAPTURE(to_string(f));
    testing::for_each_task_trace(ts, 6, [&](const ltlf::PropTrace& t) {
      std::vector<std::string> word;
      for (const auto& l : t.letters()) word.push_back(*l.begin());
      CHECK(a.accepts_tasks(word) == ltlf::evaluate(pf.phi, t, 0));
    });
  }
}

TEST_CASE("property: pre-automaton state count stays under 2^|subformulas|") {
  std::mt19937 rng(99);
  const std::vector<std::string> tasks = {"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, tasks, 1 + static_cast<int>(rng() % 4));
    const Policy p = testing::make_policy(tasks, {f});
    const PurposeFormula pf = build_purpose_formula(p, "p");
    const SymbolicAutomaton a = build_pre_automaton(pf);
    const std::size_t n = ltlf::subformulas(pf.phi).size();
    CAPTURE(to_string(f));
    if (n < 63) CHECK(a.size() <= (std::size_t{1} << n));
  }
}

TEST_CASE("specialize attaches uses and keeps the graph") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton pre = build_pre_automaton(build_purpose_formula(p, "jobHunting"));
  const SymbolicAutomaton copy = pre;
  const SymbolicAutomaton sp = specialize(pre, p);
  CHECK(pre == copy);
  CHECK(sp.specialized());
  REQUIRE(sp.size() == pre.size());
  CHECK(sp.initial() == pre.initial());
  for (std::size_t s = 0; s < sp.size(); ++s) {
    CHECK(sp.accepting(s) == pre.accepting(s));
    REQUIRE(sp.out(s).size() == pre.out(s).size());
    for (std::size_t i = 0; i < sp.out(s).size(); ++i) {
      const auto& e = sp.out(s)[i];
      CHECK(e.to == pre.out(s)[i].to);
      CHECK(e.guard.subject == pre.out(s)[i].guard.subject);
      CHECK(e.guard.checks == p.uses(e.guard.task));
    }
  }
  CHECK(specialize(sp, p) == sp);

  // same graph against a policy with different uses: only checks differ
  Policy q = p;
  q.add_uses("optOut", "read", "userProfile");
  const SymbolicAutomaton sq = specialize(pre, q);
  std::size_t differing = 0;
  for (std::size_t s = 0; s < sp.size(); ++s) {
    for (std::size_t i = 0; i < sp.out(s).size(); ++i) {
      const auto& x = sp.out(s)[i];
      const auto& y = sq.out(s)[i];
      CHECK(x.to == y.to);
      CHECK(x.guard.task == y.guard.task);
      if (x.guard.checks != y.guard.checks) {
        ++differing;
        CHECK(x.guard.task == "optOut");
      }
    }
  }
  CHECK(differing > 0);

  const Policy tiny = testing::make_policy({"a"}, {parse("a")});
  CHECK_THROWS_AS(specialize(pre, tiny), UnknownEntityError);
}

TEST_CASE("specialize with empty uses accepts what pre accepts") {
  const Policy p = testing::make_policy({"a", "b"}, {parse("a U b")});
  const SymbolicAutomaton pre = build_pre_automaton(build_purpose_formula(p, "p"));
  const SymbolicAutomaton sp = specialize(pre, p);
  testing::for_each_task_trace({"a", "b"}, 5, [&](const ltlf::PropTrace& t) {
    std::vector<std::string> word;
    for (const auto& l : t.letters()) word.push_back(*l.begin());
    CHECK(sp.accepts_tasks(word) == pre.accepts_tasks(word));
  });
}

TEST_CASE("dot export") {
  const Policy p = testing::jobhunting_policy();
  const SymbolicAutomaton pre = build_pre_automaton(build_purpose_formula(p, "jobHunting"));
  const SymbolicAutomaton sp = specialize(pre, p);
  const std::string dp = to_dot(pre);
  const std::string ds = to_dot(sp);
  CHECK(dp.find("// constraints: sub_findJobs != sub_interview; sub_interview = sub_propJobs") != std::string::npos);
  CHECK(count_lines(dp, "shape=") == pre.size());
  CHECK(count_lines(dp, " -> ") == pre.edge_count());
  CHECK(dp.find("label=\"interview [sub_interview]\"") != std::string::npos);
  CHECK(dp.find("label=\"findJobs [sub_findJobs]\"") != std::string::npos);
  CHECK(ds.find("label=\"interview [sub_interview] / read userProfile\"") != std::string::npos);
  CHECK(count_lines(ds, " -> ") == sp.edge_count());
  CHECK(count_lines(dp, "doublecircle") > 0);

  // pre and specialized differ only in the check annotations
  const std::regex checks(" / [^\"]*\"");
  const std::regex header("\\(pre\\)|\\(specialized\\)");
  CHECK(std::regex_replace(std::regex_replace(ds, checks, "\""), header, "") == std::regex_replace(dp, header, ""));

  const Policy tiny = testing::make_policy({"a"}, {parse("a")});
  const std::string dt = to_dot(build_pre_automaton(build_purpose_formula(tiny, "p")));
  CHECK(count_lines(dt, "shape=") == 2);
  CHECK(dt.find("q0 -> q1 [label=\"a\"]") != std::string::npos);
}
