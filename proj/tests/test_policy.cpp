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

#include <map>
#include <random>

#include "pamon/ltlf/parser.hpp"
#include "pamon/ltlf/semantics.hpp"
#include "support/fixtures.hpp"

using namespace pamon;
using pamon::testing::req;

namespace {

const char* kTinyWorkflow = "tasks: interview, findJobs;\nconstraint: F findJobs;\n";

WorkflowResolver resolver(std::map<std::string, std::string> files) {
  return [files](const std::string& name) {
    auto it = files.find(name);
    if (it == files.end()) throw Error("no such workflow");
    return it->second;
  };
}

Policy load(const std::string& facts) {
  return load_policy(facts, resolver({{"tiny.wf", kTinyWorkflow}}));
}

const char* kTinyHead =
    "subject bob\nowner sam\nobject userProfile\nobject jobExpList\naction read\n"
    "task interview\ntask findJobs\npurpose jobHunting tiny.wf\n";

std::size_t error_line(const std::string& facts) {
  try {
    load(facts);
  } catch (const PolicyError& e) {
    return e.line();
  }
  return 999;
}

}  // namespace

TEST_CASE("load_policy reads rcp and dcp tuples in owner-first order") {
  const Policy p = load(std::string(kTinyHead) + "rcp bob read jobExpList\ndcp sam userProfile jobHunting\n");
  CHECK(p.rcp("bob", "read", "jobExpList"));
  CHECK(p.dcp("sam", "userProfile", "jobHunting"));
  CHECK_FALSE(p.dcp("sam", "jobExpList", "jobHunting"));
  CHECK(p.subjects() == std::vector<std::string>{"bob"});
  CHECK(p.workflow("jobHunting").tasks == std::vector<std::string>{"interview", "findJobs"});
}

TEST_CASE("empty facts file is a valid empty policy") {
  const Policy p = load("");
  CHECK(p.purposes().empty());
  CHECK(p.subjects().empty());
}

TEST_CASE("purpose without workflow is rejected") {
  CHECK_THROWS_WITH_AS(load("purpose jobHunting\n"), doctest::Contains("has no workflow"), PolicyError);
  CHECK_THROWS_WITH_AS(load("task a\npurpose p missing.wf\n"), doctest::Contains("cannot read workflow"),
                       PolicyError);
}

TEST_CASE("referential integrity errors name the tuple and line") {
  const std::string facts = std::string(kTinyHead) + "rcp adam read jobExpList\n";
  CHECK(error_line(facts) == 9);
  CHECK_THROWS_WITH_AS(load(facts), doctest::Contains("rcp adam read jobExpList: undeclared subject 'adam'"),
                       PolicyError);
  // declarations must come first
  CHECK(error_line("rcp bob read x\nsubject bob\n") == 1);
  CHECK(error_line(std::string(kTinyHead) + "uses interview write userProfile\n") == 9);
  CHECK(error_line(std::string(kTinyHead) + "dcp sam userProfile marketing\n") == 9);
}

TEST_CASE("syntax errors in the facts file") {
  CHECK(error_line("subject\n") == 1);
  CHECK(error_line("subject bob\nsubject bob\n") == 2);
  CHECK(error_line("# fine\n\ngrant bob read x\n") == 3);
  CHECK(error_line("subject 9lives\n") == 1);
  CHECK(error_line("task X\n") == 1);
}

TEST_CASE("sod and bod must stay inside the workflow and not overlap") {
  const std::string head = std::string(kTinyHead) + "task other\n";
  CHECK_NOTHROW(load(head + "sod jobHunting interview findJobs\n"));
  CHECK_THROWS_WITH_AS(load(head + "sod jobHunting interview other\n"), doctest::Contains("outside its workflow"),
                       PolicyError);
  CHECK_THROWS_WITH_AS(load(head + "sod jobHunting interview findJobs\nbod jobHunting findJobs interview\n"),
                       doctest::Contains("both sod and bod"), PolicyError);
  CHECK(error_line(head + "bod jobHunting interview interview\n") == 10);
}

TEST_CASE("workflow referencing an undeclared task") {
  auto r = resolver({{"w.wf", "tasks: a, b;\nconstraint: F a;\n"}});
  CHECK_THROWS_WITH_AS(load_policy("task a\npurpose p w.wf\n", r), doctest::Contains("undeclared task 'b'"),
                       PolicyError);
}

TEST_CASE("parse_workflow") {
  const auto w = parse_workflow("# header\ntasks: a, b,c ;\nconstraint: a;\nconstraint:\n  F b # tail\n  & G c;\n");
  CHECK(w.tasks == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(w.constraints.size() == 2);
  CHECK(w.constraints[1] == ltlf::parse("F b & G c"));
  CHECK(w.formula() == ltlf::parse("a & (F b & G c)"));
  CHECK(parse_workflow(format_workflow(w)).constraints == w.constraints);

  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_workflow(text);
    } catch (const PolicyError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("tasks: a;\nconstraint: F z;\n") == 2);
  CHECK(line_of("tasks: a;\n\nconstraint:\n a &\n & a;\n") == 5);
  CHECK(line_of("constraint: a;\ntasks: a;\n") == 1);
  CHECK(line_of("tasks: a;\ntasks: b;\n") == 2);
  CHECK(line_of("tasks: a;\nrule: a;\n") == 2);
  CHECK(line_of("tasks: a\n") == 0);
  CHECK(line_of("tasks: a, a;\n") == 1);
  CHECK(line_of("") == 0);
}

TEST_CASE("the job hunting fixture loads") {
  const Policy p = testing::jobhunting_policy();
  CHECK(p.purposes() == std::vector<std::string>{"jobHunting"});
  CHECK(p.sod("jobHunting") == std::set<TaskPair>{{"interview", "findJobs"}});
  CHECK(p.bod("jobHunting") == std::set<TaskPair>{{"interview", "propJobs"}});
  CHECK(p.workflow("jobHunting").tasks.size() == 9);
  // the golden run is a model of the workflow constraints
  std::vector<ltlf::Letter> word;
  for (const auto& r : testing::golden_trace()) word.push_back({r.task});
  CHECK(ltlf::evaluate(p.workflow("jobHunting").formula(), ltlf::PropTrace(word)));
}

TEST_CASE("authorized") {
  const Policy p = testing::jobhunting_policy();
  CHECK(authorized(p, "bob", "interview", "sam", "jobHunting"));
  CHECK_FALSE(authorized(p, "sam", "interview", "sam", "jobHunting"));
  CHECK(authorized(p, "adam", "findJobs", "sam", "jobHunting"));

  Policy q = p;
  q.remove_rcp("bob", "read", "userProfile");
  CHECK_FALSE(authorized(q, "bob", "interview", "sam", "jobHunting"));
  Policy d = p;
  d.remove_dcp("sam", "userProfile", "jobHunting");
  CHECK_FALSE(authorized(d, "bob", "interview", "sam", "jobHunting"));

  // a task that uses nothing is open to everyone
  Policy e = load(kTinyHead);
  CHECK(authorized(e, "bob", "interview", "sam", "jobHunting"));

  CHECK_THROWS_AS(authorized(p, "eve", "interview", "sam", "jobHunting"), UnknownEntityError);
  try {
    authorized(p, "bob", "interview", "sam", "marketing");
  } catch (const UnknownEntityError& err) {
    CHECK(err.field() == "purpose");
    CHECK(err.value() == "marketing");
  }
}

TEST_CASE("authorized is monotone in rcp and dcp") {
  const Policy base = testing::jobhunting_policy();
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    Policy small = base;
    for (const auto& [s, a, o] : base.rcp_tuples()) {
      if (rng() % 2) small.remove_rcp(s, a, o);
    }
    for (const auto& [o, d, pu] : base.dcp_tuples()) {
      if (rng() % 2) small.remove_dcp(o, d, pu);
    }
    for (const auto& s : base.subjects()) {
      for (const auto& t : base.tasks()) {
        if (authorized(small, s, t, "sam", "jobHunting")) CHECK(authorized(base, s, t, "sam", "jobHunting"));
      }
    }
  }
}

TEST_CASE("print_policy round-trips") {
  for (const auto* name : {"jobhunting.facts", "onlybob.facts"}) {
    const Policy p = load_policy_file(testing::data_path(std::string("jobhunting/") + name));
    const std::string wf = read_text_file(testing::data_path("jobhunting/jobhunting.wf"));
    const Policy q = load_policy(print_policy(p), resolver({{"jobhunting.wf", wf}}));
    CHECK(q == p);
    CHECK(print_policy(q) == print_policy(p));
  }
  Policy e = load("");
  CHECK(load(print_policy(e)) == e);
}

TEST_CASE("project_trace") {
  const std::vector<Request> global = {
      req("bob", "interview", "sam", "jobHunting", "w1"), req("bob", "interview", "sam", "jobHunting", "w2"),
      req("sam", "optOut", "sam", "jobHunting", "w1"),    req("sam", "optIn", "sam", "jobHunting", "w2"),
      req("bob", "getExp", "sam", "jobHunting", "w1"),
  };
  const auto t1 = project_trace(global, "w1");
  CHECK(t1.purpose() == "jobHunting");
  REQUIRE(t1.size() == 3);
  CHECK(t1.requests()[0].task == "interview");
  CHECK(t1.requests()[1].task == "optOut");
  CHECK(t1.requests()[2].task == "getExp");

  const auto t3 = project_trace(global, "w3");
  CHECK(t3.empty());
  CHECK(t3.wid() == "w3");

  auto mixed = global;
  mixed.push_back(req("bob", "interview", "sam", "marketing", "w1"));
  CHECK_THROWS_AS(project_trace(mixed, "w1"), Error);
  CHECK_NOTHROW(project_trace(mixed, "w2"));
}

TEST_CASE("projections partition the stream preserving per-wid order") {
  std::mt19937 rng(11);
  const std::vector<std::string> wids = {"a", "b", "c", "d"};
  for (int round = 0; round < 100; ++round) {
    std::vector<Request> s;
    const int n = static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      s.push_back(req("bob", "t" + std::to_string(i), "sam", "p", wids[rng() % wids.size()]));
    }
    std::multiset<Request> seen;
    for (const auto& w : wids) {
      const auto t = project_trace(s, w);
      std::size_t pos = 0;
      for (const auto& r : t.requests()) {
        seen.insert(r);
        while (pos < s.size() && !(s[pos] == r)) ++pos;
        CHECK(pos < s.size());
        ++pos;
      }
    }
    CHECK(seen == std::multiset<Request>(s.begin(), s.end()));
  }
}

TEST_CASE("InstanceTrace rejects foreign requests") {
  InstanceTrace t("w1", "jobHunting");
  CHECK_NOTHROW(t.append(req("bob", "interview", "sam", "jobHunting", "w1")));
  CHECK_THROWS_AS(t.append(req("bob", "interview", "sam", "jobHunting", "w2")), Error);
  CHECK_THROWS_AS(t.append(req("bob", "interview", "sam", "other", "w1")), Error);
  CHECK(t.size() == 1);
}

TEST_CASE("trace format") {
  const auto rs = parse_trace("# c\nw bob interview sam jobHunting # r0\n\n  w sam optOut sam jobHunting\n");
  REQUIRE(rs.size() == 2);
  CHECK(rs[1] == req("sam", "optOut", "sam", "jobHunting", "w"));
  CHECK(format_request(rs[0]) == "w bob interview sam jobHunting");
  CHECK(parse_trace(format_request(rs[0]))[0] == rs[0]);
  try {
    parse_trace("w bob interview sam jobHunting\nw bob interview\n");
    FAIL("expected error");
  } catch (const PolicyError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(testing::golden_trace().size() == 6);
}
