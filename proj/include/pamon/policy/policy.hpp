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

#pragma once

#include <compare>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "pamon/error.hpp"
#include "pamon/ltlf/formula.hpp"

namespace pamon {

/// Error in a facts or workflow file. `line` is 1-based, 0 when the problem
/// is not tied to one line (for example a global consistency check).
class PolicyError : public Error {
 public:
  PolicyError(std::string source, std::size_t line, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Unordered pair of task names; `first < second` after construction.
struct TaskPair {
  std::string first;
  std::string second;

  TaskPair(std::string a, std::string b);
  bool contains(const std::string& t) const { return first == t || second == t; }
  auto operator<=>(const TaskPair&) const = default;
};

/// The workflow that defines a purpose: its tasks (the cont relation) and the
/// LTLf constraints, read in conjunction.
struct WorkflowSpec {
  std::string source;
  std::vector<std::string> tasks;
  std::vector<ltlf::Formula> constraints;

  ltlf::Formula formula() const { return ltlf::Formula::conj_all(constraints); }
  bool contains(const std::string& task) const;
  bool operator==(const WorkflowSpec& o) const;
};

/// Parses `tasks: t1, t2;` followed by `constraint: <formula>;` statements.
/// Every atom in a constraint must be listed in the tasks header.
WorkflowSpec parse_workflow(std::string_view text, std::string source = "<workflow>");
std::string format_workflow(const WorkflowSpec& w);

struct Request {
  std::string wid;
  std::string subject;
  std::string task;
  std::string owner;
  std::string purpose;

  auto operator<=>(const Request&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Request& r);

struct Action {
  std::string action;
  std::string object;
  auto operator<=>(const Action&) const = default;
};

/// Closed-world store of the data-, rule- and purpose-centric relations.
///
/// Mutators check referential integrity as tuples arrive; `validate()` checks
/// the invariants that span several relations. Loaded policies are validated.
class Policy {
 public:
  void add_subject(const std::string& name);
  void add_owner(const std::string& name);
  void add_object(const std::string& name);
  void add_action(const std::string& name);
  void add_task(const std::string& name);
  void add_purpose(const std::string& name, WorkflowSpec workflow);

  void add_rcp(const std::string& subject, const std::string& action, const std::string& object);
  void add_dcp(const std::string& owner, const std::string& object, const std::string& purpose);
  void add_uses(const std::string& task, const std::string& action, const std::string& object);
  void add_sod(const std::string& purpose, const std::string& t1, const std::string& t2);
  void add_bod(const std::string& purpose, const std::string& t1, const std::string& t2);

  void remove_rcp(const std::string& subject, const std::string& action, const std::string& object);
  void remove_dcp(const std::string& owner, const std::string& object, const std::string& purpose);

  /// Throws Error when a workflow references undeclared tasks, a sod or
  /// bod pair names a task outside the purpose's workflow, or a pair is both
  /// separated and bound.
  void validate() const;

  const std::vector<std::string>& subjects() const { return subjects_; }
  const std::vector<std::string>& owners() const { return owners_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& tasks() const { return tasks_; }
  const std::vector<std::string>& purposes() const { return purposes_; }

  bool has_subject(const std::string& s) const { return subject_set_.count(s) > 0; }
  bool has_owner(const std::string& s) const { return owner_set_.count(s) > 0; }
  bool has_object(const std::string& s) const { return object_set_.count(s) > 0; }
  bool has_action(const std::string& s) const { return action_set_.count(s) > 0; }
  bool has_task(const std::string& s) const { return task_set_.count(s) > 0; }
  bool has_purpose(const std::string& s) const { return workflows_.count(s) > 0; }

  bool rcp(const std::string& subject, const std::string& action, const std::string& object) const;
  bool dcp(const std::string& owner, const std::string& object, const std::string& purpose) const;
  /// Actions the task performs; empty when it uses nothing.
  const std::set<Action>& uses(const std::string& task) const;
  const WorkflowSpec& workflow(const std::string& purpose) const;
  const std::set<TaskPair>& sod(const std::string& purpose) const;
  const std::set<TaskPair>& bod(const std::string& purpose) const;

  const std::set<std::tuple<std::string, std::string, std::string>>& rcp_tuples() const { return rcp_; }
  const std::set<std::tuple<std::string, std::string, std::string>>& dcp_tuples() const { return dcp_; }

  /// Subject side of the authorization check: every action the task uses is
  /// granted to `subject` by rcp.
  bool subject_may(const std::string& subject, const std::string& task) const;
  /// Owner side: every object the task uses is released by `owner` for `purpose`.
  bool owner_releases(const std::string& owner, const std::string& task,
                      const std::string& purpose) const;

  bool operator==(const Policy& o) const;

 private:
  void require(bool ok, const std::string& field, const std::string& value) const;

  std::vector<std::string> subjects_, owners_, objects_, actions_, tasks_, purposes_;
  std::set<std::string> subject_set_, owner_set_, object_set_, action_set_, task_set_;
  std::map<std::string, WorkflowSpec> workflows_;
  std::set<std::tuple<std::string, std::string, std::string>> rcp_;
  std::set<std::tuple<std::string, std::string, std::string>> dcp_;
  std::map<std::string, std::set<Action>> uses_;
  std::map<std::string, std::set<TaskPair>> sod_;
  std::map<std::string, std::set<TaskPair>> bod_;
};

/// True iff for every (action, object) the task uses, dcp(owner, object,
/// purpose) and rcp(subject, action, object) hold. Vacuously true for tasks
/// that use nothing. Throws UnknownEntityError for undeclared arguments.
bool authorized(const Policy& p, const std::string& subject, const std::string& task,
                const std::string& owner, const std::string& purpose);

/// Throws UnknownEntityError naming the first undeclared field of `r`.
void check_declared(const Policy& p, const Request& r);

/// Maps a workflow file name (as written in a `purpose` line) to its text.
using WorkflowResolver = std::function<std::string(const std::string&)>;

/// Parses the line-oriented facts format. Entity declarations must precede the
/// tuples that reference them.
Policy load_policy(std::string_view text, const WorkflowResolver& resolve,
                   const std::string& source = "<facts>");

/// Reads `path`; workflow files are resolved against `workflow_dir`, or the
/// directory of `path` when `workflow_dir` is empty.
Policy load_policy_file(const std::string& path, const std::string& workflow_dir = {});

std::string print_policy(const Policy& p);

/// The granted requests of one workflow instance, in grant order.
class InstanceTrace {
 public:
  InstanceTrace() = default;
  InstanceTrace(std::string wid, std::string purpose)
      : wid_(std::move(wid)), purpose_(std::move(purpose)) {}

  const std::string& wid() const { return wid_; }
  const std::string& purpose() const { return purpose_; }
  const std::vector<Request>& requests() const { return requests_; }
  std::size_t size() const { return requests_.size(); }
  bool empty() const { return requests_.empty(); }

  /// Throws when `r` carries a different wid or purpose.
  void append(const Request& r);

  bool operator==(const InstanceTrace&) const = default;

 private:
  std::string wid_;
  std::string purpose_;
  std::vector<Request> requests_;
};

/// Order-preserving subsequence of `global` with the given wid. Throws when
/// those requests name more than one purpose.
InstanceTrace project_trace(const std::vector<Request>& global, const std::string& wid);

}  // namespace pamon
