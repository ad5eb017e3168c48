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

#include "pamon/policy/policy.hpp"

#include <filesystem>
#include <sstream>

#include "pamon/policy/trace_io.hpp"

namespace pamon {

namespace {

const std::set<Action> kNoActions;
const std::set<TaskPair> kNoPairs;

void declare(std::vector<std::string>& order, std::set<std::string>& seen, const std::string& name) {
  if (!ltlf::is_identifier(name)) throw Error("invalid identifier '" + name + "'");
  if (seen.insert(name).second) order.push_back(name);
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

PolicyError::PolicyError(std::string source, std::size_t line, const std::string& message)
    : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

TaskPair::TaskPair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  first = std::move(a);
  second = std::move(b);
}

std::ostream& operator<<(std::ostream& os, const Request& r) { return os << format_request(r); }

void Policy::require(bool ok, const std::string& field, const std::string& value) const {
  if (!ok) throw UnknownEntityError(field, value);
}

void Policy::add_subject(const std::string& name) { declare(subjects_, subject_set_, name); }
void Policy::add_owner(const std::string& name) { declare(owners_, owner_set_, name); }
void Policy::add_object(const std::string& name) { declare(objects_, object_set_, name); }
void Policy::add_action(const std::string& name) { declare(actions_, action_set_, name); }
void Policy::add_task(const std::string& name) {
  if (ltlf::is_reserved_word(name)) throw Error("task name '" + name + "' is a reserved word");
  declare(tasks_, task_set_, name);
}

void Policy::add_purpose(const std::string& name, WorkflowSpec workflow) {
  if (!ltlf::is_identifier(name)) throw Error("invalid identifier '" + name + "'");
  for (const auto& t : workflow.tasks) require(has_task(t), "task", t);
  if (!has_purpose(name)) purposes_.push_back(name);
  workflows_[name] = std::move(workflow);
}

void Policy::add_rcp(const std::string& subject, const std::string& action, const std::string& object) {
  require(has_subject(subject), "subject", subject);
  require(has_action(action), "action", action);
  require(has_object(object), "object", object);
  rcp_.emplace(subject, action, object);
}

void Policy::add_dcp(const std::string& owner, const std::string& object, const std::string& purpose) {
  require(has_owner(owner), "owner", owner);
  require(has_object(object), "object", object);
  require(has_purpose(purpose), "purpose", purpose);
  dcp_.emplace(owner, object, purpose);
}

void Policy::add_uses(const std::string& task, const std::string& action, const std::string& object) {
  require(has_task(task), "task", task);
  require(has_action(action), "action", action);
  require(has_object(object), "object", object);
  uses_[task].insert({action, object});
}

void Policy::add_sod(const std::string& purpose, const std::string& t1, const std::string& t2) {
  require(has_purpose(purpose), "purpose", purpose);
  require(has_task(t1), "task", t1);
  require(has_task(t2), "task", t2);
  if (t1 == t2) throw Error("sod pair needs two distinct tasks");
  sod_[purpose].emplace(t1, t2);
}

void Policy::add_bod(const std::string& purpose, const std::string& t1, const std::string& t2) {
  require(has_purpose(purpose), "purpose", purpose);
  require(has_task(t1), "task", t1);
  require(has_task(t2), "task", t2);
  if (t1 == t2) throw Error("bod pair needs two distinct tasks");
  bod_[purpose].emplace(t1, t2);
}

void Policy::remove_rcp(const std::string& subject, const std::string& action, const std::string& object) {
  rcp_.erase({subject, action, object});
}

void Policy::remove_dcp(const std::string& owner, const std::string& object, const std::string& purpose) {
  dcp_.erase({owner, object, purpose});
}

void Policy::validate() const {
  for (const auto& p : purposes_) {
    const auto& w = workflow(p);
    for (const auto& t : w.tasks) {
      if (!has_task(t)) throw Error("workflow of '" + p + "' references undeclared task '" + t + "'");
    }
    for (const auto* rel : {&sod(p), &bod(p)}) {
      for (const auto& pair : *rel) {
        for (const auto* t : {&pair.first, &pair.second}) {
          if (!w.contains(*t)) {
            throw Error(std::string(rel == &sod(p) ? "sod" : "bod") + " pair for '" + p +
                        "' names task '" + *t + "' outside its workflow");
          }
        }
      }
    }
    for (const auto& pair : sod(p)) {
      if (bod(p).count(pair)) {
        throw Error("tasks '" + pair.first + "' and '" + pair.second +
                    "' are both sod and bod for '" + p + "'");
      }
    }
  }
}

bool Policy::rcp(const std::string& subject, const std::string& action, const std::string& object) const {
  return rcp_.count({subject, action, object}) > 0;
}

bool Policy::dcp(const std::string& owner, const std::string& object, const std::string& purpose) const {
  return dcp_.count({owner, object, purpose}) > 0;
}

const std::set<Action>& Policy::uses(const std::string& task) const {
  auto it = uses_.find(task);
  return it == uses_.end() ? kNoActions : it->second;
}

const WorkflowSpec& Policy::workflow(const std::string& purpose) const {
  auto it = workflows_.find(purpose);
  if (it == workflows_.end()) throw UnknownEntityError("purpose", purpose);
  return it->second;
}

const std::set<TaskPair>& Policy::sod(const std::string& purpose) const {
  auto it = sod_.find(purpose);
  return it == sod_.end() ? kNoPairs : it->second;
}

const std::set<TaskPair>& Policy::bod(const std::string& purpose) const {
  auto it = bod_.find(purpose);
  return it == bod_.end() ? kNoPairs : it->second;
}

bool Policy::subject_may(const std::string& subject, const std::string& task) const {
  for (const auto& u : uses(task)) {
    if (!rcp(subject, u.action, u.object)) return false;
  }
  return true;
}

bool Policy::owner_releases(const std::string& owner, const std::string& task,
                            const std::string& purpose) const {
  for (const auto& u : uses(task)) {
    if (!dcp(owner, u.object, purpose)) return false;
  }
  return true;
}

bool Policy::operator==(const Policy& o) const {
  // Empty relation entries and missing ones mean the same thing.
  auto strip = [](auto m) {
    std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
    return m;
  };
  return subjects_ == o.subjects_ && owners_ == o.owners_ && objects_ == o.objects_ &&
         actions_ == o.actions_ && tasks_ == o.tasks_ && purposes_ == o.purposes_ &&
         workflows_ == o.workflows_ && rcp_ == o.rcp_ && dcp_ == o.dcp_ &&
         strip(uses_) == strip(o.uses_) && strip(sod_) == strip(o.sod_) && strip(bod_) == strip(o.bod_);
}

void check_declared(const Policy& p, const Request& r) {
  if (!p.has_subject(r.subject)) throw UnknownEntityError("subject", r.subject);
  if (!p.has_task(r.task)) throw UnknownEntityError("task", r.task);
  if (!p.has_owner(r.owner)) throw UnknownEntityError("owner", r.owner);
  if (!p.has_purpose(r.purpose)) throw UnknownEntityError("purpose", r.purpose);
}

bool authorized(const Policy& p, const std::string& subject, const std::string& task,
                const std::string& owner, const std::string& purpose) {
  check_declared(p, {"", subject, task, owner, purpose});
  return p.owner_releases(owner, task, purpose) && p.subject_may(subject, task);
}

Policy load_policy(std::string_view text, const WorkflowResolver& resolve, const std::string& source) {
  Policy p;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::set<std::pair<std::string, std::string>> declared;
  auto fail = [&](const std::string& msg) { throw PolicyError(source, line_no, msg); };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto w = split_words(line);
    if (w.empty()) continue;
    const std::string& kw = w[0];
    auto arity = [&](std::size_t n) {
      if (w.size() != n + 1) {
        fail("'" + kw + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
             std::to_string(w.size() - 1));
      }
    };
    try {
      if (kw == "subject" || kw == "owner" || kw == "object" || kw == "action" || kw == "task") {
        arity(1);
        if (!declared.emplace(kw, w[1]).second) fail("duplicate " + kw + " '" + w[1] + "'");
        if (kw == "subject") p.add_subject(w[1]);
        else if (kw == "owner") p.add_owner(w[1]);
        else if (kw == "object") p.add_object(w[1]);
        else if (kw == "action") p.add_action(w[1]);
        else p.add_task(w[1]);
      } else if (kw == "purpose") {
        if (w.size() == 2) fail("purpose '" + w[1] + "' has no workflow");
        arity(2);
        if (!declared.emplace(kw, w[1]).second) fail("duplicate purpose '" + w[1] + "'");
        std::string body;
        try {
          body = resolve(w[2]);
        } catch (const std::exception& e) {
          fail("cannot read workflow '" + w[2] + "' for purpose '" + w[1] + "': " + e.what());
        }
        p.add_purpose(w[1], parse_workflow(body, w[2]));
      } else if (kw == "rcp") {
        arity(3);
        p.add_rcp(w[1], w[2], w[3]);
      } else if (kw == "dcp") {
        arity(3);
        p.add_dcp(w[1], w[2], w[3]);
      } else if (kw == "uses") {
        arity(3);
        p.add_uses(w[1], w[2], w[3]);
      } else if (kw == "sod" || kw == "bod") {
        arity(3);
        if (kw == "sod") p.add_sod(w[1], w[2], w[3]);
        else p.add_bod(w[1], w[2], w[3]);
      } else {
        fail("unknown statement '" + kw + "'");
      }
    } catch (const PolicyError&) {
      throw;
    } catch (const Error& e) {
      std::string tuple;
      for (const auto& x : w) tuple += (tuple.empty() ? "" : " ") + x;
      fail(tuple + ": " + e.what());
    }
  }
  try {
    p.validate();
  } catch (const Error& e) {
    throw PolicyError(source, 0, e.what());
  }
  return p;
}

Policy load_policy_file(const std::string& path, const std::string& workflow_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = workflow_dir.empty() ? fs::path(path).parent_path() : fs::path(workflow_dir);
  return load_policy(
      read_text_file(path), [&](const std::string& name) { return read_text_file((dir / name).string()); },
      path);
}

std::string print_policy(const Policy& p) {
  std::ostringstream out;
  for (const auto& s : p.subjects()) out << "subject " << s << "\n";
  for (const auto& s : p.owners()) out << "owner " << s << "\n";
  for (const auto& s : p.objects()) out << "object " << s << "\n";
  for (const auto& s : p.actions()) out << "action " << s << "\n";
  for (const auto& s : p.tasks()) out << "task " << s << "\n";
  for (const auto& s : p.purposes()) out << "purpose " << s << " " << p.workflow(s).source << "\n";
  for (const auto& [s, a, o] : p.rcp_tuples()) out << "rcp " << s << " " << a << " " << o << "\n";
  for (const auto& [o, d, pu] : p.dcp_tuples()) out << "dcp " << o << " " << d << " " << pu << "\n";
  for (const auto& t : p.tasks()) {
    for (const auto& u : p.uses(t)) out << "uses " << t << " " << u.action << " " << u.object << "\n";
  }
  for (const auto& pu : p.purposes()) {
    for (const auto& pr : p.sod(pu)) out << "sod " << pu << " " << pr.first << " " << pr.second << "\n";
    for (const auto& pr : p.bod(pu)) out << "bod " << pu << " " << pr.first << " " << pr.second << "\n";
  }
  return out.str();
}

void InstanceTrace::append(const Request& r) {
  if (r.wid != wid_) throw Error("request for instance '" + r.wid + "' appended to '" + wid_ + "'");
  if (r.purpose != purpose_) {
    throw Error("request for purpose '" + r.purpose + "' appended to instance of '" + purpose_ + "'");
  }
  requests_.push_back(r);
}

InstanceTrace project_trace(const std::vector<Request>& global, const std::string& wid) {
  InstanceTrace t;
  bool first = true;
  for (const auto& r : global) {
    if (r.wid != wid) continue;
    if (first) {
      t = InstanceTrace(wid, r.purpose);
      first = false;
    } else if (r.purpose != t.purpose()) {
      throw Error("instance '" + wid + "' carries purposes '" + t.purpose() + "' and '" + r.purpose + "'");
    }
    t.append(r);
  }
  if (first) t = InstanceTrace(wid, "");
  return t;
}

}  // namespace pamon
