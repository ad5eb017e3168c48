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

#include "pamon/monitor/monitor.hpp"

#include "pamon/policy/trace_io.hpp"

namespace pamon {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::TempTrue:
      return "temp_true";
    case Verdict::TempFalse:
      return "temp_false";
    case Verdict::False:
      return "false";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  for (auto v : {Verdict::True, Verdict::TempTrue, Verdict::TempFalse, Verdict::False}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::string to_string(Decision d) { return d == Decision::Grant ? "GRANT" : "DENY"; }

Snapshot::Snapshot(Policy policy, std::uint64_t version, std::size_t cap)
    : policy_(std::move(policy)), version_(version), cap_(cap) {
  if (cap_ == 0) throw Error("grounding cap must be at least 1");
}

std::shared_ptr<const SymbolicAutomaton> Snapshot::pre_automaton(const std::string& purpose) const {
  std::lock_guard lock(mu_);
  auto it = pre_.find(purpose);
  if (it != pre_.end()) return it->second;
  auto a = std::make_shared<const SymbolicAutomaton>(build_pre_automaton(build_purpose_formula(policy_, purpose)));
  pre_.emplace(purpose, a);
  return a;
}

std::shared_ptr<const SymbolicAutomaton> Snapshot::automaton(const std::string& purpose) const {
  auto pre = pre_automaton(purpose);
  std::lock_guard lock(mu_);
  auto it = specialized_.find(purpose);
  if (it != specialized_.end()) return it->second;
  auto a = std::make_shared<const SymbolicAutomaton>(specialize(*pre, policy_));
  specialized_.emplace(purpose, a);
  return a;
}

Classification classify(const Snapshot& snap, const SymbolicAutomaton& a, const ConfigSet& cfgs) {
  if (cfgs.empty() || !reachable_accepting(a, snap.policy(), cfgs)) return {Verdict::False, false};
  if (!any_accepting(a, cfgs)) return {Verdict::TempFalse, false};
  try {
    return {falsifiable(a, snap.policy(), cfgs, snap.cap()) ? Verdict::TempTrue : Verdict::True, false};
  } catch (const GroundingCapExceeded&) {
    return {Verdict::TempTrue, true};
  }
}

bool MonitorState::operator==(const MonitorState& o) const {
  return trace_ == o.trace_ && configs_ == o.configs_ && verdict_ == o.verdict_ && coarse_ == o.coarse_ &&
         frozen_ == o.frozen_ && version() == o.version();
}

void MonitorState::reclassify() {
  const auto c = classify(*snap_, *automaton_, configs_);
  verdict_ = c.verdict;
  coarse_ = c.coarse;
}

MonitorState init_instance(SnapshotPtr snap, const std::string& purpose, const std::string& wid) {
  MonitorState s;
  s.automaton_ = snap->automaton(purpose);
  s.snap_ = std::move(snap);
  s.trace_ = InstanceTrace(wid, purpose);
  s.configs_ = initial_configs(*s.automaton_);
  s.reclassify();
  return s;
}

StepResult step(MonitorState& s, const Request& r) {
  if (s.frozen_) throw MonitorError("instance " + s.wid() + " is closed");
  if (r.wid != s.wid()) throw MonitorError("request for " + r.wid + " sent to instance " + s.wid());
  if (r.purpose != s.purpose()) {
    throw MonitorError("instance " + s.wid() + " serves purpose " + s.purpose() + ", not " + r.purpose);
  }
  const Policy& p = s.snap_->policy();
  check_declared(p, r);
  ConfigSet next = step_configs(*s.automaton_, p, s.configs_, r);
  const auto c = classify(*s.snap_, *s.automaton_, next);
  if (c.verdict == Verdict::False) return {Decision::Deny, Verdict::False, false};
  s.trace_.append(r);
  s.configs_ = std::move(next);
  s.verdict_ = c.verdict;
  s.coarse_ = c.coarse;
  return {Decision::Grant, c.verdict, c.coarse};
}

void rebase(MonitorState& s, SnapshotPtr snap) {
  if (snap->version() == s.version()) return;
  s.automaton_ = snap->automaton(s.purpose());
  s.snap_ = std::move(snap);
  ConfigSet cfgs = initial_configs(*s.automaton_);
  for (const auto& r : s.trace_.requests()) cfgs = step_configs(*s.automaton_, s.snap_->policy(), cfgs, r);
  s.configs_ = std::move(cfgs);
  s.reclassify();
}

void append_unchecked(MonitorState& s, const Request& r) {
  s.trace_.append(r);
  s.configs_ = step_configs(*s.automaton_, s.snap_->policy(), s.configs_, r);
  s.reclassify();
}

void close_instance(MonitorState& s) {
  if (s.frozen_) throw MonitorError("instance " + s.wid() + " is already closed");
  if (s.verdict_ != Verdict::True && s.verdict_ != Verdict::TempTrue) {
    throw MonitorError("instance " + s.wid() + " cannot close with verdict " + to_string(s.verdict_));
  }
  s.frozen_ = true;
}

void freeze(MonitorState& s) { s.frozen_ = true; }

}  // namespace pamon
