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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pamon/engine/engine.hpp"
#include "pamon/policy/policy.hpp"

namespace pamon {

enum class Verdict { True, TempTrue, TempFalse, False };
enum class Decision { Grant, Deny };

/// "true", "temp_true", "temp_false", "false".
std::string to_string(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& s);
/// "GRANT", "DENY".
std::string to_string(Decision d);

/// Wrong instance, frozen instance or a close that is not allowed.
class MonitorError : public Error {
 public:
  using Error::Error;
};

/// An immutable policy with its version. Compiled automata are cached per
/// purpose; the cache is safe to share between threads.
class Snapshot {
 public:
  Snapshot(Policy policy, std::uint64_t version, std::size_t cap = kDefaultGroundingCap);

  const Policy& policy() const { return policy_; }
  std::uint64_t version() const { return version_; }
  std::size_t cap() const { return cap_; }

  /// Throws UnknownEntityError for an undeclared purpose.
  std::shared_ptr<const SymbolicAutomaton> pre_automaton(const std::string& purpose) const;
  std::shared_ptr<const SymbolicAutomaton> automaton(const std::string& purpose) const;

 private:
  Policy policy_;
  std::uint64_t version_;
  std::size_t cap_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const SymbolicAutomaton>> pre_;
  mutable std::map<std::string, std::shared_ptr<const SymbolicAutomaton>> specialized_;
};

using SnapshotPtr = std::shared_ptr<const Snapshot>;

inline SnapshotPtr make_snapshot(Policy p, std::uint64_t version = 1, std::size_t cap = kDefaultGroundingCap) {
  return std::make_shared<const Snapshot>(std::move(p), version, cap);
}

struct Classification {
  Verdict verdict = Verdict::False;
  bool coarse = false;  // the grounding cap was hit; TRUE is reported as TEMP_TRUE
};

/// Four-valued verdict of the trace whose configurations are `cfgs`.
Classification classify(const Snapshot& snap, const SymbolicAutomaton& a, const ConfigSet& cfgs);

struct StepResult {
  Decision decision = Decision::Deny;
  Verdict verdict = Verdict::False;
  bool coarse = false;
};

class MonitorState {
 public:
  const std::string& wid() const { return trace_.wid(); }
  const std::string& purpose() const { return trace_.purpose(); }
  const InstanceTrace& trace() const { return trace_; }
  const ConfigSet& configs() const { return configs_; }
  const SnapshotPtr& snapshot() const { return snap_; }
  std::uint64_t version() const { return snap_->version(); }
  Verdict verdict() const { return verdict_; }
  bool coarse() const { return coarse_; }
  bool frozen() const { return frozen_; }

  /// Same instance, trace, configurations, verdict and snapshot version.
  bool operator==(const MonitorState& o) const;

 private:
  friend MonitorState init_instance(SnapshotPtr snap, const std::string& purpose, const std::string& wid);
  friend StepResult step(MonitorState& s, const Request& r);
  friend void rebase(MonitorState& s, SnapshotPtr snap);
  friend void append_unchecked(MonitorState& s, const Request& r);
  friend void close_instance(MonitorState& s);
  friend void freeze(MonitorState& s);

  void reclassify();

  SnapshotPtr snap_;
  std::shared_ptr<const SymbolicAutomaton> automaton_;
  InstanceTrace trace_;
  ConfigSet configs_;
  Verdict verdict_ = Verdict::TempFalse;
  bool coarse_ = false;
  bool frozen_ = false;
};

/// Empty instance. Throws UnknownEntityError for an undeclared purpose.
MonitorState init_instance(SnapshotPtr snap, const std::string& purpose, const std::string& wid);

/// Decides `r`. DENY iff the extended trace would be FALSE; a denied request
/// leaves `s` untouched. Throws MonitorError on a wid or purpose mismatch or
/// a frozen instance and UnknownEntityError on undeclared entities.
StepResult step(MonitorState& s, const Request& r);

inline Verdict verdict(const MonitorState& s) { return s.verdict(); }

/// Re-evaluates the granted trace against `snap` when its version differs.
void rebase(MonitorState& s, SnapshotPtr snap);

/// Appends a request granted earlier under another snapshot, without
/// deciding it. Used by log replay.
void append_unchecked(MonitorState& s, const Request& r);

/// Freezes an instance whose trace satisfies the purpose now (TRUE or
/// TEMP_TRUE). Throws MonitorError otherwise or when already frozen.
void close_instance(MonitorState& s);

/// Freezes without checking. Used by log replay.
void freeze(MonitorState& s);

}  // namespace pamon
