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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "pamon/monitor/log.hpp"
#include "pamon/monitor/monitor.hpp"
#include "pamon/pep/config.hpp"
#include "pamon/wsp/wsp.hpp"

namespace pamon {

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A request field that is malformed rather than undeclared.
class FieldError : public Error {
 public:
  FieldError(std::string field, std::string value, const std::string& msg)
      : Error(msg), field_(std::move(field)), value_(std::move(value)) {}
  const std::string& field() const { return field_; }
  const std::string& value() const { return value_; }

 private:
  std::string field_;
  std::string value_;
};

struct InstanceView {
  std::string wid;
  std::string purpose;
  std::vector<Request> trace;
  Verdict verdict = Verdict::TempFalse;
  bool coarse = false;
  bool frozen = false;
  std::uint64_t version = 0;
};

struct Decided {
  std::uint64_t seq = 0;
  StepResult result;
  std::uint64_t version = 0;
};

/// The enforcement point behind the CLI monitor and the HTTP service.
///
/// Requests for one wid are decided in arrival order under that instance's
/// lock; distinct instances proceed in parallel. Every decision is appended
/// to the instance log and synced before it is returned. Policy replacement
/// swaps the snapshot under an exclusive lock; instances are re-evaluated
/// against the new snapshot the next time they are touched.
///
/// The log directory also holds the current policy: `policy.version` names
/// a directory `policy-v<N>/` with the facts and workflow files. At startup
/// that policy wins over the configured facts file, which only seeds an
/// empty log directory.
class Service {
 public:
  /// Loads the policy and replays every instance log. Throws CorruptLogError
  /// when a log does not replay.
  explicit Service(EngineConfig cfg);

  const EngineConfig& config() const { return cfg_; }
  SnapshotPtr snapshot() const;

  /// Throws UnknownEntityError, FieldError or MonitorError.
  Decided decide(const Request& r);
  /// Throws NotFoundError for an unknown wid.
  InstanceView instance(const std::string& wid);
  /// Throws NotFoundError or MonitorError.
  InstanceView close(const std::string& wid);
  /// Parses and installs new facts; workflow names resolve against the
  /// configured workflow directory. Returns the snapshot version, unchanged
  /// when the policy is identical. Throws PolicyError on bad facts and
  /// MonitorError when a purpose with live instances would disappear.
  std::uint64_t replace_policy(const std::string& facts_text);
  /// Throws UnknownEntityError for an undeclared purpose.
  AchievabilityResult achievable(const std::string& purpose);

  /// Every instance, re-evaluated against the current snapshot.
  std::map<std::string, InstanceView> instances();
  /// Full monitor states, for replay checks.
  std::map<std::string, MonitorState> states();

 private:
  struct Slot {
    std::mutex mu;
    std::optional<MonitorState> state;
    std::unique_ptr<InstanceLog> log;
  };

  Slot* find(const std::string& wid);
  Slot& find_or_create(const std::string& wid);
  InstanceLog& log_of(Slot& s, const std::string& wid);
  void persist_policy(const Policy& p, const std::string& facts_text, std::uint64_t version);
  InstanceView view(MonitorState& s);

  EngineConfig cfg_;
  mutable std::shared_mutex policy_mu_;
  SnapshotPtr snap_;
  std::mutex slots_mu_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
  std::atomic<std::uint64_t> seq_{0};
};

}  // namespace pamon
