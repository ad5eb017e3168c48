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

// Per-instance decision logs. One file per wid, `<dir>/<wid>.log`:
//
//   wid bob interview sam jobHunting # GRANT temp_false v1
//   # DENY wid bob findJobs sam jobHunting false v1
//   # CLOSE v1
//
// Granted lines are trace lines, so the file doubles as the instance trace.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pamon/monitor/monitor.hpp"

namespace pamon {

class CorruptLogError : public Error {
 public:
  CorruptLogError(std::string path, std::size_t line, const std::string& msg)
      : Error("corrupt log " + path + ":" + std::to_string(line) + ": " + msg), path_(std::move(path)), line_(line) {}
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Letters, digits, '_', '-' and '.', not starting with '.'.
bool valid_wid(const std::string& wid);
std::string log_path(const std::string& dir, const std::string& wid);

std::string format_grant(const Request& r, const StepResult& res, std::uint64_t version);
std::string format_deny(const Request& r, std::uint64_t version);
std::string format_close(std::uint64_t version);

/// Append-only file; every line is flushed to disk before append returns.
class InstanceLog {
 public:
  explicit InstanceLog(std::string path);
  ~InstanceLog();
  InstanceLog(const InstanceLog&) = delete;
  InstanceLog& operator=(const InstanceLog&) = delete;

  const std::string& path() const { return path_; }
  void append(const std::string& line);

 private:
  std::string path_;
  int fd_ = -1;
};

struct Replay {
  std::optional<MonitorState> state;  // nullopt for an empty log
  std::size_t valid_bytes = 0;        // length of the complete lines
  bool torn = false;                  // a final line without newline was dropped
};

/// Rebuilds an instance from its log under `snap`. Entries recorded under the
/// current version are decided again and must match; older grants are
/// appended as they were. Throws CorruptLogError naming the offending line.
Replay replay_log(const std::string& path, const SnapshotPtr& snap);

/// Truncates a torn final line left by a crash.
void repair_log(const std::string& path, const Replay& r);

/// Replays every `*.log` in `dir`, repairing torn tails. Keyed by wid.
std::map<std::string, MonitorState> replay_logdir(const std::string& dir, const SnapshotPtr& snap);

}  // namespace pamon
