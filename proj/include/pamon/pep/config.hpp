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

#include <cstddef>
#include <string>

#include "pamon/engine/engine.hpp"

namespace pamon {

enum class Verbosity { Quiet, Info, Debug };

/// Service configuration, read from a JSON object:
///
///   {"facts": "jobhunting.facts", "workflows": ".", "logdir": "logs",
///    "grounding_cap": 1000000, "bind": "127.0.0.1:8080", "verbosity": "info"}
///
/// Only "facts" and "logdir" are required. Relative paths are taken from the
/// directory holding the config file.
struct EngineConfig {
  std::string facts;
  std::string workflows;  // defaults to the directory of `facts`
  std::string logdir;
  std::size_t grounding_cap = kDefaultGroundingCap;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  Verbosity verbosity = Verbosity::Info;

  /// Checks that the facts file is readable, the workflow directory exists
  /// and the log directory is writable (creating it if needed).
  void validate() const;
};

/// `base_dir` anchors relative paths. Throws Error naming the bad key.
EngineConfig parse_config(const std::string& json_text, const std::string& base_dir = ".");
EngineConfig load_config(const std::string& path);

}  // namespace pamon
