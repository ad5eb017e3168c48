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

#include "pamon/pep/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <json.hpp>

#include "pamon/policy/trace_io.hpp"

namespace pamon {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string anchored(const std::string& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path.string() : (fs::path(base) / path).lexically_normal().string();
}

std::string string_field(const json& j, const char* key) {
  if (!j.at(key).is_string()) throw Error(std::string("config key '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

EngineConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config must be a JSON object");
  static const std::set<std::string> known = {"facts", "workflows", "logdir", "grounding_cap", "bind", "verbosity"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw Error("unknown config key '" + k + "'");
  }
  for (const char* key : {"facts", "logdir"}) {
    if (!j.contains(key)) throw Error(std::string("config key '") + key + "' is required");
  }
  EngineConfig c;
  c.facts = anchored(base_dir, string_field(j, "facts"));
  c.logdir = anchored(base_dir, string_field(j, "logdir"));
  c.workflows = j.contains("workflows") ? anchored(base_dir, string_field(j, "workflows"))
                                        : fs::path(c.facts).parent_path().string();
  if (j.contains("grounding_cap")) {
    const auto& v = j.at("grounding_cap");
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw Error("config key 'grounding_cap' must be a positive integer");
    }
    c.grounding_cap = v.get<std::size_t>();
  }
  if (j.contains("bind")) {
    const std::string bind = string_field(j, "bind");
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos || colon == 0) throw Error("config key 'bind' must look like host:port");
    c.host = bind.substr(0, colon);
    const std::string port = bind.substr(colon + 1);
    if (port.empty() || port.size() > 5 || port.find_first_not_of("0123456789") != std::string::npos ||
        std::stoi(port) > 65535) {
      throw Error("config key 'bind' has a bad port '" + port + "'");
    }
    c.port = std::stoi(port);
  }
  if (j.contains("verbosity")) {
    const std::string v = string_field(j, "verbosity");
    if (v == "quiet") c.verbosity = Verbosity::Quiet;
    else if (v == "info") c.verbosity = Verbosity::Info;
    else if (v == "debug") c.verbosity = Verbosity::Debug;
    else throw Error("config key 'verbosity' must be quiet, info or debug");
  }
  return c;
}

EngineConfig load_config(const std::string& path) {
  const fs::path dir = fs::path(path).parent_path();
  return parse_config(read_text_file(path), dir.empty() ? "." : dir.string());
}

void EngineConfig::validate() const {
  if (grounding_cap < 1) throw Error("grounding cap must be at least 1");
  {
    std::ifstream in(facts);
    if (!in) throw Error("cannot read facts file " + facts);
  }
  if (!fs::is_directory(workflows)) throw Error("workflow directory " + workflows + " does not exist");
  std::error_code ec;
  fs::create_directories(logdir, ec);
  if (!fs::is_directory(logdir)) throw Error("cannot create log directory " + logdir);
  const fs::path probe = fs::path(logdir) / ".write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error("log directory " + logdir + " is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace pamon
