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

#include <stdlib.h>

#include <filesystem>
#include <string>
#include <vector>

#include "pamon/policy/policy.hpp"
#include "pamon/policy/trace_io.hpp"

namespace pamon::testing {

inline std::string data_path(const std::string& rel) { return std::string(PAMON_DATA_DIR) + "/" + rel; }

inline Policy jobhunting_policy() { return load_policy_file(data_path("jobhunting/jobhunting.facts")); }
inline Policy onlybob_policy() { return load_policy_file(data_path("jobhunting/onlybob.facts")); }

/// r0 .. r5 under wid "wid".
inline std::vector<Request> golden_trace() { return read_trace_file(data_path("jobhunting/golden.trace")); }

inline Request req(const std::string& subject, const std::string& task,
                   const std::string& owner = "sam", const std::string& purpose = "jobHunting",
                   const std::string& wid = "wid") {
  return {wid, subject, task, owner, purpose};
}

/// One purpose `p` whose workflow is `constraints` over `tasks`. Tasks use
/// nothing; callers add objects, actions and tuples as needed.
inline Policy make_policy(const std::vector<std::string>& tasks, const std::vector<ltlf::Formula>& constraints,
                          const std::vector<std::string>& subjects = {"s1"},
                          const std::vector<std::string>& owners = {"o1"}) {
  Policy p;
  for (const auto& s : subjects) p.add_subject(s);
  for (const auto& o : owners) p.add_owner(o);
  for (const auto& t : tasks) p.add_task(t);
  p.add_purpose("p", WorkflowSpec{"p.wf", tasks, constraints});
  return p;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "pamon-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw Error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return (std::filesystem::path(path_) / name).string(); }

 private:
  std::string path_;
};

}  // namespace pamon::testing
