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

#include "pamon/policy/trace_io.hpp"

#include <fstream>
#include <sstream>

namespace pamon {

std::string format_request(const Request& r) {
  return r.wid + " " + r.subject + " " + r.task + " " + r.owner + " " + r.purpose;
}

std::optional<Request> parse_request_line(std::string_view line, std::size_t line_no,
                                          const std::string& source) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::istringstream in{std::string(line)};
  std::vector<std::string> f;
  std::string w;
  while (in >> w) f.push_back(w);
  if (f.empty()) return std::nullopt;
  if (f.size() != 5) {
    throw PolicyError(source, line_no,
                      "expected 5 fields WID SUBJECT TASK OWNER PURPOSE, got " + std::to_string(f.size()));
  }
  return Request{f[0], f[1], f[2], f[3], f[4]};
}

std::vector<Request> parse_trace(std::string_view text, const std::string& source) {
  std::vector<Request> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (auto r = parse_request_line(line, ++n, source)) out.push_back(std::move(*r));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Request> read_trace_file(const std::string& path) {
  return parse_trace(read_text_file(path), path);
}

}  // namespace pamon
