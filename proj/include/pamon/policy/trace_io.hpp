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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pamon/policy/policy.hpp"

namespace pamon {

/// `WID SUBJECT TASK OWNER PURPOSE`, single spaces.
std::string format_request(const Request& r);

/// Parses one trace line. Blank and comment-only lines give nullopt.
std::optional<Request> parse_request_line(std::string_view line, std::size_t line_no = 0,
                                          const std::string& source = "<trace>");

std::vector<Request> parse_trace(std::string_view text, const std::string& source = "<trace>");
std::vector<Request> read_trace_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace pamon
