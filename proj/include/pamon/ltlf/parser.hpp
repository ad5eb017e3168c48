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

#include <set>
#include <string>
#include <string_view>

#include "pamon/error.hpp"
#include "pamon/ltlf/formula.hpp"

namespace pamon::ltlf {

/// Syntax error in formula text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string found,
             std::set<std::string> expected, std::string detail = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& found() const { return found_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string found_;
  std::set<std::string> expected_;
};

/// Parses the concrete formula syntax.
///
/// Precedence, tightest first: `! X G F`; `U W` (right-assoc); `&`; `|`;
/// `->` (right-assoc). `&` and `|` associate to the left. `#` starts a comment
/// that runs to the end of the line.
Formula parse(std::string_view text);

}  // namespace pamon::ltlf
