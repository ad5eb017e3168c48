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

#include <stdexcept>
#include <string>

namespace pamon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reference to an entity that is not declared in the current policy.
/// `field` names the request/tuple slot that carried it.
class UnknownEntityError : public Error {
 public:
  UnknownEntityError(std::string field, std::string value)
      : Error("undeclared " + field + " '" + value + "'"),
        field_(std::move(field)),
        value_(std::move(value)) {}
  const std::string& field() const { return field_; }
  const std::string& value() const { return value_; }

 private:
  std::string field_;
  std::string value_;
};

}  // namespace pamon
