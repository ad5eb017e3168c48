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

#include <iostream>

namespace pamon {

/// Runs the pamon command line. Returns the process exit status: 0 for a
/// positive answer, 1 for a negative one, 2 for usage, parse and IO errors.
int run_cli(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace pamon
