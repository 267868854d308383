// Copyright 2026 The bosonbudget Authors
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

#include <iosfwd>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

/// 0 success; 1 usage, dimension or domain; 2 resource; 3 numeric or arithmetic.
int exit_code(ErrorKind kind);

/// Entry point of the bosonbudget tool. Reports go to --out or `out`;
/// errors are a single JSON line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bosonbudget
