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
#include <string>

#include "bosonbudget/io.hpp"
#include "bosonbudget/noise_model.hpp"
#include "bosonbudget/rng.hpp"

namespace bosonbudget {

/// Stream indices split off the root seed.
inline constexpr std::uint64_t kNetworkStream = 1;
inline constexpr std::uint64_t kSampleStream = 2;
inline constexpr std::uint64_t kJitterStream = 3;
inline constexpr std::uint64_t kBenchStream = 4;

struct CommandOutput {
    Json report;
    std::string csv;  // table body for --format csv
};

/// Builds the network named by the config; Haar draws need a seed.
NetworkUnitary make_network(const RunConfig& cfg);
DeviceConfig make_device(const RunConfig& cfg);

/// Executes one command. Timings, if any, go to `diag` only.
CommandOutput run_command(const RunConfig& cfg, std::ostream& diag);

}  // namespace bosonbudget
