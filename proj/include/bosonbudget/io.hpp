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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosonbudget/distinguishability.hpp"
#include "bosonbudget/fock.hpp"
#include "bosonbudget/matrix.hpp"
#include "bosonbudget/noise_model.hpp"

namespace bosonbudget {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Network matrix file: {"M": m, "entries": [[re, im], ...]} row-major,
/// every component written with 17 significant digits.
std::string matrix_to_json(const ComplexMatrix& u);
/// Header re_0,im_0,...; one line per row.
std::string matrix_to_csv(const ComplexMatrix& u);
ComplexMatrix matrix_from_json(const std::string& text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// One 0/1 pattern per line; blank lines are skipped.
std::vector<ClickPattern> read_samples(const std::filesystem::path& path);
std::string samples_to_text(const std::vector<ClickPattern>& samples);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// %.17g
std::string format_double(double x);

struct NetworkSpec {
    std::string kind = "haar";  // haar | fourier | identity | file
    std::string path;
};

struct RunConfig {
    std::string command;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out_path;
    std::string format = "json";

    int n = 2;
    int m = 8;
    SourceModel source;
    DetectorModel detector;
    NetworkSpec network;
    std::optional<DistinguishabilityParams> g;
    std::optional<JitterSourceSpec> jitter;
    double epsilon = 0.1;
    double delta = 0.1;
    std::size_t sample_count = 1000;
    std::string samples_path;
    std::string network_out;
    std::vector<int> scaling_n;
    std::vector<std::string> tests;
    int bench_max_n = 12;
};

/// Fills the device and run fields of `cfg` from a JSON config document.
/// Unknown keys and wrong types are usage errors.
void apply_config_json(const Json& doc, RunConfig& cfg);
void load_config_file(const std::filesystem::path& path, RunConfig& cfg);

/// Range checks shared by every command.
void validate_run_config(const RunConfig& cfg);

}  // namespace bosonbudget
