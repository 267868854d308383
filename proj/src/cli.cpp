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

#include "bosonbudget/cli.hpp"

#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "bosonbudget/io.hpp"
#include "bosonbudget/report.hpp"

namespace bosonbudget {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage:
        case ErrorKind::Dimension:
        case ErrorKind::Domain: return 1;
        case ErrorKind::Resource: return 2;
        case ErrorKind::Numeric:
        case ErrorKind::Arithmetic: return 3;
    }
    return 1;
}

namespace {

void emit_error(std::ostream& err, std::string_view kind, const std::string& message) {
    Json e;
    e["error"] = std::string(kind);
    e["message"] = message;
    err << e.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Error budgets for boson sampling devices", "bosonbudget"};
    RunConfig cfg;
    std::string config_path;
    std::uint64_t seed = 0;
    app.add_option("command", cfg.command, "sample | distribution | distance | budget | verify | bench")
        ->required()
        ->check(CLI::IsMember({"sample", "distribution", "distance", "budget", "verify", "bench"}));
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "root seed (required by stochastic commands)");
    app.add_option("--threads", cfg.threads, "worker cap, 0 = OpenMP default")->check(CLI::NonNegativeNumber);
    app.add_option("--out", cfg.out_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, to_string(ErrorKind::Usage), e.what());
        return exit_code(ErrorKind::Usage);
    }

    try {
        if (*seed_opt) cfg.seed = seed;
        if (!config_path.empty()) load_config_file(config_path, cfg);
        validate_run_config(cfg);
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

        const CommandOutput res = run_command(cfg, err);
        const std::string text = cfg.format == "csv" ? res.csv : res.report.dump(2) + "\n";
        if (cfg.out_path.empty()) {
            out << text;
        } else {
            write_text_file(cfg.out_path, text);
        }
        return 0;
    } catch (const Error& e) {
        emit_error(err, to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        emit_error(err, to_string(ErrorKind::Resource), "out of memory");
        return exit_code(ErrorKind::Resource);
    }
}

}  // namespace bosonbudget
