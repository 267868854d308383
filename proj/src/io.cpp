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

#include "bosonbudget/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bosonbudget/error.hpp"
#include "bosonbudget/permanent.hpp"

namespace bosonbudget {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string matrix_to_json(const ComplexMatrix& u) {
    std::string s = "{\"M\": " + std::to_string(u.rows()) + ", \"entries\": [";
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            if (i || j) s += ", ";
            s += "[" + format_double(u(i, j).real()) + ", " + format_double(u(i, j).imag()) + "]";
        }
    }
    s += "]}\n";
    return s;
}

std::string matrix_to_csv(const ComplexMatrix& u) {
    std::string s;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        if (j) s += ",";
        s += "re_" + std::to_string(j) + ",im_" + std::to_string(j);
    }
    s += "\n";
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            if (j) s += ",";
            s += format_double(u(i, j).real()) + "," + format_double(u(i, j).imag());
        }
        s += "\n";
    }
    return s;
}

ComplexMatrix matrix_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("matrix file: ") + e.what());
    }
    try {
        const int m = doc.at("M").get<int>();
        const auto& entries = doc.at("entries");
        if (m < 1) throw DomainError("matrix file: M must be >= 1");
        if (entries.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
            throw DimensionError("matrix file: expected " + std::to_string(m * m) + " entries, found " +
                                 std::to_string(entries.size()));
        }
        ComplexMatrix u(m, m);
        std::size_t k = 0;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j, ++k) {
                const auto& e = entries[k];
                if (!e.is_array() || e.size() != 2) throw UsageError("matrix file: entries must be [re, im] pairs");
                u(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
            }
        }
        return u;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("matrix file: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw UsageError("write failed for '" + path.string() + "'");
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    return matrix_from_json(read_text_file(path));
}

std::vector<ClickPattern> read_samples(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::vector<ClickPattern> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(ClickPattern::from_string(line));
    }
    return out;
}

std::string samples_to_text(const std::vector<ClickPattern>& samples) {
    std::string s;
    for (const auto& m : samples) s += m.to_string() + "\n";
    return s;
}

namespace {

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw UsageError("config: '" + where + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw UsageError("config: unknown key '" + key + "' in " + where);
    }
}

}  // namespace

void apply_config_json(const Json& doc, RunConfig& cfg) {
    try {
        check_keys(doc, {"N", "M", "source", "detector", "network", "distinguishability", "epsilon", "delta",
                         "sampleCount", "samplesPath", "networkOut", "scalingN", "tests", "benchMaxN"},
                   "config");
        if (doc.contains("N")) cfg.n = doc["N"].get<int>();
        if (doc.contains("M")) cfg.m = doc["M"].get<int>();
        if (doc.contains("source")) {
            check_keys(doc["source"], {"photonProbs"}, "source");
            cfg.source.photon_probs = doc["source"].at("photonProbs").get<std::vector<double>>();
        }
        if (doc.contains("detector")) {
            const auto& d = doc["detector"];
            check_keys(d, {"lossProb", "darkRate"}, "detector");
            if (d.contains("lossProb")) cfg.detector.loss_prob = d["lossProb"].get<double>();
            if (d.contains("darkRate")) cfg.detector.dark_rate = d["darkRate"].get<double>();
        }
        if (doc.contains("network")) {
            const auto& n = doc["network"];
            check_keys(n, {"kind", "path"}, "network");
            cfg.network.kind = n.at("kind").get<std::string>();
            if (n.contains("path")) cfg.network.path = n["path"].get<std::string>();
        }
        if (doc.contains("distinguishability")) {
            const auto& d = doc["distinguishability"];
            check_keys(d, {"g", "avgFidelity", "jitter"}, "distinguishability");
            if (d.contains("g") && d.contains("jitter")) {
                throw UsageError("config: give either distinguishability.g or distinguishability.jitter");
            }
            if (d.contains("g")) {
                DistinguishabilityParams p;
                p.g = d["g"].get<std::vector<double>>();
                if (d.contains("avgFidelity")) p.avg_fidelity = d["avgFidelity"].get<double>();
                cfg.g = p;
            } else if (d.contains("avgFidelity")) {
                throw UsageError("config: avgFidelity needs an explicit g vector");
            }
            if (d.contains("jitter")) {
                const auto& j = d["jitter"];
                check_keys(j, {"spectralWidth", "jitterStd"}, "distinguishability.jitter");
                cfg.jitter = JitterSourceSpec{j.at("spectralWidth").get<double>(), j.at("jitterStd").get<double>()};
            }
        }
        if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
        if (doc.contains("delta")) cfg.delta = doc["delta"].get<double>();
        if (doc.contains("sampleCount")) cfg.sample_count = doc["sampleCount"].get<std::size_t>();
        if (doc.contains("samplesPath")) cfg.samples_path = doc["samplesPath"].get<std::string>();
        if (doc.contains("networkOut")) cfg.network_out = doc["networkOut"].get<std::string>();
        if (doc.contains("scalingN")) cfg.scaling_n = doc["scalingN"].get<std::vector<int>>();
        if (doc.contains("tests")) cfg.tests = doc["tests"].get<std::vector<std::string>>();
        if (doc.contains("benchMaxN")) cfg.bench_max_n = doc["benchMaxN"].get<int>();
    } catch (const Json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

void load_config_file(const std::filesystem::path& path, RunConfig& cfg) {
    const std::string text = read_text_file(path);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError("config '" + path.string() + "': " + e.what());
    }
    apply_config_json(doc, cfg);
}

void validate_run_config(const RunConfig& cfg) {
    static const std::set<std::string> commands{"sample", "distribution", "distance", "budget", "verify", "bench"};
    if (!commands.count(cfg.command)) throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
    if (cfg.threads < 0) throw UsageError("--threads must be >= 0");
    if (cfg.n < 1) throw UsageError("config: N must be >= 1");
    if (cfg.m < cfg.n) throw UsageError("config: M must be >= N");
    static const std::set<std::string> kinds{"haar", "fourier", "identity", "file"};
    if (!kinds.count(cfg.network.kind)) throw UsageError("config: unknown network kind '" + cfg.network.kind + "'");
    if (cfg.network.kind == "file" && cfg.network.path.empty()) throw UsageError("config: network.path is required");
    for (double p : cfg.source.photon_probs) {
        if (!std::isfinite(p) || p < 0.0) throw UsageError("config: photonProbs must be finite and >= 0");
    }
    if (!(cfg.detector.loss_prob >= 0.0 && cfg.detector.loss_prob <= 1.0)) {
        throw UsageError("config: lossProb must lie in [0,1]");
    }
    if (!(cfg.detector.dark_rate >= 0.0) || !std::isfinite(cfg.detector.dark_rate)) {
        throw UsageError("config: darkRate must be >= 0");
    }
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 2.0)) throw UsageError("config: epsilon must lie in (0,2]");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw UsageError("config: delta must lie in (0,1)");
    if (cfg.bench_max_n < 1 || cfg.bench_max_n > permanent_cap()) {
        throw UsageError("config: benchMaxN out of range");
    }
    static const std::set<std::string> tests{"witness", "roundtrip", "suppression"};
    for (const auto& t : cfg.tests) {
        if (!tests.count(t)) throw UsageError("config: unknown verify test '" + t + "'");
    }
    for (int n : cfg.scaling_n) {
        if (n < 1) throw UsageError("config: scalingN entries must be >= 1");
    }
}

}  // namespace bosonbudget
