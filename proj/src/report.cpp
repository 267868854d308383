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

#include "bosonbudget/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bosonbudget/budget.hpp"
#include "bosonbudget/distinguishability.hpp"
#include "bosonbudget/error.hpp"
#include "bosonbudget/ideal_sampler.hpp"
#include "bosonbudget/permanent.hpp"
#include "bosonbudget/random_ensembles.hpp"
#include "bosonbudget/verify.hpp"

namespace bosonbudget {

namespace {

std::uint64_t require_seed(const RunConfig& cfg, const char* why) {
    if (!cfg.seed) throw UsageError(std::string("--seed is required: ") + why);
    return *cfg.seed;
}

Json finite_or_null(double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json device_json(const RunConfig& cfg, const DeviceConfig& dev) {
    Json d;
    d["N"] = dev.sources;
    d["M"] = dev.modes();
    d["photonProbs"] = dev.source.photon_probs;
    d["truncatedMass"] = dev.source.truncated_mass();
    d["lossProb"] = dev.detector.loss_prob;
    d["darkRate"] = dev.detector.dark_rate;
    d["network"] = {{"kind", cfg.network.kind}, {"unitarityDefect", dev.network.unitarity_defect()}};
    return d;
}

Json header(const RunConfig& cfg) {
    Json r;
    r["schemaVersion"] = kSchemaVersion;
    r["command"] = cfg.command;
    r["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
    r["rng"] = std::string(RngStream::algorithm);
    return r;
}

std::optional<DistinguishabilityParams> resolve_g(const RunConfig& cfg) {
    if (cfg.g) return cfg.g;
    if (cfg.jitter) {
        const int max_k = std::max(2, cfg.n);
        const std::uint64_t seed =
            max_k > 3 ? RngStream(require_seed(cfg, "jitter model with N > 3 uses Monte Carlo")).split(kJitterStream).seed()
                      : 0;
        return g_from_jitter(*cfg.jitter, max_k, seed);
    }
    return std::nullopt;
}

Json g_json(const DistinguishabilityParams& g) {
    Json j;
    j["g"] = g.g;
    j["avgFidelity"] = g.avg_fidelity ? Json(*g.avg_fidelity) : Json(nullptr);
    return j;
}

void maybe_write_network(const RunConfig& cfg, const DeviceConfig& dev) {
    if (!cfg.network_out.empty()) write_text_file(cfg.network_out, matrix_to_json(dev.network.matrix()));
}

CommandOutput cmd_sample(const RunConfig& cfg) {
    const RngStream root(require_seed(cfg, "sample is stochastic"));
    const DeviceConfig dev = make_device(cfg);
    maybe_write_network(cfg, dev);
    const auto dist = output_click_distribution(dev);
    RngStream rng = root.split(kSampleStream);
    const auto samples = sample_table(dist, cfg.sample_count, rng);
    std::vector<std::size_t> hist(static_cast<std::size_t>(dev.modes()) + 1, 0);
    Json list = Json::array();
    for (const auto& s : samples) {
        ++hist[static_cast<std::size_t>(s.count())];
        list.push_back(s.to_string());
    }
    Json r = header(cfg);
    r["device"] = device_json(cfg, dev);
    r["result"] = {{"sampleCount", samples.size()}, {"clickCountHistogram", hist}, {"samples", list}};
    return {r, samples_to_text(samples)};
}

CommandOutput cmd_distribution(const RunConfig& cfg) {
    const DeviceConfig dev = make_device(cfg);
    maybe_write_network(cfg, dev);
    const auto dist = output_click_distribution(dev);
    Json rows = Json::array();
    std::string csv = "pattern,prob\n";
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const std::string p = dist.outcomes[i].to_string();
        rows.push_back({{"pattern", p}, {"prob", dist.probs[i]}});
        csv += p + "," + format_double(dist.probs[i]) + "\n";
    }
    Json r = header(cfg);
    r["device"] = device_json(cfg, dev);
    r["result"] = {{"totalMass", dist.total_mass()}, {"patterns", rows}};
    return {r, csv};
}

CommandOutput cmd_distance(const RunConfig& cfg) {
    const DeviceConfig dev = make_device(cfg);
    maybe_write_network(cfg, dev);
    const DistanceParts d = distance_parts(dev);
    const BoundRA ra = bound_RA(dev.sources, dev.modes(), dev.source, dev.detector);
    const double simple = bound_RA_simple(dev.sources, dev.modes(), dev.source, dev.detector);
    Json r = header(cfg);
    r["device"] = device_json(cfg, dev);
    r["result"] = {{"V1", d.v1},          {"V2", d.v2},       {"Vb", d.vb},
                   {"total", d.total()},  {"boundRA", ra.ra}, {"boundRAClamped", ra.clamped()},
                   {"boundRASimple", simple}};
    std::string csv = "V1,V2,Vb,total,boundRA,boundRASimple\n" + format_double(d.v1) + "," + format_double(d.v2) +
                      "," + format_double(d.vb) + "," + format_double(d.total()) + "," + format_double(ra.ra) + "," +
                      format_double(simple) + "\n";
    return {r, csv};
}

Json optional_json(const std::optional<double>& x) {
    return x ? Json(*x) : Json(nullptr);
}

CommandOutput cmd_budget(const RunConfig& cfg) {
    const auto g = resolve_g(cfg);
    const BudgetReport b = evaluate_budget(cfg.n, cfg.m, cfg.source, cfg.detector, g, cfg.epsilon, cfg.delta);
    Json tol;
    for (const auto& t : b.max_tolerable) {
        Json e{{"feasible", t.feasible}, {"value", finite_or_null(t.value)}};
        e["dominantTerm"] = t.feasible ? Json(nullptr) : Json(t.dominant_term);
        tol[std::string(to_string(t.param))] = e;
    }
    Json res;
    res["epsilon"] = b.epsilon;
    res["delta"] = b.delta;
    res["N"] = b.n;
    res["M"] = b.m;
    res["RA"] = b.ra.ra;
    res["RAq"] = b.ra.q;
    res["RAqPrime"] = b.ra.q_prime;
    res["RASimple"] = b.ra_simple;
    res["RB"] = optional_json(b.rb);
    res["RBSmall"] = optional_json(b.rb_small);
    res["verdictA"] = b.verdict_a;
    res["verdictASimple"] = b.verdict_a_simple;
    res["verdictB"] = b.verdict_b ? Json(*b.verdict_b) : Json(nullptr);
    res["verdictBBasis"] = b.verdict_b_basis;
    res["networksPerHardInstance"] = b.networks_per_hard_instance;
    res["maxTolerable"] = tol;
    res["distinguishability"] = g ? g_json(*g) : Json(nullptr);
    res["caveat"] = b.caveat;
    res["elementFidelityNote"] = b.element_fidelity_note;

    std::string csv;
    if (!cfg.scaling_n.empty()) {
        Json rows = Json::array();
        csv = "N,requiredM,maxNu,maxR,maxOneMinusP1,maxOneMinusF,elementInfidelityScale\n";
        for (const auto& row : scaling_table(cfg.epsilon, cfg.delta, cfg.scaling_n)) {
            rows.push_back({{"N", row.n},
                            {"requiredM", row.required_m},
                            {"maxNu", finite_or_null(row.max_dark_rate)},
                            {"maxR", row.max_loss},
                            {"maxOneMinusP1", row.max_multi_photon},
                            {"maxOneMinusF", finite_or_null(row.max_mismatch)},
                            {"elementInfidelityScale", row.element_infidelity}});
            csv += std::to_string(row.n) + "," + std::to_string(row.required_m) + "," +
                   format_double(row.max_dark_rate) + "," + format_double(row.max_loss) + "," +
                   format_double(row.max_multi_photon) + "," + format_double(row.max_mismatch) + "," +
                   format_double(row.element_infidelity) + "\n";
        }
        res["scalingTable"] = rows;
    } else {
        csv = "RA,RASimple,verdictA,verdictB\n" + format_double(b.ra.ra) + "," + format_double(b.ra_simple) + "," +
              (b.verdict_a ? "pass" : "fail") + "," + (b.verdict_b ? (*b.verdict_b ? "pass" : "fail") : "none") +
              "\n";
    }
    Json r = header(cfg);
    r["result"] = res;
    return {r, csv};
}

CommandOutput cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> tests = cfg.tests;
    if (tests.empty()) tests = {"witness", "roundtrip", "suppression"};
    const DeviceConfig dev = make_device(cfg);
    maybe_write_network(cfg, dev);
    Json res;
    std::string csv = "test,key,value\n";
    for (const auto& t : tests) {
        if (t == "witness") {
            std::vector<ClickPattern> samples;
            std::string source;
            if (!cfg.samples_path.empty()) {
                samples = read_samples(cfg.samples_path);
                source = "file";
            } else {
                const RngStream root(require_seed(cfg, "witness samples are simulated when samplesPath is absent"));
                RngStream rng = root.split(kSampleStream);
                const auto dist = full_distribution(dev.network, OccupationVector::single_photons(dev.modes(), dev.sources));
                for (const auto& s : sample_ideal(dist, cfg.sample_count, rng)) {
                    samples.push_back(ClickPattern::from_occupation(s));
                }
                source = "ideal-simulation";
            }
            const WitnessResult w = row_norm_witness(dev.network, dev.sources, samples);
            res["witness"] = {{"sampleSource", source},
                              {"sampleCount", w.sample_count},
                              {"rejectedCount", w.rejected_count},
                              {"sampleMean", w.sample_mean},
                              {"standardError", w.standard_error},
                              {"referenceMeanUniform", w.reference_uniform},
                              {"referenceMeanBS", w.reference_bs},
                              {"threshold", w.threshold},
                              {"decision", std::string(to_string(w.decision))}};
            csv += "witness,sampleMean," + format_double(w.sample_mean) + "\n";
            csv += "witness,decision," + std::string(to_string(w.decision)) + "\n";
        } else if (t == "roundtrip") {
            const double p = unitarity_roundtrip(dev);
            res["roundtrip"] = {{"returnProbability", p}, {"noiseless", dev.noiseless()}};
            csv += "roundtrip,returnProbability," + format_double(p) + "\n";
        } else if (t == "suppression") {
            const auto resolved = resolve_g(cfg);
            const auto g = resolved ? *resolved : DistinguishabilityParams::uniform(cfg.n, 1.0);
            const SuppressionResult s = suppression_test(cfg.n, g);
            res["suppression"] = {{"N", cfg.n},
                                  {"lawValid", s.law_valid},
                                  {"suppressedMass", s.suppressed_mass},
                                  {"idealSuppressedMass", s.ideal_suppressed_mass},
                                  {"flaggedOutputs", s.flagged_outputs},
                                  {"totalOutputs", s.total_outputs},
                                  {"lawViolations", s.law_violations}};
            csv += "suppression,suppressedMass," + format_double(s.suppressed_mass) + "\n";
        }
    }
    Json r = header(cfg);
    r["device"] = device_json(cfg, dev);
    r["result"] = res;
    return {r, csv};
}

CommandOutput cmd_bench(const RunConfig& cfg, std::ostream& diag) {
    const RngStream root(require_seed(cfg, "bench draws random matrices"));
    Json rows = Json::array();
    std::string csv = "n,perRe,perIm,serialMatches\n";
    for (int n = 2; n <= cfg.bench_max_n; ++n) {
        RngStream rng = root.split(kBenchStream).split(static_cast<std::uint64_t>(n));
        const ComplexMatrix a = gaussian_submatrix(n, n, rng);
        const auto t0 = std::chrono::steady_clock::now();
        const Complex par = permanent_ryser(a);
        const auto t1 = std::chrono::steady_clock::now();
        const Complex ser = reference::permanent_ryser_serial(a);
        const auto t2 = std::chrono::steady_clock::now();
        const bool match = par == ser;
        char line[160];
        std::snprintf(line, sizeof line, "bench n=%d parallel=%.6fs serial=%.6fs\n", n,
                      std::chrono::duration<double>(t1 - t0).count(), std::chrono::duration<double>(t2 - t1).count());
        diag << line;
        rows.push_back({{"n", n}, {"perRe", par.real()}, {"perIm", par.imag()}, {"serialMatches", match}});
        csv += std::to_string(n) + "," + format_double(par.real()) + "," + format_double(par.imag()) + "," +
               (match ? "true" : "false") + "\n";
    }
    Json r = header(cfg);
    r["result"] = {{"permanents", rows}};
    return {r, csv};
}

}  // namespace

NetworkUnitary make_network(const RunConfig& cfg) {
    const auto& kind = cfg.network.kind;
    if (kind == "haar") {
        if (cfg.m > kMaxHaarModes) {
            throw ResourceError("haar network: M=" + std::to_string(cfg.m) + " exceeds " + std::to_string(kMaxHaarModes));
        }
        RngStream rng = RngStream(require_seed(cfg, "Haar networks are random")).split(kNetworkStream);
        return haar_unitary(cfg.m, rng);
    }
    if (kind == "fourier") return fourier_matrix(cfg.m);
    if (kind == "identity") return NetworkUnitary(ComplexMatrix::Identity(cfg.m, cfg.m));
    ComplexMatrix u = read_matrix_file(cfg.network.path);
    if (u.rows() != cfg.m) {
        throw DimensionError("network file has M=" + std::to_string(u.rows()) + " but config says M=" +
                             std::to_string(cfg.m));
    }
    return NetworkUnitary(std::move(u));
}

DeviceConfig make_device(const RunConfig& cfg) {
    DeviceConfig dev{make_network(cfg), cfg.n, cfg.source, cfg.detector};
    dev.validate();
    return dev;
}

CommandOutput run_command(const RunConfig& cfg, std::ostream& diag) {
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "distribution") return cmd_distribution(cfg);
    if (cfg.command == "distance") return cmd_distance(cfg);
    if (cfg.command == "budget") return cmd_budget(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "bench") return cmd_bench(cfg, diag);
    throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace bosonbudget
