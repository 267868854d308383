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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bosonbudget/budget.hpp"
#include "bosonbudget/cli.hpp"
#include "bosonbudget/distinguishability.hpp"
#include "bosonbudget/ideal_sampler.hpp"
#include "bosonbudget/io.hpp"
#include "bosonbudget/noise_model.hpp"
#include "bosonbudget/permanent.hpp"
#include "bosonbudget/random_ensembles.hpp"
#include "bosonbudget/verify.hpp"

using namespace bosonbudget;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Stats {
    double sum = 0, sum2 = 0;
    std::size_t n = 0;
    void add(double x) {
        sum += x;
        sum2 += x * x;
        ++n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double se() const {
        const double m = mean();
        return std::sqrt(std::max(0.0, (sum2 / static_cast<double>(n) - m * m)) / static_cast<double>(n - 1));
    }
};

ComplexMatrix random_complex(int n, RngStream& rng) {
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    return a;
}

Outcome permanent_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(1001);
    double worst = 0;
    for (int n = 2; n <= 8; ++n) {
        for (int t = 0; t < 500; ++t) {
            const auto a = random_complex(n, rng);
            const Complex naive = permanent_naive(a);
            worst = std::max(worst, std::abs(permanent_ryser(a) - naive) / std::max(1.0, std::abs(naive)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-9 && secs < 60, "max rel err " + fmt("%.2e", worst) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome contingency_identity() {
    RngStream rng(1002);
    double worst = 0;
    int done = 0;
    while (done < 100) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const int photons = 1 + static_cast<int>(rng() % 4);
        std::vector<int> n(static_cast<std::size_t>(m), 0), s(static_cast<std::size_t>(m), 0);
        for (int k = 0; k < photons; ++k) {
            ++n[rng() % static_cast<std::uint64_t>(m)];
            ++s[rng() % static_cast<std::uint64_t>(m)];
        }
        const auto u = haar_unitary(m, rng);
        const OccupationVector on(n), os(s);
        const Complex a = permanent_contingency(u, on, os);
        const Complex b = permanent_repeated(u, on, os);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        ++done;
    }
    return {worst <= 1e-9, "100 instances, max rel err " + fmt("%.2e", worst)};
}

Outcome haar_average() {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    for (auto [n, m] : {std::pair{2, 80}, std::pair{3, 180}}) {
        RngStream root(1003 + static_cast<std::uint64_t>(n));
        const auto n0 = OccupationVector::single_photons(m, n);
        std::vector<int> occ(static_cast<std::size_t>(m), 0);
        for (int k = 0; k < n; ++k) occ[static_cast<std::size_t>(m - 1 - 2 * k)] = 1;
        const OccupationVector s(occ);
        Stats st;
        const int draws = 2000;
        for (int t = 0; t < draws; ++t) {
            RngStream rng = root.split(static_cast<std::uint64_t>(t));
            st.add(prob_ideal(haar_unitary(m, rng), n0, s));
        }
        const double want = factorial(n) / std::pow(m, n);
        const double z = (st.mean() - want) / st.se();
        pass = pass && std::abs(z) <= 3.0;
        detail += "(N=" + std::to_string(n) + ",M=" + std::to_string(m) + ") z=" + fmt("%+.2f", z) + " ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {pass && secs < 600, detail + fmt("%.1f", secs) + " s"};
}

Outcome hom() {
    const auto bs = fourier_matrix(2);
    const OccupationVector in{1, 1};
    const double p11 = prob_ideal(bs, in, OccupationVector{1, 1});
    const double p20 = prob_ideal(bs, in, OccupationVector{2, 0});
    const double p02 = prob_ideal(bs, in, OccupationVector{0, 2});
    const double err = std::max({std::abs(p11), std::abs(p20 - 0.5), std::abs(p02 - 0.5)});
    return {err <= 1e-12, "max err " + fmt("%.1e", err)};
}

Outcome normalization() {
    RngStream root(1005);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        RngStream rng = root.split(static_cast<std::uint64_t>(t));
        const int m = 3 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % std::min(m, 3));
        const double trunc = 0.02 * rng.uniform();
        const double p2 = 0.05 * rng.uniform();
        const double p0 = 0.1 * rng.uniform();
        const SourceModel src{{p0, 1 - p0 - p2 - trunc, p2}};
        const DetectorModel det{0.2 * rng.uniform(), 0.05 * rng.uniform()};
        const DeviceConfig dev{haar_unitary(m, rng), n, src, det};

        const auto ideal = full_distribution(dev.network, OccupationVector::single_photons(m, n));
        worst = std::max(worst, std::abs(ideal.total_mass() - 1.0));

        // P_D over every pattern for a random network output
        std::vector<int> s(static_cast<std::size_t>(m));
        for (auto& x : s) x = static_cast<int>(rng() % 3);
        const OccupationVector os(s);
        double pd = 0;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) {
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(m));
            for (int l = 0; l < m; ++l) bits[static_cast<std::size_t>(l)] = static_cast<std::uint8_t>(b >> l & 1);
            pd += detector_prob(det, ClickPattern(bits), os);
        }
        worst = std::max(worst, std::abs(pd - 1.0));

        double pi = 0;
        for (const auto& in : input_support(dev)) pi += in.prob;
        const double kept = std::pow(1.0 - src.truncated_mass(), n);
        worst = std::max(worst, std::abs(pi - kept));

        const auto clicks = output_click_distribution(dev);
        worst = std::max(worst, std::abs(clicks.total_mass() - kept));
    }
    return {worst <= 1e-9, "50 instances, max defect " + fmt("%.1e", worst)};
}

Outcome ra_dominance() {
    std::string detail;
    bool pass = true;
    struct Case {
        int n, m;
        std::vector<double> pk;
    };
    const double r = 0.02, nu = 1e-4;
    const Case cases[] = {{2, 80, {0.02, 0.98}}, {2, 80, {0.01, 0.98, 0.01}}, {3, 180, {0.02, 0.98}}};
    for (const auto& c : cases) {
        RngStream root(1006 + static_cast<std::uint64_t>(c.n * 10 + c.pk.size()));
        const SourceModel src{c.pk};
        const DetectorModel det{r, nu};
        Stats st;
        for (int t = 0; t < 200; ++t) {
            RngStream rng = root.split(static_cast<std::uint64_t>(t));
            st.add(distance_parts({haar_unitary(c.m, rng), c.n, src, det}).total());
        }
        const double bound = bound_RA(c.n, c.m, src, det).ra;
        pass = pass && st.mean() <= bound;
        detail += "(N=" + std::to_string(c.n) + ",M=" + std::to_string(c.m) + ",kmax=" + std::to_string(src.kmax()) +
                  ") mean " + fmt("%.4f", st.mean()) + " <= RA " + fmt("%.4f", bound) + "; ";
    }
    RngStream grid(1007);
    int points = 0, violations = 0;
    while (points < 1000) {
        const int n = 1 + static_cast<int>(grid() % 20);
        const int m = n + static_cast<int>(grid() % 5000);
        const double p1 = 1 - 0.05 * grid.uniform();
        const SourceModel src{{1 - p1, p1}};
        const DetectorModel det{0.05 * grid.uniform(), 1e-4 * grid.uniform()};
        const double a = bound_RA(n, m, src, det).ra;
        const double b = bound_RA_simple(n, m, src, det);
        if (a > 1 || b > 1) continue;
        ++points;
        violations += b < a;
    }
    pass = pass && violations == 0;
    return {pass, detail + "simple >= RA on " + std::to_string(points) + " points, " + std::to_string(violations) +
                      " violations"};
}

Outcome ra_closed_form() {
    double worst = 0;
    for (int n = 1; n <= 20; ++n) {
        for (int m = n; m <= 4000; m += 1 + m / 3) {
            const double ra = bound_RA(n, m, SourceModel::ideal(), DetectorModel{}).ra;
            worst = std::max(worst, std::abs(ra - 3.0 * n * n / (2.0 * m)));
        }
    }
    return {worst <= 1e-14, "max err " + fmt("%.1e", worst)};
}

Outcome rb_consistency() {
    double exact_err = 0;
    for (double g = 0; g <= 1.0; g += 0.01) {
        exact_err = std::max(exact_err, std::abs(bound_RB(2, DistinguishabilityParams::uniform(2, g)) - (1 - g) * (1 - g) / 2));
    }
    double worst_rel = 0;
    for (int n = 2; n <= 8; ++n) {
        for (double d : {1e-3, 3e-4, 1e-4, 1e-5, 1e-6}) {
            const double exact = bound_RB(n, DistinguishabilityParams::from_fidelity(n, 1 - d));
            worst_rel = std::max(worst_rel, std::abs(bound_RB_smallmismatch(n, 1 - d) / exact - 1));
        }
    }
    const double at1 = bound_RB_smallmismatch(1, 0.5);
    return {exact_err <= 1e-15 && worst_rel <= 0.2 && at1 == 0.0,
            "N=2 err " + fmt("%.1e", exact_err) + ", small-mismatch max rel dev " + fmt("%.3f", worst_rel) +
                ", N=1 value " + fmt("%g", at1)};
}

Outcome mismatch_limits() {
    RngStream root(1009);
    double ideal_err = 0, classical_err = 0, completeness = 0;
    for (int t = 0; t < 100; ++t) {
        RngStream rng = root.split(static_cast<std::uint64_t>(t));
        const int m = 2 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<int> in(static_cast<std::size_t>(m), 0), out(static_cast<std::size_t>(m), 0);
        for (int k = 0; k < n; ++k) {
            ++in[rng() % static_cast<std::uint64_t>(m)];
            ++out[rng() % static_cast<std::uint64_t>(m)];
        }
        const auto u = haar_unitary(m, rng);
        const OccupationVector on(in), os(out);
        ideal_err = std::max(ideal_err, std::abs(prob_mismatch(u, on, os, DistinguishabilityParams::uniform(n, 1.0)) -
                                                 prob_ideal(u, on, os)));
        const ComplexMatrix abs2 = repeated_submatrix(u.matrix(), on, os).cwiseAbs2().cast<Complex>();
        const double classical = permanent_ryser(abs2).real() / (mu_double(on) * mu_double(os));
        classical_err = std::max(classical_err,
                                 std::abs(prob_mismatch(u, on, os, DistinguishabilityParams::uniform(n, 0.0)) - classical));
        if (t < 20 && n <= m) {
            const auto distinct = OccupationVector::single_photons(m, n);
            DistinguishabilityParams g;
            for (int k = 2; k <= n; ++k) g.g.push_back(rng.uniform());
            double total = 0;
            for (const auto& s : enumerate_outputs(m, n, false)) total += prob_mismatch(u, distinct, s, g);
            completeness = std::max(completeness, std::abs(total - 1));
        }
    }
    return {ideal_err <= 1e-10 && classical_err <= 1e-10 && completeness <= 1e-9,
            "g=1 err " + fmt("%.1e", ideal_err) + ", g=0 err " + fmt("%.1e", classical_err) + ", completeness " +
                fmt("%.1e", completeness)};
}

Outcome rb_gaussian() {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 3, m = 180, draws = 500;
    const auto g = DistinguishabilityParams::uniform(n, 0.99);
    const double rb = bound_RB(n, g);
    const RngStream root(1010);
    const std::uint64_t patterns = binomial(m, n);
    Stats v2;
    for (int t = 0; t < draws; ++t) {
        RngStream rng = root.split(static_cast<std::uint64_t>(t));
        ComplexMatrix sub(n, m);
        const double sd = std::sqrt(0.5 / m);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < m; ++l) sub(i, l) = Complex(sd * rng.normal(), sd * rng.normal());
        double v = 0;
        std::vector<int> pos = unrank_combination(m, n, 0);
        ComplexMatrix a(n, n);
        for (std::uint64_t k = 0; k < patterns; ++k) {
            for (int j = 0; j < n; ++j) a.col(j) = sub.col(pos[static_cast<std::size_t>(j)]);
            v += std::abs(mismatch_form(a, g) - std::norm(permanent_ryser(a)));
            next_combination(pos, m);
        }
        v2.add(v * v);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {v2.mean() <= rb + 3 * v2.se() && secs < 1200,
            "mean V^2 " + fmt("%.3e", v2.mean()) + " (SE " + fmt("%.1e", v2.se()) + ") vs RB " + fmt("%.3e", rb) + ", " +
                fmt("%.0f", secs) + " s"};
}

Outcome budget_inversion() {
    double worst = 0;
    HardwareParams base;
    base.dark_rate = 2e-9;
    base.loss_prob = 3e-5;
    base.multi_photon = 1e-5;
    for (int n : {2, 5, 10, 20}) {
        const int m = 600 * n * n;
        for (auto p : {BudgetParam::DarkRate, BudgetParam::LossProb, BudgetParam::MultiPhoton}) {
            const auto t = invert_budget(n, m, 0.1, 0.1, p, base);
            if (!t.feasible) return {false, "unexpected infeasible case"};
            HardwareParams hw = base;
            (p == BudgetParam::DarkRate ? hw.dark_rate : p == BudgetParam::LossProb ? hw.loss_prob : hw.multi_photon) = t.value;
            worst = std::max(worst, std::abs(linear_condition_lhs(n, m, hw) - 0.01));
        }
        const auto f = invert_budget(n, m, 0.1, 0.1, BudgetParam::Mismatch, base);
        worst = std::max(worst, std::abs(bound_RB_smallmismatch(n, 1 - f.value) - 0.001));
    }
    const std::vector<int> ns{10, 40};
    const auto rows = scaling_table(0.1, 0.1, ns);
    const double ratio = rows[1].max_mismatch / rows[0].max_mismatch;
    return {worst <= 1e-12 && std::abs(ratio / 0.125 - 1) <= 0.1,
            "max residual " + fmt("%.1e", worst) + ", fidelity ratio N=40/N=10 " + fmt("%.4f", ratio) + " vs 0.125"};
}

Outcome verification_suite() {
    const int m = 9, n = 3;
    const RngStream root(1012);
    int correct = 0;
    for (int t = 0; t < 100; ++t) {
        RngStream rng = root.split(static_cast<std::uint64_t>(t));
        const auto u = haar_unitary(m, rng);
        const auto refs = witness_references(u, n);
        std::vector<ClickPattern> samples;
        const bool use_bs = t % 2 == 0;
        if (use_bs) {
            const auto dist = full_distribution(u, OccupationVector::single_photons(m, n));
            for (const auto& s : sample_ideal(dist, 10000, rng)) samples.push_back(ClickPattern::from_occupation(s));
        } else {
            const std::uint64_t total = binomial(m, n);
            for (int k = 0; k < 10000; ++k) samples.push_back(ClickPattern::from_modes(m, unrank_combination(m, n, rng() % total)));
        }
        const auto r = row_norm_witness(u, n, samples, refs);
        correct += r.decision == (use_bs ? WitnessDecision::BosonSampling : WitnessDecision::Uniform);
    }

    double roundtrip_err = 0;
    bool noisy_below = true;
    for (int t = 0; t < 10; ++t) {
        RngStream rng = root.split(1000 + static_cast<std::uint64_t>(t));
        const auto u = haar_unitary(6, rng);
        const int sources = 1 + t % 3;
        roundtrip_err = std::max(roundtrip_err, std::abs(unitarity_roundtrip({u, sources, SourceModel::ideal(), DetectorModel{}}) - 1));
        for (double nu : {1e-8, 1e-4, 0.1}) {
            noisy_below = noisy_below && unitarity_roundtrip({u, sources, SourceModel::ideal(), DetectorModel{0, nu}}) < 1.0;
        }
    }

    double leak_ideal = 0, leak_min = 1;
    bool laws = true;
    for (int k = 2; k <= 5; ++k) {
        const auto ideal = suppression_test(k, DistinguishabilityParams::uniform(k, 1.0));
        const auto noisy = suppression_test(k, DistinguishabilityParams::uniform(k, 0.9));
        laws = laws && ideal.law_valid && noisy.law_valid;
        leak_ideal = std::max(leak_ideal, ideal.suppressed_mass);
        leak_min = std::min(leak_min, noisy.suppressed_mass);
    }
    return {correct >= 99 && roundtrip_err <= 1e-10 && noisy_below && laws && leak_ideal <= 1e-10 && leak_min > 0,
            "witness " + std::to_string(correct) + "/100, roundtrip err " + fmt("%.1e", roundtrip_err) +
                (noisy_below ? ", dark counts < 1" : ", dark counts NOT < 1") + ", leak g=1 " + fmt("%.1e", leak_ideal) +
                ", min leak g=0.9 " + fmt("%.2e", leak_min)};
}

std::string run_tool(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"bosonbudget"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "bosonbudget_acceptance";
    std::filesystem::create_directories(dir);
    const auto cfg = (dir / "device.json").string();
    write_text_file(cfg, R"({"N": 3, "M": 6, "source": {"photonProbs": [0.03, 0.95, 0.02]},
  "detector": {"lossProb": 0.05, "darkRate": 0.001}, "network": {"kind": "haar"},
  "distinguishability": {"jitter": {"spectralWidth": 1.0, "jitterStd": 0.05}},
  "sampleCount": 2000, "scalingN": [4, 8, 16], "benchMaxN": 10})");
    int compared = 0, differing = 0;
    for (const char* cmd : {"sample", "distribution", "distance", "budget", "verify", "bench"}) {
        for (const char* threads : {"1", "2"}) {
            const std::vector<std::string> args{cmd, "--config", cfg, "--seed", "2024", "--threads", threads};
            const auto a = run_tool(args);
            const auto b = run_tool(args);
            ++compared;
            differing += a != b || a.substr(0, 2) != "0\n";
        }
    }
    std::filesystem::remove_all(dir);
    return {differing == 0, std::to_string(compared) + " command/thread pairs, " + std::to_string(differing) + " differing or failing"};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<bool> selected(13, argc < 2);
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k >= 1 && k <= 13) selected[static_cast<std::size_t>(k - 1)] = true;
    }
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"permanent oracle equivalence", permanent_oracle},
        {"contingency-table identity", contingency_identity},
        {"Haar-average law", haar_average},
        {"HOM exactness", hom},
        {"normalization suite", normalization},
        {"R_A bound dominance", ra_dominance},
        {"ideal-parameter closed form", ra_closed_form},
        {"R_B consistency", rb_consistency},
        {"mismatch-probability limits", mismatch_limits},
        {"R_B Gaussian-ensemble validation", rb_gaussian},
        {"budget inversion", budget_inversion},
        {"verification suite", verification_suite},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected[i]) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%-4s criterion %2zu  %-34s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed;
}
