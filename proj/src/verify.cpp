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

#include "bosonbudget/verify.hpp"

#include <cmath>
#include <string>

#include "bosonbudget/error.hpp"
#include "bosonbudget/ideal_sampler.hpp"
#include "bosonbudget/numeric.hpp"
#include "bosonbudget/permanent.hpp"
#include "bosonbudget/random_ensembles.hpp"

namespace bosonbudget {

std::string_view to_string(WitnessDecision d) {
    switch (d) {
        case WitnessDecision::BosonSampling: return "BS-like";
        case WitnessDecision::Uniform: return "uniform-like";
        case WitnessDecision::Inconclusive: return "inconclusive";
    }
    return "?";
}

double row_norm_statistic(const NetworkUnitary& u, int photons, std::span<const int> clicked) {
    const double scale = static_cast<double>(u.modes()) / photons;
    double w = 1.0;
    for (int l : clicked) {
        double norm = 0.0;
        for (int i = 0; i < photons; ++i) norm += std::norm(u(i, l));
        w *= scale * norm;
    }
    return w;
}

WitnessReferences witness_references(const NetworkUnitary& u, int photons) {
    const int m = u.modes();
    if (photons < 1 || photons > m) throw DomainError("witness: need 1 <= N <= M");
    const std::uint64_t count = binomial(m, photons);
    if (count > kWitnessPatternBudget) {
        throw ResourceError("witness: " + std::to_string(count) + " collision-free patterns exceed the budget of " +
                            std::to_string(kWitnessPatternBudget));
    }
    const auto n0 = OccupationVector::single_photons(m, photons);
    const auto total = static_cast<std::int64_t>(count);
    std::vector<double> w(count), p(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < total; ++k) {
        const auto pos = unrank_combination(m, photons, static_cast<std::uint64_t>(k));
        std::vector<int> occ(static_cast<std::size_t>(m), 0);
        for (int l : pos) occ[static_cast<std::size_t>(l)] = 1;
        w[static_cast<std::size_t>(k)] = row_norm_statistic(u, photons, pos);
        p[static_cast<std::size_t>(k)] = prob_ideal(u, n0, OccupationVector(std::move(occ)));
    }
    CompensatedSum sw, spw, sp;
    for (std::size_t k = 0; k < count; ++k) {
        sw += w[k];
        spw += p[k] * w[k];
        sp += p[k];
    }
    if (!(sp.value() > 0.0)) throw NumericError("witness: no collision-free probability mass");
    return {sw.value() / static_cast<double>(count), spw.value() / sp.value()};
}

WitnessResult row_norm_witness(const NetworkUnitary& u, int photons, std::span<const ClickPattern> samples) {
    return row_norm_witness(u, photons, samples, witness_references(u, photons));
}

WitnessResult row_norm_witness(const NetworkUnitary& u, int photons, std::span<const ClickPattern> samples,
                               const WitnessReferences& refs) {
    WitnessResult res;
    res.reference_uniform = refs.uniform;
    res.reference_bs = refs.bs;
    res.threshold = 0.5 * (refs.uniform + refs.bs);

    const auto count = static_cast<std::int64_t>(samples.size());
    std::vector<double> w(samples.size(), std::nan(""));
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
        const ClickPattern& m = samples[static_cast<std::size_t>(k)];
        if (m.modes() != u.modes()) continue;
        if (m.count() != photons) continue;
        w[static_cast<std::size_t>(k)] = row_norm_statistic(u, photons, m.clicked_modes());
    }
    for (const auto& m : samples) {
        if (m.modes() != u.modes()) {
            throw DimensionError("witness: sample of length " + std::to_string(m.modes()) + " on M=" +
                                 std::to_string(u.modes()));
        }
    }
    CompensatedSum sum;
    for (double x : w) {
        if (std::isnan(x)) {
            ++res.rejected_count;
            continue;
        }
        sum += x;
        ++res.sample_count;
    }
    if (res.sample_count < 2) return res;
    const double n = static_cast<double>(res.sample_count);
    res.sample_mean = sum.value() / n;
    CompensatedSum sq;
    for (double x : w) {
        if (!std::isnan(x)) sq += (x - res.sample_mean) * (x - res.sample_mean);
    }
    res.standard_error = std::sqrt(sq.value() / (n - 1.0) / n);
    if (std::abs(res.sample_mean - res.threshold) <= 2.0 * res.standard_error || refs.uniform == refs.bs) {
        res.decision = WitnessDecision::Inconclusive;
    } else {
        const bool bs_above = refs.bs > refs.uniform;
        res.decision = (res.sample_mean > res.threshold) == bs_above ? WitnessDecision::BosonSampling
                                                                     : WitnessDecision::Uniform;
    }
    return res;
}

double unitarity_roundtrip(const DeviceConfig& cfg) {
    // a_i -> sum_l U(i,l) b_l -> sum_k (U U^dagger)(i,k) c_k
    const ComplexMatrix& u = cfg.network.matrix();
    DeviceConfig back{NetworkUnitary(u * u.adjoint()), cfg.sources, cfg.source, cfg.detector};
    std::vector<int> inputs(static_cast<std::size_t>(cfg.sources));
    for (int i = 0; i < cfg.sources; ++i) inputs[static_cast<std::size_t>(i)] = i;
    return click_probability(back, ClickPattern::from_modes(cfg.modes(), inputs));
}

bool fourier_suppressed(const OccupationVector& s) {
    const int n = s.modes();
    long long sum = 0;
    for (int l = 0; l < n; ++l) sum += static_cast<long long>(l) * s[l];
    return sum % n != 0;
}

SuppressionResult suppression_test(int n, const DistinguishabilityParams& g) {
    if (n < 1) throw DomainError("suppression_test: N must be >= 1");
    if (n > kMaxSuppressionN) {
        throw ResourceError("suppression_test: N=" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxSuppressionN));
    }
    g.validate();
    const NetworkUnitary f = fourier_matrix(n);
    const auto input = OccupationVector::single_photons(n, n);
    std::vector<OccupationVector> flagged;
    SuppressionResult res;
    for (auto& s : enumerate_outputs(n, n, false)) {
        ++res.total_outputs;
        if (fourier_suppressed(s)) flagged.push_back(std::move(s));
    }
    res.flagged_outputs = flagged.size();

    const auto count = static_cast<std::int64_t>(flagged.size());
    std::vector<double> ideal(flagged.size()), noisy(flagged.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
        ideal[static_cast<std::size_t>(k)] = prob_ideal(f, input, flagged[static_cast<std::size_t>(k)]);
    }
    for (double p : ideal) {
        if (p > 1e-10) ++res.law_violations;
    }
    if (res.law_violations > 0) {
        res.law_valid = false;
        return res;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
        noisy[static_cast<std::size_t>(k)] = prob_mismatch(f, input, flagged[static_cast<std::size_t>(k)], g);
    }
    CompensatedSum mi, mn;
    for (std::size_t k = 0; k < flagged.size(); ++k) {
        mi += ideal[k];
        mn += noisy[k];
    }
    res.ideal_suppressed_mass = mi.value();
    res.suppressed_mass = mn.value();
    return res;
}

}  // namespace bosonbudget
