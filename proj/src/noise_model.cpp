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

#include "bosonbudget/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bosonbudget/error.hpp"
#include "bosonbudget/numeric.hpp"
#include "bosonbudget/permanent.hpp"

namespace bosonbudget {

double SourceModel::truncated_mass() const {
    CompensatedSum s;
    for (double p : photon_probs) s += p;
    return std::max(0.0, 1.0 - s.value());
}

void SourceModel::validate() const {
    if (photon_probs.empty()) throw DomainError("source: photon_probs must not be empty");
    CompensatedSum s;
    for (double p : photon_probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("source: p_k must be finite and >= 0");
        s += p;
    }
    if (s.value() > 1.0 + 1e-12) {
        throw DomainError("source: sum of p_k is " + std::to_string(s.value()) + " > 1");
    }
}

void DetectorModel::validate() const {
    if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw DomainError("detector: loss_prob must be in [0,1]");
    if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) throw DomainError("detector: dark_rate must be >= 0");
}

double DetectorModel::no_click(int photons) const {
    return std::exp(-dark_rate) * std::pow(loss_prob, photons);
}

void DeviceConfig::validate() const {
    if (sources < 1 || sources > modes()) {
        throw DomainError("device: need 1 <= N <= M, got N=" + std::to_string(sources) +
                          " M=" + std::to_string(modes()));
    }
    source.validate();
    detector.validate();
}

bool DeviceConfig::noiseless() const {
    return source.p1() == 1.0 && detector.loss_prob == 0.0 && detector.dark_rate == 0.0;
}

double input_prob(const DeviceConfig& cfg, const OccupationVector& n) {
    if (n.modes() != cfg.modes()) {
        throw DimensionError("input_prob: occupation length differs from M");
    }
    for (int i = cfg.sources; i < n.modes(); ++i) {
        if (n[i] != 0) return 0.0;
    }
    double p = 1.0;
    for (int i = 0; i < cfg.sources; ++i) p *= cfg.source.p(n[i]);
    return p;
}

std::vector<WeightedInput> input_support(const DeviceConfig& cfg) {
    const int kmax = cfg.source.kmax();
    std::vector<int> counts(static_cast<std::size_t>(cfg.sources), kmax);
    std::vector<WeightedInput> out;
    while (true) {
        double p = 1.0;
        for (int c : counts) p *= cfg.source.p(c);
        if (p > 0.0) {
            std::vector<int> occ(static_cast<std::size_t>(cfg.modes()), 0);
            std::copy(counts.begin(), counts.end(), occ.begin());
            out.push_back({OccupationVector(std::move(occ)), p});
        }
        // odometer counting down, last source fastest
        int i = cfg.sources - 1;
        while (i >= 0 && counts[static_cast<std::size_t>(i)] == 0) {
            counts[static_cast<std::size_t>(i)] = kmax;
            --i;
        }
        if (i < 0) break;
        --counts[static_cast<std::size_t>(i)];
    }
    return out;
}

double detector_prob(const DetectorModel& det, const ClickPattern& m, const OccupationVector& s) {
    if (m.modes() != s.modes()) throw DimensionError("detector_prob: pattern and occupation lengths differ");
    double p = 1.0;
    for (int l = 0; l < m.modes(); ++l) {
        const double none = det.no_click(s[l]);
        p *= m[l] ? 1.0 - none : none;
    }
    return p;
}

namespace {

/// Triple sum over n, s, m.
ClickDistribution click_table(const DeviceConfig& cfg, bool parallel) {
    cfg.validate();
    const int modes = cfg.modes();
    if (modes > kMaxClickModes) {
        throw ResourceError("output_click_distribution: M=" + std::to_string(modes) +
                            " exceeds the exact-enumeration limit of " + std::to_string(kMaxClickModes));
    }
    const auto support = input_support(cfg);
    std::map<int, std::vector<const WeightedInput*>> by_total;
    for (const auto& in : support) by_total[in.occupation.total()].push_back(&in);

    const double patterns = std::ldexp(1.0, modes);
    double terms = 0.0;
    for (const auto& [total, inputs] : by_total) {
        const auto outs = static_cast<double>(output_count(modes, total, false));
        terms += outs * static_cast<double>(inputs.size()) + patterns * outs;
    }
    if (terms > kClickTermBudget) {
        throw ResourceError("output_click_distribution: estimated " + std::to_string(terms) +
                            " terms exceed the budget of " + std::to_string(kClickTermBudget));
    }

    // P_s = sum_n P_U(s|n) P_I(n), ordered by photon number then descending lex.
    std::vector<std::vector<int>> s_occ;
    std::vector<double> s_prob;
    for (const auto& [total, inputs] : by_total) {
        auto outs = enumerate_outputs(modes, total, false, kDistributionBudget);
        std::vector<double> probs(outs.size(), 0.0);
        const auto count = static_cast<std::int64_t>(outs.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
        for (std::int64_t i = 0; i < count; ++i) {
            CompensatedSum acc;
            for (const WeightedInput* in : inputs) {
                acc += prob_ideal(cfg.network, in->occupation, outs[static_cast<std::size_t>(i)]) * in->prob;
            }
            probs[static_cast<std::size_t>(i)] = acc.value();
        }
        for (std::size_t i = 0; i < outs.size(); ++i) {
            if (probs[i] == 0.0) continue;
            const auto v = outs[i].values();
            s_occ.emplace_back(v.begin(), v.end());
            s_prob.push_back(probs[i]);
        }
    }

    int max_photons = 0;
    for (const auto& [total, inputs] : by_total) max_photons = std::max(max_photons, total);
    std::vector<double> none(static_cast<std::size_t>(max_photons) + 1);
    for (int c = 0; c <= max_photons; ++c) none[static_cast<std::size_t>(c)] = cfg.detector.no_click(c);

    ClickDistribution dist;
    const auto npat = static_cast<std::int64_t>(std::uint64_t{1} << modes);
    dist.outcomes.resize(static_cast<std::size_t>(npat));
    dist.probs.assign(static_cast<std::size_t>(npat), 0.0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (std::int64_t b = 0; b < npat; ++b) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(modes));
        for (int l = 0; l < modes; ++l) {
            bits[static_cast<std::size_t>(l)] = static_cast<std::uint8_t>((b >> (modes - 1 - l)) & 1);
        }
        CompensatedSum acc;
        for (std::size_t k = 0; k < s_occ.size(); ++k) {
            double pd = 1.0;
            for (int l = 0; l < modes && pd != 0.0; ++l) {
                const double z = none[static_cast<std::size_t>(s_occ[k][static_cast<std::size_t>(l)])];
                pd *= bits[static_cast<std::size_t>(l)] ? 1.0 - z : z;
            }
            acc += pd * s_prob[k];
        }
        dist.outcomes[static_cast<std::size_t>(b)] = ClickPattern(std::move(bits));
        dist.probs[static_cast<std::size_t>(b)] = acc.value();
    }
    return dist;
}

/// Shared state for the inclusion-exclusion evaluation of single patterns.
class NoClickKernel {
public:
    explicit NoClickKernel(const DeviceConfig& cfg)
        : n_(cfg.sources), modes_(cfg.modes()), r_(cfg.detector.loss_prob), nu_(cfg.detector.dark_rate) {
        cfg.validate();
        const ComplexMatrix& u = cfg.network.matrix();
        const auto nn = static_cast<std::size_t>(n_);
        cols_.resize(static_cast<std::size_t>(modes_) * nn);
        for (int l = 0; l < modes_; ++l) {
            for (int i = 0; i < n_; ++i) cols_[static_cast<std::size_t>(l) * nn + static_cast<std::size_t>(i)] = u(i, l);
        }
        gram_.assign(nn * nn, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t j = 0; j < nn; ++j) {
                Complex g = 0.0;
                for (int l = 0; l < modes_; ++l) g += column(l)[i] * std::conj(column(l)[j]);
                gram_[i * nn + j] = g;
            }
        }
        // kmax <= 1 sources: sum_S p1^|S| p0^(N-|S|) per(B[S|S]) = per(p0 I + p1 B).
        linear_ = std::all_of(cfg.source.photon_probs.begin() + std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(cfg.source.photon_probs.size())),
                              cfg.source.photon_probs.end(), [](double p) { return p == 0.0; });
        p0_ = cfg.source.p(0);
        p1_ = cfg.source.p(1);
        if (!linear_) {
            for (const auto& in : input_support(cfg)) {
                inputs_.push_back({in.occupation.mode_list(), in.prob / mu_double(in.occupation)});
            }
        }
        dark_.resize(static_cast<std::size_t>(modes_) + 1);
        for (int k = 0; k <= modes_; ++k) dark_[static_cast<std::size_t>(k)] = std::exp(-nu_ * (modes_ - k));
    }

    int sources() const noexcept { return n_; }
    int modes() const noexcept { return modes_; }

    const Complex* column(int l) const { return &cols_[static_cast<std::size_t>(l) * static_cast<std::size_t>(n_)]; }

    /// exp(-nu (M - |K|)): no dark count outside K.
    double dark_factor(int k) const { return dark_[static_cast<std::size_t>(k)]; }

    /// Probability that no photon is registered outside K (losses only).
    double no_photon_outside(std::span<const int> kept) const {
        const auto nn = static_cast<std::size_t>(n_);
        std::vector<Complex> b(nn * nn);
        for (std::size_t i = 0; i < nn * nn; ++i) b[i] = r_ * gram_[i];
        for (int l : kept) {
            const Complex* c = column(l);
            for (std::size_t i = 0; i < nn; ++i) {
                const Complex ci = (1.0 - r_) * c[i];
                for (std::size_t j = 0; j < nn; ++j) b[i * nn + j] += ci * std::conj(c[j]);
            }
        }
        if (linear_) {
            for (std::size_t i = 0; i < nn * nn; ++i) b[i] *= p1_;
            for (std::size_t i = 0; i < nn; ++i) b[i * nn + i] += p0_;
            return permanent_row_major(b, n_).real();
        }
        CompensatedSum acc;
        std::vector<Complex> sub;
        for (const auto& in : inputs_) {
            const auto k = in.rows.size();
            sub.resize(k * k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    sub[i * k + j] = b[static_cast<std::size_t>(in.rows[i]) * nn + static_cast<std::size_t>(in.rows[j])];
                }
            }
            acc += in.weight * permanent_row_major(sub, static_cast<int>(k)).real();
        }
        return acc.value();
    }

    /// Ideal P_U(C|n0) for a collision-free clicked set of size N.
    double ideal_prob(std::span<const int> clicked) const {
        const auto nn = static_cast<std::size_t>(n_);
        std::vector<Complex> a(nn * nn);
        for (std::size_t j = 0; j < nn; ++j) {
            const Complex* c = column(clicked[j]);
            for (std::size_t i = 0; i < nn; ++i) a[i * nn + j] = c[i];
        }
        return std::norm(permanent_row_major(a, n_));
    }

private:
    struct Input {
        std::vector<int> rows;
        double weight;  // P_I(n) / mu(n)
    };

    int n_;
    int modes_;
    double r_;
    double nu_;
    bool linear_ = true;
    double p0_ = 0.0;
    double p1_ = 0.0;
    std::vector<Complex> cols_;
    std::vector<Complex> gram_;
    std::vector<Input> inputs_;
    std::vector<double> dark_;
};

/// Colex rank of ascending positions.
std::uint64_t colex_rank(std::span<const int> pos, const std::vector<std::vector<std::uint64_t>>& binom) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        r += binom[static_cast<std::size_t>(pos[i])][i + 1];
    }
    return r;
}

constexpr std::uint64_t kSubsetCacheBudget = 50'000'000;
constexpr std::uint64_t kPatternBudget = 2'000'000'000;

DistanceParts distance_kernel(const DeviceConfig& cfg, bool parallel) {
    const NoClickKernel kernel(cfg);
    const int n = cfg.sources;
    const int modes = cfg.modes();

    const std::uint64_t patterns = binomial(modes, n);
    if (patterns > kPatternBudget) {
        throw ResourceError("distance_parts: " + std::to_string(patterns) +
                            " N-click patterns exceed the budget of " + std::to_string(kPatternBudget));
    }
    // binom[a][b] = C(a, b) for a <= M, b <= N
    std::vector<std::vector<std::uint64_t>> binom(static_cast<std::size_t>(modes) + 1,
                                                  std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    for (int a = 0; a <= modes; ++a) {
        for (int b = 0; b <= n; ++b) binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = binomial(a, b);
    }

    // G(K) for every proper subset size, indexed by colex rank.
    std::uint64_t cache_size = 0;
    for (int j = 0; j < n; ++j) cache_size += binom[static_cast<std::size_t>(modes)][static_cast<std::size_t>(j)];
    if (cache_size > kSubsetCacheBudget) {
        throw ResourceError("distance_parts: subset cache of " + std::to_string(cache_size) +
                            " entries exceeds the budget of " + std::to_string(kSubsetCacheBudget));
    }
    std::vector<std::vector<double>> cache(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto count = binom[static_cast<std::size_t>(modes)][static_cast<std::size_t>(j)];
        auto& slot = cache[static_cast<std::size_t>(j)];
        slot.assign(count, 0.0);
        const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (parallel)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            // colex unrank
            std::vector<int> pos(static_cast<std::size_t>(j));
            std::uint64_t rem = static_cast<std::uint64_t>(idx);
            int hi = modes;
            for (int i = j; i >= 1; --i) {
                int c = i - 1;
                while (c + 1 < hi && binom[static_cast<std::size_t>(c + 1)][static_cast<std::size_t>(i)] <= rem) ++c;
                pos[static_cast<std::size_t>(i - 1)] = c;
                rem -= binom[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
                hi = c;
            }
            slot[static_cast<std::size_t>(idx)] = kernel.no_photon_outside(pos);
        }
    }

    const int chunks = static_cast<int>(std::clamp<std::uint64_t>(patterns / 4096, 1, 256));
    const std::uint64_t step = patterns / static_cast<std::uint64_t>(chunks);
    struct Partial {
        CompensatedSum out, diff, ideal;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(chunks));
    const std::uint32_t subsets = 1U << n;

#pragma omp parallel for schedule(dynamic) if (parallel && chunks > 1)
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t begin = step * static_cast<std::uint64_t>(c);
        const std::uint64_t end = c + 1 == chunks ? patterns : begin + step;
        auto pos = unrank_combination(modes, n, begin);
        std::vector<int> sub;
        sub.reserve(static_cast<std::size_t>(n));
        Partial& acc = partial[static_cast<std::size_t>(c)];
        for (std::uint64_t k = begin; k < end; ++k) {
            long double p_out = 0.0L;
            for (std::uint32_t mask = 0; mask < subsets; ++mask) {
                sub.clear();
                for (int i = 0; i < n; ++i) {
                    if (mask >> i & 1U) sub.push_back(pos[static_cast<std::size_t>(i)]);
                }
                const int size = static_cast<int>(sub.size());
                const double g = size == n ? kernel.no_photon_outside(sub)
                                           : cache[static_cast<std::size_t>(size)][colex_rank(sub, binom)];
                const long double term = static_cast<long double>(kernel.dark_factor(size)) * g;
                p_out += ((n - size) % 2 == 0) ? term : -term;
            }
            const double po = static_cast<double>(p_out);
            const double p0 = kernel.ideal_prob(pos);
            acc.out += po;
            acc.diff += std::abs(po - p0);
            acc.ideal += p0;
            if (k + 1 < end) next_combination(pos, modes);
        }
    }

    CompensatedSum out, diff, ideal;
    for (const auto& p : partial) {
        out += p.out.value();
        diff += p.diff.value();
        ideal += p.ideal.value();
    }
    const double input_mass = std::pow(1.0 - cfg.source.truncated_mass(), n);
    return {input_mass - out.value(), diff.value(), 1.0 - ideal.value()};
}

}  // namespace

ClickDistribution output_click_distribution(const DeviceConfig& cfg) {
    return click_table(cfg, true);
}

ClickDistribution reference::output_click_distribution_serial(const DeviceConfig& cfg) {
    return click_table(cfg, false);
}

double click_probability(const DeviceConfig& cfg, const ClickPattern& m) {
    if (m.modes() != cfg.modes()) throw DimensionError("click_probability: pattern length differs from M");
    const NoClickKernel kernel(cfg);
    const auto clicked = m.clicked_modes();
    const int c = static_cast<int>(clicked.size());
    if (c > 30) throw ResourceError("click_probability: 2^" + std::to_string(c) + " subsets");
    long double sum = 0.0L;
    std::vector<int> sub;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
        sub.clear();
        for (int i = 0; i < c; ++i) {
            if (mask >> i & 1U) sub.push_back(clicked[static_cast<std::size_t>(i)]);
        }
        const int size = static_cast<int>(sub.size());
        const long double term =
            static_cast<long double>(kernel.dark_factor(size)) * kernel.no_photon_outside(sub);
        sum += ((c - size) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

DistanceParts distance_parts(const DeviceConfig& cfg) {
    return distance_kernel(cfg, true);
}

DistanceParts reference::distance_parts_serial(const DeviceConfig& cfg) {
    return distance_kernel(cfg, false);
}

DistanceParts reference::distance_parts_from_tables(const DeviceConfig& cfg) {
    const auto clicks = output_click_distribution(cfg);
    const auto n0 = OccupationVector::single_photons(cfg.modes(), cfg.sources);
    const auto ideal = full_distribution(cfg.network, n0);
    std::map<ClickPattern, double> ideal_by_pattern;
    CompensatedSum vb;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        if (ideal.outcomes[i].collision_free()) {
            ideal_by_pattern[ClickPattern::from_occupation(ideal.outcomes[i])] = ideal.probs[i];
        } else {
            vb += ideal.probs[i];
        }
    }
    CompensatedSum v1, v2;
    for (std::size_t i = 0; i < clicks.size(); ++i) {
        if (clicks.outcomes[i].count() != cfg.sources) {
            v1 += clicks.probs[i];
        } else {
            v2 += std::abs(clicks.probs[i] - ideal_by_pattern[clicks.outcomes[i]]);
        }
    }
    return {v1.value(), v2.value(), vb.value()};
}

BoundRA bound_RA(int photons, int modes, const SourceModel& src, const DetectorModel& det) {
    if (photons < 1 || modes < photons) {
        throw DomainError("bound_RA: need M >= N >= 1, got N=" + std::to_string(photons) +
                          " M=" + std::to_string(modes));
    }
    const double n = photons;
    const double m = modes;
    // log Q and log p1^N kept separately so 1 - Q is accurate for small errors
    const double log_p1n = n * std::log(src.p1());
    const double log_q = -(m - n) * det.dark_rate +
                         n * std::log1p(-std::exp(-det.dark_rate) * det.loss_prob) + log_p1n;
    const double q = std::exp(log_q);
    const double one_minus_q = -std::expm1(log_q);
    const double q_prime = -std::expm1(log_p1n);
    const double bunch = n * n / (2.0 * m);
    // a + 2(1 - Q(1 - a)) + (1 - Q) + Q'
    const double ra = 3.0 * one_minus_q + q_prime + bunch * (1.0 + 2.0 * q);
    return {ra, q, q_prime};
}

double bound_RA_simple(int photons, int modes, const SourceModel& src, const DetectorModel& det) {
    if (photons < 1 || modes < photons) {
        throw DomainError("bound_RA_simple: need M >= N >= 1, got N=" + std::to_string(photons) +
                          " M=" + std::to_string(modes));
    }
    const double n = photons;
    const double m = modes;
    return 3.0 * n * n / (2.0 * m) + 3.0 * ((m - n) * det.dark_rate + n * det.loss_prob) +
           4.0 * n * (1.0 - src.p1());
}

}  // namespace bosonbudget
