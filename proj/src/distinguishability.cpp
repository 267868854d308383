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

#include "bosonbudget/distinguishability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "bosonbudget/error.hpp"
#include "bosonbudget/numeric.hpp"
#include "bosonbudget/permanent.hpp"
#include "bosonbudget/rng.hpp"

namespace bosonbudget {

int CycleType::size() const {
    int n = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) n += static_cast<int>(k + 1) * counts[k];
    return n;
}

namespace {

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

void partitions(int k, int rem, int n, std::vector<int>& counts, std::vector<CycleClass>& out) {
    if (rem == 0) {
        std::uint64_t denom = 1;
        for (int j = 1; j <= n; ++j) {
            const int c = counts[static_cast<std::size_t>(j - 1)];
            for (int t = 0; t < c; ++t) denom *= static_cast<std::uint64_t>(j);
            denom *= factorial_u64(c);
        }
        out.push_back({CycleType{counts}, factorial_u64(n) / denom});
        return;
    }
    if (k > n) return;
    for (int c = rem / k; c >= 0; --c) {
        counts[static_cast<std::size_t>(k - 1)] = c;
        partitions(k + 1, rem - k * c, n, counts, out);
    }
    counts[static_cast<std::size_t>(k - 1)] = 0;
}

}  // namespace

std::vector<CycleClass> cycle_types(int n) {
    if (n < 1) throw DomainError("cycle_types: N must be >= 1");
    if (n > kMaxCycleN) {
        throw ResourceError("cycle_types: N=" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxCycleN));
    }
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    std::vector<CycleClass> out;
    partitions(1, n, n, counts, out);
    return out;
}

CycleType cycle_type_of(std::span<const int> perm) {
    const auto n = perm.size();
    CycleType t{std::vector<int>(n, 0)};
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        ++t.counts[static_cast<std::size_t>(len - 1)];
    }
    return t;
}

std::uint64_t chi(int n) {
    if (n < 0 || n > 20) throw DomainError("chi: n must be in [0, 20]");
    std::uint64_t term = 1;  // n!/n!
    std::uint64_t sum = 1;
    for (int k = n; k >= 1; --k) {
        term *= static_cast<std::uint64_t>(k);
        sum += term;
    }
    return sum;
}

DistinguishabilityParams DistinguishabilityParams::uniform(int max_k, double value) {
    DistinguishabilityParams p;
    p.g.assign(static_cast<std::size_t>(std::max(0, max_k - 1)), value);
    return p;
}

DistinguishabilityParams DistinguishabilityParams::from_fidelity(int max_k, double fidelity) {
    DistinguishabilityParams p;
    for (int k = 2; k <= max_k; ++k) p.g.push_back(std::max(0.0, 1.0 - k * (1.0 - fidelity)));
    p.avg_fidelity = fidelity;
    return p;
}

double DistinguishabilityParams::gk(int k) const {
    if (k <= 1) return 1.0;
    if (k > max_k()) {
        throw DimensionError("distinguishability: g_" + std::to_string(k) + " requested but only up to g_" +
                             std::to_string(max_k()) + " given");
    }
    return g[static_cast<std::size_t>(k - 2)];
}

void DistinguishabilityParams::validate() const {
    for (double v : g) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("distinguishability: g_k must lie in [0,1]");
    }
    if (avg_fidelity && !(*avg_fidelity >= 0.0 && *avg_fidelity <= 1.0)) {
        throw DomainError("distinguishability: average fidelity must lie in [0,1]");
    }
}

namespace {

struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to 1 (probabilists' normalization)
};

const GaussHermite& gauss_hermite(int n) {
    static std::map<int, GaussHermite> cache;
    static std::mutex guard;
    const std::lock_guard lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        jac(i, i - 1) = jac(i - 1, i) = std::sqrt(static_cast<double>(i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussHermite gh;
    for (int i = 0; i < n; ++i) {
        gh.nodes.push_back(es.eigenvalues()(i));
        const double v = es.eigenvectors()(0, i);
        gh.weights.push_back(v * v);
    }
    return cache.emplace(n, std::move(gh)).first->second;
}

/// E[exp(-x^T a x / 2)] for x ~ N(0, cov) by tensor Gauss-Hermite, d <= 2.
double gh_expectation(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& a, int nodes) {
    const auto d = cov.rows();
    const Eigen::MatrixXd l = cov.llt().matrixL();
    const GaussHermite& gh = gauss_hermite(nodes);
    CompensatedSum acc;
    Eigen::VectorXd z(d);
    if (d == 1) {
        for (int i = 0; i < nodes; ++i) {
            z(0) = gh.nodes[static_cast<std::size_t>(i)];
            const Eigen::VectorXd x = l * z;
            acc += gh.weights[static_cast<std::size_t>(i)] * std::exp(-0.5 * x.dot(a * x));
        }
    } else {
        for (int i = 0; i < nodes; ++i) {
            for (int j = 0; j < nodes; ++j) {
                z(0) = gh.nodes[static_cast<std::size_t>(i)];
                z(1) = gh.nodes[static_cast<std::size_t>(j)];
                const Eigen::VectorXd x = l * z;
                acc += gh.weights[static_cast<std::size_t>(i)] * gh.weights[static_cast<std::size_t>(j)] *
                       std::exp(-0.5 * x.dot(a * x));
            }
        }
    }
    return acc.value();
}

/// E[exp(-x^T p x / 2)], x ~ N(0, cov). When the integrand is the narrower
/// Gaussian the roles are swapped:
/// E = sqrt(det(p^-1) / det(cov)) E_{x ~ N(0, p^-1)}[exp(-x^T cov^-1 x / 2)].
double gaussian_overlap(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& p, bool swap, int nodes) {
    if (!swap) return gh_expectation(cov, p, nodes);
    const Eigen::MatrixXd pinv = p.inverse();
    const double scale = std::sqrt(pinv.determinant() / cov.determinant());
    return scale * gh_expectation(pinv, cov.inverse(), nodes);
}

double converged_overlap(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& p, bool swap, const char* what) {
    const double q64 = gaussian_overlap(cov, p, swap, 64);
    const double q128 = gaussian_overlap(cov, p, swap, 128);
    if (std::abs(q64 - q128) <= 1e-6) return q128;
    const double q256 = gaussian_overlap(cov, p, swap, 256);
    if (std::abs(q128 - q256) <= 1e-6) return q256;
    throw NumericError(std::string("g_from_jitter: quadrature for ") + what + " did not converge");
}

}  // namespace

DistinguishabilityParams g_from_jitter(const JitterSourceSpec& spec, int max_k, std::uint64_t seed) {
    if (!(spec.spectral_width > 0.0) || !std::isfinite(spec.spectral_width)) {
        throw DomainError("g_from_jitter: spectral width must be > 0");
    }
    if (!(spec.jitter_std >= 0.0) || !std::isfinite(spec.jitter_std)) {
        throw DomainError("g_from_jitter: jitter std must be >= 0");
    }
    if (max_k < 2) throw DomainError("g_from_jitter: maxK must be >= 2");
    if (spec.jitter_std == 0.0) {
        auto p = DistinguishabilityParams::uniform(max_k, 1.0);
        p.avg_fidelity = 1.0;
        return p;
    }
    const double w2 = spec.spectral_width * spec.spectral_width;
    const double t2 = spec.jitter_std * spec.jitter_std;
    const bool swap = w2 * t2 > 1.0;

    // overlap magnitude f(d) = exp(-w^2 d^2 / 2), d = tau_i - tau_j ~ N(0, 2 t^2)
    Eigen::MatrixXd cov1(1, 1);
    cov1(0, 0) = 2.0 * t2;
    Eigen::MatrixXd p1(1, 1);

    DistinguishabilityParams out;
    p1(0, 0) = w2;
    out.avg_fidelity = converged_overlap(cov1, p1, swap, "<F_ph>");
    p1(0, 0) = 2.0 * w2;
    out.g.push_back(converged_overlap(cov1, p1, swap, "g_2"));
    if (max_k >= 3) {
        Eigen::MatrixXd cov2(2, 2);
        cov2 << 2.0 * t2, -t2, -t2, 2.0 * t2;
        Eigen::MatrixXd p2(2, 2);
        p2 << 2.0 * w2, w2, w2, 2.0 * w2;
        out.g.push_back(converged_overlap(cov2, p2, swap, "g_3"));
    }
    if (max_k >= 4) {
        // Common draws for every k keep the estimates ordered like the true values.
        const RngStream root(seed);
        const std::size_t blocks = 64;
        const std::size_t per_block = kJitterMonteCarloSamples / blocks;
        std::vector<std::vector<double>> partial(blocks, std::vector<double>(static_cast<std::size_t>(max_k - 3), 0.0));
#pragma omp parallel for schedule(static)
        for (std::size_t b = 0; b < blocks; ++b) {
            RngStream rng = root.split(b);
            std::vector<CompensatedSum> acc(static_cast<std::size_t>(max_k - 3));
            std::vector<double> tau(static_cast<std::size_t>(max_k));
            for (std::size_t s = 0; s < per_block; ++s) {
                for (auto& t : tau) t = spec.jitter_std * rng.normal();
                double chain = 1.0;  // prod_{i<k-1} f(tau_i - tau_{i+1})
                for (int k = 2; k <= max_k; ++k) {
                    const double step = tau[static_cast<std::size_t>(k - 2)] - tau[static_cast<std::size_t>(k - 1)];
                    chain *= std::exp(-0.5 * w2 * step * step);
                    if (k < 4) continue;
                    const double close = tau[static_cast<std::size_t>(k - 1)] - tau[0];
                    acc[static_cast<std::size_t>(k - 4)] += chain * std::exp(-0.5 * w2 * close * close);
                }
            }
            for (std::size_t k = 0; k < acc.size(); ++k) partial[b][k] = acc[k].value();
        }
        for (int k = 4; k <= max_k; ++k) {
            CompensatedSum total;
            for (const auto& p : partial) total += p[static_cast<std::size_t>(k - 4)];
            out.g.push_back(total.value() / static_cast<double>(per_block * blocks));
        }
    }
    return out;
}

double J_cycle_type(const DistinguishabilityParams& g, const CycleType& c) {
    double j = 1.0;
    for (int k = 2; k <= static_cast<int>(c.counts.size()); ++k) {
        const int ck = c.c(k);
        if (ck > 0) j *= std::pow(g.gk(k), ck);
    }
    return j;
}

double J_sigma(const DistinguishabilityParams& g, std::span<const int> sigma) {
    return J_cycle_type(g, cycle_type_of(sigma));
}

namespace {

constexpr int kSmallMismatchN = 4;

// permutations of {0..n-1} in lex order, their cycle types and the rank of
// perms[a]^-1 o perms[b]
struct SmallPermTable {
    std::vector<std::array<int, kSmallMismatchN>> perms;
    std::vector<CycleType> types;
    std::vector<int> comp;

    explicit SmallPermTable(int n) {
        std::array<int, kSmallMismatchN> p{};
        std::iota(p.begin(), p.begin() + n, 0);
        std::map<std::array<int, kSmallMismatchN>, int> rank;
        do {
            rank[p] = static_cast<int>(perms.size());
            perms.push_back(p);
            types.push_back(cycle_type_of(std::span<const int>(p.data(), static_cast<std::size_t>(n))));
        } while (std::next_permutation(p.begin(), p.begin() + n));
        const std::size_t f = perms.size();
        comp.resize(f * f);
        for (std::size_t x = 0; x < f; ++x) {
            std::array<int, kSmallMismatchN> inv{};
            for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perms[x][static_cast<std::size_t>(i)])] = i;
            for (std::size_t y = 0; y < f; ++y) {
                std::array<int, kSmallMismatchN> c{};
                for (int i = 0; i < n; ++i) {
                    c[static_cast<std::size_t>(i)] = inv[static_cast<std::size_t>(perms[y][static_cast<std::size_t>(i)])];
                }
                comp[x * f + y] = rank.at(c);
            }
        }
    }
};

const SmallPermTable& small_perm_table(int n) {
    static const std::array<SmallPermTable, kSmallMismatchN> tables{
        SmallPermTable(1), SmallPermTable(2), SmallPermTable(3), SmallPermTable(4)};
    return tables[static_cast<std::size_t>(n - 1)];
}

// sum over sigma1, sigma2 of J(sigma1^-1 sigma2) conj(P_sigma1) P_sigma2
double mismatch_form_small(const ComplexMatrix& a, const DistinguishabilityParams& g) {
    const int n = static_cast<int>(a.rows());
    const SmallPermTable& t = small_perm_table(n);
    const std::size_t f = t.perms.size();
    std::array<double, 24> j{};
    std::array<Complex, 24> prod{};
    for (std::size_t r = 0; r < f; ++r) {
        j[r] = J_cycle_type(g, t.types[r]);
        Complex pr = 1.0;
        for (int i = 0; i < n; ++i) pr *= a(i, t.perms[r][static_cast<std::size_t>(i)]);
        prod[r] = pr;
    }
    long double sum = 0.0L;
    for (std::size_t x = 0; x < f; ++x) {
        for (std::size_t y = 0; y < f; ++y) {
            const double w = j[static_cast<std::size_t>(t.comp[x * f + y])];
            if (w != 0.0) sum += static_cast<long double>(w) * (std::conj(prod[x]) * prod[y]).real();
        }
    }
    return static_cast<double>(sum);
}

}  // namespace

double mismatch_form(const ComplexMatrix& a, const DistinguishabilityParams& g) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw DimensionError("mismatch_form: matrix must be square");
    if (n == 0) return 1.0;
    if (n <= kSmallMismatchN) return mismatch_form_small(a, g);
    const auto nn = static_cast<std::size_t>(n);
    std::vector<int> rho(nn);
    std::iota(rho.begin(), rho.end(), 0);
    std::vector<Complex> w(nn * nn);
    long double sum = 0.0L;
    do {
        const double j = J_sigma(g, rho);
        if (j == 0.0) continue;
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t c = 0; c < nn; ++c) {
                w[i * nn + c] = std::conj(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c))) *
                                a(rho[i], static_cast<Eigen::Index>(c));
            }
        }
        sum += static_cast<long double>(j) * permanent_row_major(w, n).real();
    } while (std::next_permutation(rho.begin(), rho.end()));
    return static_cast<double>(sum);
}

double prob_mismatch(const NetworkUnitary& u, const OccupationVector& n, const OccupationVector& s,
                     const DistinguishabilityParams& g) {
    if (n.modes() != u.modes() || s.modes() != u.modes()) {
        throw DimensionError("prob_mismatch: occupation length differs from M");
    }
    if (n.total() != s.total()) {
        throw DomainError("prob_mismatch: photon numbers differ (" + std::to_string(n.total()) + " in, " +
                          std::to_string(s.total()) + " out)");
    }
    if (n.total() > kMaxMismatchPhotons) {
        throw ResourceError("prob_mismatch: N=" + std::to_string(n.total()) + " exceeds the cap of " +
                            std::to_string(kMaxMismatchPhotons));
    }
    const ComplexMatrix a = repeated_submatrix(u.matrix(), n, s);
    return mismatch_form(a, g) / (mu_double(n) * mu_double(s));
}

double bound_RB(int n, const DistinguishabilityParams& g) {
    std::vector<double> terms;
    for (const auto& cls : cycle_types(n)) {
        const CycleType& c = cls.type;
        const double j = J_cycle_type(g, c);
        double denom = 1.0;
        for (int k = 1; k <= n; ++k) {
            const int ck = c.c(k);
            denom *= std::pow(static_cast<double>(k), ck) * factorial(ck);
        }
        terms.push_back(static_cast<double>(chi(c.c(1))) * (1.0 - j) * (1.0 - j) / denom);
    }
    std::sort(terms.begin(), terms.end());
    CompensatedSum acc;
    for (double t : terms) acc += t;
    return acc.value();
}

double smallmismatch_polynomial(int n) {
    const double x = n;
    return (2.0 * x * x * x - 3.0 * x * x + 7.0 * x - 6.0) / 6.0;
}

double bound_RB_smallmismatch(int n, double avg_fidelity) {
    if (n < 1) throw DomainError("bound_RB_smallmismatch: N must be >= 1");
    if (!(avg_fidelity >= 0.0 && avg_fidelity <= 1.0)) {
        throw DomainError("bound_RB_smallmismatch: fidelity must lie in [0,1]");
    }
    const double d = 1.0 - avg_fidelity;
    return d * d * smallmismatch_polynomial(n);
}

}  // namespace bosonbudget
