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

// Independent reference values for the tests. Nothing here calls into the
// kernels under test except the plain types.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "bosonbudget/rng.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat random_complex(int rows, int cols, bosonbudget::RngStream& rng) {
    Mat a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    return a;
}

// sum over permutations, long double accumulation
inline cplx permanent(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::complex<long double> s = 0;
    do {
        std::complex<long double> t = 1;
        for (int i = 0; i < n; ++i) t *= std::complex<long double>(a(i, p[i]));
        s += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

inline double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::vector<int> expand(const std::vector<int>& occ) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(occ.size()); ++i)
        for (int k = 0; k < occ[i]; ++k) out.push_back(i);
    return out;
}

inline double mu(const std::vector<int>& occ) {
    double m = 1;
    for (int k : occ) m *= factorial(k);
    return m;
}

inline Mat submatrix(const Mat& u, const std::vector<int>& n, const std::vector<int>& s) {
    const auto rows = expand(n), cols = expand(s);
    Mat a(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) a(i, j) = u(rows[i], cols[j]);
    return a;
}

inline double prob(const Mat& u, const std::vector<int>& n, const std::vector<int>& s) {
    return std::norm(permanent(submatrix(u, n, s))) / (mu(n) * mu(s));
}

// all occupation vectors of `photons` over `modes`
inline void compositions(int modes, int photons, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> occ(modes, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == modes - 1) {
            occ[i] = left;
            f(occ);
            return;
        }
        for (int k = left; k >= 0; --k) {
            occ[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, photons);
}

// P_out(m) by brute force: every input, every output, detector product.
inline double click_prob(const Mat& u, int sources, const std::vector<double>& pk, double r, double nu,
                         const std::vector<int>& clicks) {
    const int m = static_cast<int>(u.rows());
    const int kmax = static_cast<int>(pk.size()) - 1;
    long double total = 0;
    std::vector<int> n(m, 0);
    std::function<void(int, double)> inputs = [&](int i, double w) {
        if (i == sources) {
            int photons = 0;
            for (int x : n) photons += x;
            compositions(m, photons, [&](const std::vector<int>& s) {
                double pd = 1;
                for (int l = 0; l < m; ++l) {
                    const double none = std::exp(-nu) * std::pow(r, s[l]);
                    pd *= clicks[l] ? 1 - none : none;
                }
                total += static_cast<long double>(w) * prob(u, n, s) * pd;
            });
            return;
        }
        for (int k = 0; k <= kmax; ++k) {
            if (pk[k] == 0) continue;
            n[i] = k;
            inputs(i + 1, w * pk[k]);
        }
        n[i] = 0;
    };
    inputs(0, 1.0);
    return static_cast<double>(total);
}

inline int cycle_count(const std::vector<int>& p, int k) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    int c = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) seen[j] = 1, ++len;
        if (len == k) ++c;
    }
    return c;
}

// J(sigma) from a g vector indexed by cycle length (g[1] = 1)
inline double J(const std::vector<double>& g, const std::vector<int>& p) {
    double j = 1;
    for (int k = 2; k < static_cast<int>(g.size()); ++k) j *= std::pow(g[k], cycle_count(p, k));
    return j;
}

// double permutation sum for partially distinguishable photons
inline double prob_mismatch(const Mat& u, const std::vector<int>& n, const std::vector<int>& s,
                            const std::vector<double>& g) {
    const auto k = expand(n), l = expand(s);
    const int N = static_cast<int>(k.size());
    std::vector<int> s1(N), s2(N), inv(N), rel(N);
    std::iota(s1.begin(), s1.end(), 0);
    long double total = 0;
    do {
        std::iota(s2.begin(), s2.end(), 0);
        for (int i = 0; i < N; ++i) inv[s1[i]] = i;
        do {
            for (int i = 0; i < N; ++i) rel[i] = inv[s2[i]];
            const double j = J(g, rel);
            cplx t = 1;
            for (int a = 0; a < N; ++a) t *= std::conj(u(k[s1[a]], l[a])) * u(k[s2[a]], l[a]);
            total += static_cast<long double>(j * t.real());
        } while (std::next_permutation(s2.begin(), s2.end()));
    } while (std::next_permutation(s1.begin(), s1.end()));
    return static_cast<double>(total) / (mu(n) * mu(s));
}

// Gaussian envelope, Gaussian jitter: x = (sigma_w sigma_t)^2
inline double jitter_g(int k, double x) {
    double g = 1;
    for (int j = 0; j < k; ++j) g /= std::sqrt(1 + 2 * x * (1 - std::cos(2 * std::numbers::pi * j / k)));
    return g;
}

inline double jitter_fidelity(double x) { return 1 / std::sqrt(1 + 2 * x); }

}  // namespace oracle
