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

#include "bosonbudget/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>

#include <omp.h>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

namespace {

constexpr int kAbsolutePermanentCap = 62;

struct LongComplex {
    long double re = 0.0L;
    long double im = 0.0L;
};

void check_square(const ComplexMatrix& a, const char* who) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
    require_finite(a, who);
}

/// Row-major copy in extended precision.
std::vector<LongComplex> to_row_major(const ComplexMatrix& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<LongComplex> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex z = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out[i * n + j] = {z.real(), z.imag()};
        }
    }
    return out;
}

/// Partial Ryser sum over Gray-code steps k in [begin, end).
LongComplex ryser_range(const std::vector<LongComplex>& a, int n, std::uint64_t begin,
                        std::uint64_t end) {
    const auto nn = static_cast<std::size_t>(n);
    std::vector<LongComplex> rowsum(nn);
    std::uint64_t gray = begin ^ (begin >> 1);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) {
            if (gray >> j & 1U) {
                rowsum[i].re += a[i * nn + j].re;
                rowsum[i].im += a[i * nn + j].im;
            }
        }
    }
    LongComplex acc;
    for (std::uint64_t k = begin; k < end; ++k) {
        if (k != begin) {
            const auto col = static_cast<std::size_t>(std::countr_zero(k));
            gray ^= std::uint64_t{1} << col;
            const long double sign = (gray >> col & 1U) ? 1.0L : -1.0L;
            for (std::size_t i = 0; i < nn; ++i) {
                rowsum[i].re += sign * a[i * nn + col].re;
                rowsum[i].im += sign * a[i * nn + col].im;
            }
        }
        if (gray == 0) continue;
        long double pre = rowsum[0].re;
        long double pim = rowsum[0].im;
        for (std::size_t i = 1; i < nn; ++i) {
            const long double re = pre * rowsum[i].re - pim * rowsum[i].im;
            pim = pre * rowsum[i].im + pim * rowsum[i].re;
            pre = re;
        }
        if ((n - std::popcount(gray)) % 2 == 0) {
            acc.re += pre;
            acc.im += pim;
        } else {
            acc.re -= pre;
            acc.im -= pim;
        }
    }
    return acc;
}

// direct expansion for n <= 3
template <class At>
Complex permanent_tiny(int n, At at) {
    switch (n) {
        case 1:
            return at(0, 0);
        case 2:
            return at(0, 0) * at(1, 1) + at(0, 1) * at(1, 0);
        default:
            return at(0, 0) * (at(1, 1) * at(2, 2) + at(1, 2) * at(2, 1)) +
                   at(0, 1) * (at(1, 0) * at(2, 2) + at(1, 2) * at(2, 0)) +
                   at(0, 2) * (at(1, 0) * at(2, 1) + at(1, 1) * at(2, 0));
    }
}

Complex ryser(const ComplexMatrix& a, bool parallel) {
    check_square(a, "permanent_ryser");
    const int n = static_cast<int>(a.rows());
    if (n > permanent_cap()) {
        throw ResourceError("permanent_ryser: N=" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(permanent_cap()));
    }
    if (n == 0) return {1.0, 0.0};
    if (n <= 3) return permanent_tiny(n, [&](int i, int j) { return a(i, j); });
    const auto rm = to_row_major(a);
    const std::uint64_t total = std::uint64_t{1} << n;
    const int chunks = ryser_chunk_count(n);
    const std::uint64_t step = total / static_cast<std::uint64_t>(chunks);
    std::vector<LongComplex> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(dynamic) if (parallel && chunks > 1)
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t begin = step * static_cast<std::uint64_t>(c);
        const std::uint64_t end = c + 1 == chunks ? total : begin + step;
        partial[static_cast<std::size_t>(c)] = ryser_range(rm, n, begin, end);
    }

    LongComplex sum;
    for (const auto& p : partial) {
        sum.re += p.re;
        sum.im += p.im;
    }
    return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

void check_occupations(const NetworkUnitary& u, const OccupationVector& n,
                       const OccupationVector& s, const char* who) {
    if (n.modes() != u.modes() || s.modes() != u.modes()) {
        throw DimensionError(std::string(who) + ": occupation vectors must have length M=" +
                             std::to_string(u.modes()));
    }
    if (n.total() != s.total()) {
        throw DimensionError(std::string(who) + ": photon-number mismatch |n|=" +
                             std::to_string(n.total()) + " |s|=" + std::to_string(s.total()));
    }
}

}  // namespace

int permanent_cap() {
    if (const char* env = std::getenv("BOSONBUDGET_MAX_N")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) {
            return static_cast<int>(std::min<long>(v, kAbsolutePermanentCap));
        }
    }
    return kDefaultPermanentCap;
}

int ryser_chunk_count(int n) {
    constexpr int kSerialBelow = 14;
    constexpr int kMaxChunkBits = 10;
    if (n <= kSerialBelow) return 1;
    return 1 << std::min(n - kSerialBelow, kMaxChunkBits);
}

Complex permanent_ryser(const ComplexMatrix& a) {
    return ryser(a, true);
}

Complex permanent_row_major(std::span<const Complex> a, int n) {
    if (n < 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw DimensionError("permanent_row_major: buffer size does not match N=" + std::to_string(n));
    }
    if (n > permanent_cap()) {
        throw ResourceError("permanent_row_major: N=" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(permanent_cap()));
    }
    if (n == 0) return {1.0, 0.0};
    if (n <= 3) return permanent_tiny(n, [&](int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; });
    std::vector<LongComplex> rm(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rm[i] = {a[i].real(), a[i].imag()};
    const LongComplex sum = ryser_range(rm, n, 0, std::uint64_t{1} << n);
    return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

Complex reference::permanent_ryser_serial(const ComplexMatrix& a) {
    return ryser(a, false);
}

Complex permanent_naive(const ComplexMatrix& a) {
    check_square(a, "permanent_naive");
    const int n = static_cast<int>(a.rows());
    if (n > kNaivePermanentCap) {
        throw ResourceError("permanent_naive: N=" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kNaivePermanentCap));
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; ++i) term *= a(i, perm[static_cast<std::size_t>(i)]);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

ComplexMatrix repeated_submatrix(const ComplexMatrix& u, const OccupationVector& n,
                                 const OccupationVector& s) {
    if (n.modes() != u.rows() || s.modes() != u.cols()) {
        throw DimensionError("repeated_submatrix: occupation lengths do not match the matrix");
    }
    if (n.total() != s.total()) {
        throw DimensionError("repeated_submatrix: photon-number mismatch |n|=" +
                             std::to_string(n.total()) + " |s|=" + std::to_string(s.total()));
    }
    const auto rows = n.mode_list();
    const auto cols = s.mode_list();
    const auto size = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix sub(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            sub(i, j) = u(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
    }
    return sub;
}

Complex permanent_repeated(const NetworkUnitary& u, const OccupationVector& n,
                           const OccupationVector& s) {
    check_occupations(u, n, s, "permanent_repeated");
    return permanent_ryser(repeated_submatrix(u.matrix(), n, s));
}

double ContingencyTable::mu() const {
    double product = 1.0;
    for (const auto& row : counts) {
        for (int v : row) product *= factorial(v);
    }
    return product;
}

namespace {

void fill_tables(std::size_t cell, ContingencyTable& t, std::vector<int>& row_left,
                 std::vector<int>& col_left, std::vector<ContingencyTable>& out) {
    const std::size_t rows = t.row_sums.size();
    const std::size_t cols = t.col_sums.size();
    if (cell == rows * cols) {
        if (std::all_of(col_left.begin(), col_left.end(), [](int v) { return v == 0; })) {
            out.push_back(t);
        }
        return;
    }
    const std::size_t r = cell / cols;
    const std::size_t c = cell % cols;
    const bool last_col = c + 1 == cols;
    const int hi = std::min(row_left[r], col_left[c]);
    const int lo = last_col ? row_left[r] : 0;
    for (int v = hi; v >= lo; --v) {
        t.counts[r][c] = v;
        row_left[r] -= v;
        col_left[c] -= v;
        fill_tables(cell + 1, t, row_left, col_left, out);
        row_left[r] += v;
        col_left[c] += v;
    }
    t.counts[r][c] = 0;
}

}  // namespace

std::vector<ContingencyTable> contingency_tables(const std::vector<int>& row_sums,
                                                 const std::vector<int>& col_sums) {
    const int rt = std::accumulate(row_sums.begin(), row_sums.end(), 0);
    const int ct = std::accumulate(col_sums.begin(), col_sums.end(), 0);
    if (rt != ct) {
        throw DimensionError("contingency_tables: margin totals differ (" + std::to_string(rt) +
                             " vs " + std::to_string(ct) + ")");
    }
    if (std::any_of(row_sums.begin(), row_sums.end(), [](int v) { return v < 0; }) ||
        std::any_of(col_sums.begin(), col_sums.end(), [](int v) { return v < 0; })) {
        throw DomainError("contingency_tables: negative margin");
    }
    ContingencyTable t;
    t.row_sums = row_sums;
    t.col_sums = col_sums;
    t.counts.assign(row_sums.size(), std::vector<int>(col_sums.size(), 0));
    std::vector<ContingencyTable> out;
    if (row_sums.empty() || col_sums.empty()) {
        if (rt == 0) out.push_back(t);
        return out;
    }
    auto row_left = row_sums;
    auto col_left = col_sums;
    fill_tables(0, t, row_left, col_left, out);
    return out;
}

double fisher_yates_probability(const ContingencyTable& t) {
    double margins = 1.0;
    int total = 0;
    for (int v : t.row_sums) {
        margins *= factorial(v);
        total += v;
    }
    for (int v : t.col_sums) margins *= factorial(v);
    return margins / (factorial(total) * t.mu());
}

Complex permanent_contingency(const NetworkUnitary& u, const OccupationVector& n,
                              const OccupationVector& s) {
    check_occupations(u, n, s, "permanent_contingency");
    if (n.total() > kContingencyCap) {
        throw ResourceError("permanent_contingency: N=" + std::to_string(n.total()) +
                            " exceeds the cap of " + std::to_string(kContingencyCap));
    }
    // Only modes with non-zero occupation carry non-zero margins.
    std::vector<int> rows, cols, row_sums, col_sums;
    for (int k = 0; k < n.modes(); ++k) {
        if (n[k] > 0) {
            rows.push_back(k);
            row_sums.push_back(n[k]);
        }
    }
    for (int l = 0; l < s.modes(); ++l) {
        if (s[l] > 0) {
            cols.push_back(l);
            col_sums.push_back(s[l]);
        }
    }
    const double big_n_factorial = factorial(n.total());
    Complex sum = 0.0;
    for (const auto& t : contingency_tables(row_sums, col_sums)) {
        Complex term = 1.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < cols.size(); ++j) {
                const int power = t.counts[i][j];
                if (power > 0) term *= std::pow(u(rows[i], cols[j]), power);
            }
        }
        sum += fisher_yates_probability(t) * term;
    }
    return big_n_factorial * sum;
}

}  // namespace bosonbudget
