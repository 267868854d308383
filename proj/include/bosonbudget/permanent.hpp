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
#include <span>
#include <vector>

#include "bosonbudget/fock.hpp"
#include "bosonbudget/matrix.hpp"

namespace bosonbudget {

inline constexpr int kDefaultPermanentCap = 30;
inline constexpr int kNaivePermanentCap = 9;
inline constexpr int kContingencyCap = 6;

/// Largest N accepted by permanent_ryser: 30, or BOSONBUDGET_MAX_N if set.
int permanent_cap();

/// Number of contiguous subset-range chunks the Ryser sum is split into for
/// an N x N matrix. Depends on N only, never on the thread count, so the
/// reduction order (and the bits of the result) is fixed.
int ryser_chunk_count(int n);

/// Ryser inclusion-exclusion over column subsets in Gray-code order,
/// O(N 2^N). Chunks are evaluated with OpenMP and reduced in index order.
/// per(0x0) = 1. DimensionError if not square, ResourceError above the cap.
Complex permanent_ryser(const ComplexMatrix& a);

/// Single-threaded Ryser on an N x N row-major buffer. Same arithmetic as
/// permanent_ryser without the Eigen copy; meant for small inner-loop matrices.
Complex permanent_row_major(std::span<const Complex> a, int n);

/// Sum over all N! permutations. Oracle for tests; ResourceError for N > 9.
Complex permanent_naive(const ComplexMatrix& a);

/// U[n|s]: row k of U repeated n_k times, column l repeated s_l times.
ComplexMatrix repeated_submatrix(const ComplexMatrix& u, const OccupationVector& n,
                                 const OccupationVector& s);

/// per(U[n|s]). DimensionError if |n| != |s| or the lengths differ from M.
Complex permanent_repeated(const NetworkUnitary& u, const OccupationVector& n,
                           const OccupationVector& s);

/// Non-negative integer table with fixed row and column sums.
struct ContingencyTable {
    std::vector<std::vector<int>> counts;  // rows x cols
    std::vector<int> row_sums;
    std::vector<int> col_sums;

    /// prod over cells of T_kl!
    double mu() const;
};

/// Every table with the given margins, in lexicographic order of the
/// row-major cell sequence (largest first cell first).
std::vector<ContingencyTable> contingency_tables(const std::vector<int>& row_sums,
                                                 const std::vector<int>& col_sums);

/// Fisher-Yates weight mu(s) mu(n) / (N! mu(T)) of a table; sums to 1 over
/// all tables with the same margins.
double fisher_yates_probability(const ContingencyTable& t);

/// per(U[n|s]) through the contingency-table expansion
/// N! sum_T P(T|s,n) prod U_kl^T_kl. Limited to N <= 6.
Complex permanent_contingency(const NetworkUnitary& u, const OccupationVector& n,
                              const OccupationVector& s);

namespace reference {

/// Same chunk decomposition as permanent_ryser, evaluated on one thread.
/// Results are bit-identical to the parallel kernel.
Complex permanent_ryser_serial(const ComplexMatrix& a);

}  // namespace reference

}  // namespace bosonbudget
