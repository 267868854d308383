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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bosonbudget {

using WideUInt = unsigned __int128;

/// Photon numbers per mode.
class OccupationVector {
public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> occupations);
    OccupationVector(std::initializer_list<int> occupations)
        : OccupationVector(std::vector<int>(occupations)) {}

    static OccupationVector vacuum(int modes);
    /// One photon in each of the first `photons` modes, vacuum elsewhere.
    static OccupationVector single_photons(int modes, int photons);

    int modes() const noexcept { return static_cast<int>(occ_.size()); }
    int total() const noexcept { return total_; }
    int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
    std::span<const int> values() const noexcept { return occ_; }

    bool collision_free() const noexcept;
    /// Mode indices with mode i repeated occ[i] times, ascending (0-based).
    std::vector<int> mode_list() const;
    std::string to_string() const;

    friend bool operator==(const OccupationVector& a, const OccupationVector& b) {
        return a.occ_ == b.occ_;
    }
    friend auto operator<=>(const OccupationVector& a, const OccupationVector& b) {
        return a.occ_ <=> b.occ_;
    }

private:
    std::vector<int> occ_;
    int total_ = 0;
};

/// Bucket-detector outcome: which detectors clicked.
class ClickPattern {
public:
    ClickPattern() = default;
    explicit ClickPattern(std::vector<std::uint8_t> clicks);

    /// Parses a 0/1 string such as "0110"; throws UsageError otherwise.
    static ClickPattern from_string(std::string_view bits);
    /// Bucket collapse of a Fock outcome: mode clicks iff it holds a photon.
    static ClickPattern from_occupation(const OccupationVector& s);
    /// Clicks exactly on the given (0-based) modes.
    static ClickPattern from_modes(int modes, std::span<const int> clicked);

    int modes() const noexcept { return static_cast<int>(clicks_.size()); }
    int count() const noexcept { return count_; }
    bool operator[](int mode) const { return clicks_[static_cast<std::size_t>(mode)] != 0; }
    std::span<const std::uint8_t> values() const noexcept { return clicks_; }
    std::vector<int> clicked_modes() const;
    std::string to_string() const;

    friend bool operator==(const ClickPattern& a, const ClickPattern& b) {
        return a.clicks_ == b.clicks_;
    }
    friend auto operator<=>(const ClickPattern& a, const ClickPattern& b) {
        return a.clicks_ <=> b.clicks_;
    }

private:
    std::vector<std::uint8_t> clicks_;
    int count_ = 0;
};

/// n! over 128-bit integers; ArithmeticError above 34!.
WideUInt factorial_wide(int n);
double factorial(int n);

/// Binomial coefficient; ArithmeticError if it does not fit 64 bits.
std::uint64_t binomial(int n, int k);

/// mu(n) = prod_i n_i!. ArithmeticError on 128-bit overflow.
WideUInt mu(const OccupationVector& n);
double mu_double(const OccupationVector& n);

/// Number of outputs with `photons` photons on `modes` modes.
std::uint64_t output_count(int modes, int photons, bool collision_free);

/// Lazy enumeration of all occupation vectors with a fixed total, in
/// descending lexicographic order: (N,0,..,0) first, (0,..,0,N) last.
/// With collision_free only 0/1 vectors are produced, (1,..,1,0,..,0) first.
class OutputEnumerator {
public:
    OutputEnumerator(int modes, int photons, bool collision_free);

    /// Next vector, or nullopt once the sequence is exhausted.
    std::optional<OccupationVector> next();

private:
    int modes_;
    int photons_;
    bool collision_free_;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> state_;  // occupations, or combination positions when collision-free
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

/// Materialized enumeration; ResourceError naming the count above `budget`.
std::vector<OccupationVector> enumerate_outputs(int modes, int photons, bool collision_free,
                                                std::uint64_t budget = kDefaultEnumerationBudget);

/// Advances `occ` to the next composition in descending lexicographic order.
/// Returns false (leaving `occ` unspecified) after the last one.
bool next_composition(std::vector<int>& occ);

/// Combination positions (ascending, 0-based) of lexicographic rank `rank`
/// among all `k`-subsets of `n` elements.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank);
/// Inverse of unrank_combination.
std::uint64_t rank_combination(std::span<const int> positions, int n);
/// Advances ascending positions to the next k-subset; false after the last.
bool next_combination(std::vector<int>& positions, int n);

struct BunchingBound {
    double exact;  // 1 - prod_{k=1}^{N-1} (1 - k/M)
    double bound;  // N(N-1)/(2M)
};

/// Haar-average bunching probability and its closed upper bound.
BunchingBound birthday_bunching_bound(int modes, int photons);

}  // namespace bosonbudget
