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

#include "bosonbudget/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

OccupationVector::OccupationVector(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int v : occ_) {
        if (v < 0) throw DomainError("occupation numbers must be non-negative");
        total_ += v;
    }
}

OccupationVector OccupationVector::vacuum(int modes) {
    if (modes < 0) throw DomainError("mode count must be non-negative");
    return OccupationVector(std::vector<int>(static_cast<std::size_t>(modes), 0));
}

OccupationVector OccupationVector::single_photons(int modes, int photons) {
    if (photons < 0 || photons > modes) {
        throw DomainError("single_photons: need 0 <= N <= M, got N=" + std::to_string(photons) +
                          " M=" + std::to_string(modes));
    }
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    std::fill_n(occ.begin(), photons, 1);
    return OccupationVector(std::move(occ));
}

bool OccupationVector::collision_free() const noexcept {
    return std::all_of(occ_.begin(), occ_.end(), [](int v) { return v <= 1; });
}

std::vector<int> OccupationVector::mode_list() const {
    std::vector<int> list;
    list.reserve(static_cast<std::size_t>(total_));
    for (int i = 0; i < modes(); ++i) {
        for (int c = 0; c < occ_[static_cast<std::size_t>(i)]; ++c) list.push_back(i);
    }
    return list;
}

std::string OccupationVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(occ_[i]);
    }
    return out + ")";
}

ClickPattern::ClickPattern(std::vector<std::uint8_t> clicks) : clicks_(std::move(clicks)) {
    for (auto c : clicks_) {
        if (c > 1) throw DomainError("click pattern entries must be 0 or 1");
        count_ += c;
    }
}

ClickPattern ClickPattern::from_string(std::string_view bits) {
    std::vector<std::uint8_t> clicks;
    clicks.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw UsageError("click pattern must be a 0/1 string, got '" + std::string(bits) + "'");
        }
        clicks.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return ClickPattern(std::move(clicks));
}

ClickPattern ClickPattern::from_occupation(const OccupationVector& s) {
    std::vector<std::uint8_t> clicks(static_cast<std::size_t>(s.modes()));
    for (int i = 0; i < s.modes(); ++i) clicks[static_cast<std::size_t>(i)] = s[i] > 0 ? 1 : 0;
    return ClickPattern(std::move(clicks));
}

ClickPattern ClickPattern::from_modes(int modes, std::span<const int> clicked) {
    std::vector<std::uint8_t> clicks(static_cast<std::size_t>(modes), 0);
    for (int l : clicked) {
        if (l < 0 || l >= modes) throw DimensionError("clicked mode out of range");
        clicks[static_cast<std::size_t>(l)] = 1;
    }
    return ClickPattern(std::move(clicks));
}

std::vector<int> ClickPattern::clicked_modes() const {
    std::vector<int> out;
    for (int i = 0; i < modes(); ++i) {
        if (clicks_[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
}

std::string ClickPattern::to_string() const {
    std::string out(clicks_.size(), '0');
    for (std::size_t i = 0; i < clicks_.size(); ++i) out[i] = clicks_[i] ? '1' : '0';
    return out;
}

WideUInt factorial_wide(int n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    if (n > 34) throw ArithmeticError("factorial " + std::to_string(n) + "! overflows 128 bits");
    WideUInt f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<WideUInt>(k);
    return f;
}

double factorial(int n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    return std::tgamma(static_cast<double>(n) + 1.0);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    WideUInt c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<WideUInt>(n - k + i) / static_cast<WideUInt>(i);
        if (c > std::numeric_limits<std::uint64_t>::max()) {
            throw ArithmeticError("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                                  ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(c);
}

WideUInt mu(const OccupationVector& n) {
    WideUInt product = 1;
    for (int v : n.values()) {
        const WideUInt f = factorial_wide(v);
        if (f != 0 && product > std::numeric_limits<WideUInt>::max() / f) {
            throw ArithmeticError("mu" + n.to_string() + " overflows 128 bits");
        }
        product *= f;
    }
    return product;
}

double mu_double(const OccupationVector& n) {
    return static_cast<double>(mu(n));
}

std::uint64_t output_count(int modes, int photons, bool collision_free) {
    if (modes < 0 || photons < 0) throw DomainError("output_count: negative size");
    if (modes == 0) return photons == 0 ? 1 : 0;
    return collision_free ? binomial(modes, photons) : binomial(modes + photons - 1, photons);
}

bool next_composition(std::vector<int>& occ) {
    const std::size_t m = occ.size();
    if (m < 2) return false;
    const int tail = occ[m - 1];
    occ[m - 1] = 0;
    for (std::size_t i = m - 1; i-- > 0;) {
        if (occ[i] > 0) {
            --occ[i];
            occ[i + 1] = tail + 1;
            return true;
        }
    }
    return false;
}

bool next_combination(std::vector<int>& positions, int n) {
    const int k = static_cast<int>(positions.size());
    for (int i = k - 1; i >= 0; --i) {
        if (positions[static_cast<std::size_t>(i)] < n - k + i) {
            ++positions[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                positions[static_cast<std::size_t>(j)] = positions[static_cast<std::size_t>(j - 1)] + 1;
            }
            return true;
        }
    }
    return false;
}

std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
    if (rank >= binomial(n, k)) throw DomainError("unrank_combination: rank out of range");
    std::vector<int> pos;
    pos.reserve(static_cast<std::size_t>(k));
    int next = 0;
    for (int i = 0; i < k; ++i) {
        for (int c = next;; ++c) {
            // subsets whose i-th element is c
            const std::uint64_t block = binomial(n - c - 1, k - i - 1);
            if (rank < block) {
                pos.push_back(c);
                next = c + 1;
                break;
            }
            rank -= block;
        }
    }
    return pos;
}

std::uint64_t rank_combination(std::span<const int> positions, int n) {
    const int k = static_cast<int>(positions.size());
    std::uint64_t rank = 0;
    int next = 0;
    for (int i = 0; i < k; ++i) {
        for (int c = next; c < positions[static_cast<std::size_t>(i)]; ++c) {
            rank += binomial(n - c - 1, k - i - 1);
        }
        next = positions[static_cast<std::size_t>(i)] + 1;
    }
    return rank;
}

OutputEnumerator::OutputEnumerator(int modes, int photons, bool collision_free)
    : modes_(modes), photons_(photons), collision_free_(collision_free) {
    if (modes < 0 || photons < 0) throw DomainError("OutputEnumerator: negative size");
    if (collision_free && photons > modes) done_ = true;
    if (modes == 0 && photons > 0) done_ = true;
}

std::optional<OccupationVector> OutputEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        if (collision_free_) {
            state_.resize(static_cast<std::size_t>(photons_));
            std::iota(state_.begin(), state_.end(), 0);
        } else {
            state_.assign(static_cast<std::size_t>(modes_), 0);
            if (modes_ > 0) state_[0] = photons_;
        }
    } else {
        const bool more = collision_free_ ? next_combination(state_, modes_) : next_composition(state_);
        if (!more) {
            done_ = true;
            return std::nullopt;
        }
    }
    if (!collision_free_) return OccupationVector(state_);
    std::vector<int> occ(static_cast<std::size_t>(modes_), 0);
    for (int p : state_) occ[static_cast<std::size_t>(p)] = 1;
    return OccupationVector(std::move(occ));
}

std::vector<OccupationVector> enumerate_outputs(int modes, int photons, bool collision_free,
                                                std::uint64_t budget) {
    const std::uint64_t count = output_count(modes, photons, collision_free);
    if (count > budget) {
        throw ResourceError("enumerate_outputs: " + std::to_string(count) +
                            " outputs exceed the budget of " + std::to_string(budget));
    }
    std::vector<OccupationVector> out;
    out.reserve(count);
    OutputEnumerator it(modes, photons, collision_free);
    while (auto v = it.next()) out.push_back(std::move(*v));
    return out;
}

BunchingBound birthday_bunching_bound(int modes, int photons) {
    if (photons < 1 || modes < photons) {
        throw DomainError("birthday_bunching_bound: need M >= N >= 1, got M=" +
                          std::to_string(modes) + " N=" + std::to_string(photons));
    }
    const double m = modes;
    double product = 1.0;
    for (int k = 1; k < photons; ++k) product *= 1.0 - k / m;
    const double n = photons;
    return {1.0 - product, n * (n - 1.0) / (2.0 * m)};
}

}  // namespace bosonbudget
