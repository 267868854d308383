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

#include <set>

#include <gtest/gtest.h>

#include "bosonbudget/error.hpp"
#include "bosonbudget/fock.hpp"

using namespace bosonbudget;

TEST(Fock, OccupationBasics) {
    const OccupationVector n{1, 0, 2};
    EXPECT_EQ(n.total(), 3);
    EXPECT_FALSE(n.collision_free());
    EXPECT_EQ(n.mode_list(), (std::vector<int>{0, 2, 2}));
    EXPECT_EQ(n.to_string(), "(1,0,2)");
    EXPECT_EQ(OccupationVector::single_photons(4, 2), (OccupationVector{1, 1, 0, 0}));
    EXPECT_THROW(OccupationVector({1, -1}), DomainError);
}

TEST(Fock, ClickPatterns) {
    const auto m = ClickPattern::from_string("0110");
    EXPECT_EQ(m.count(), 2);
    EXPECT_EQ(m.clicked_modes(), (std::vector<int>{1, 2}));
    EXPECT_EQ(ClickPattern::from_occupation(OccupationVector{0, 3, 1, 0}), m);
    EXPECT_EQ(ClickPattern::from_modes(4, std::vector<int>{1, 2}), m);
    EXPECT_THROW(ClickPattern::from_string("01x"), UsageError);
}

TEST(Fock, Combinatorics) {
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(5, 7), 0u);
    EXPECT_EQ(static_cast<std::uint64_t>(factorial_wide(20)), 2432902008176640000ULL);
    EXPECT_THROW(factorial_wide(35), ArithmeticError);
    EXPECT_EQ(static_cast<std::uint64_t>(mu(OccupationVector{2, 0, 3})), 12u);
    EXPECT_EQ(output_count(4, 3, false), 20u);
    EXPECT_EQ(output_count(4, 3, true), 4u);
}

TEST(Fock, EnumerationIsCompleteOrderedAndUnique) {
    for (bool cf : {false, true}) {
        const auto outs = enumerate_outputs(5, 3, cf);
        EXPECT_EQ(outs.size(), output_count(5, 3, cf));
        std::set<OccupationVector> seen(outs.begin(), outs.end());
        EXPECT_EQ(seen.size(), outs.size());
        for (std::size_t i = 1; i < outs.size(); ++i) EXPECT_GT(outs[i - 1], outs[i]);
        for (const auto& o : outs) EXPECT_EQ(o.total(), 3);
    }
    EXPECT_EQ(enumerate_outputs(3, 2, false).front(), (OccupationVector{2, 0, 0}));
    EXPECT_EQ(enumerate_outputs(3, 2, false).back(), (OccupationVector{0, 0, 2}));
    EXPECT_THROW(enumerate_outputs(40, 10, false, 1000), ResourceError);
}

TEST(Fock, LazyEnumeratorMatchesMaterialized) {
    OutputEnumerator e(4, 3, false);
    std::vector<OccupationVector> lazy;
    while (auto o = e.next()) lazy.push_back(*o);
    EXPECT_EQ(lazy, enumerate_outputs(4, 3, false));
}

TEST(Fock, CombinationRanking) {
    const int n = 9, k = 4;
    auto pos = unrank_combination(n, k, 0);
    EXPECT_EQ(pos, (std::vector<int>{0, 1, 2, 3}));
    for (std::uint64_t r = 0; r < binomial(n, k); ++r) {
        EXPECT_EQ(unrank_combination(n, k, r), pos);
        EXPECT_EQ(rank_combination(pos, n), r);
        const bool more = next_combination(pos, n);
        EXPECT_EQ(more, r + 1 < binomial(n, k));
    }
}

TEST(Fock, BirthdayBound) {
    const auto b = birthday_bunching_bound(100, 5);
    EXPECT_NEAR(b.exact, 1 - 0.99 * 0.98 * 0.97 * 0.96, 1e-15);
    EXPECT_NEAR(b.bound, 0.1, 1e-15);
    EXPECT_LE(b.exact, b.bound);
    EXPECT_THROW(birthday_bunching_bound(3, 5), DomainError);
}
