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

#include <gtest/gtest.h>

#include "bosonbudget/budget.hpp"
#include "bosonbudget/error.hpp"

using namespace bosonbudget;

TEST(Budget, LargeDeviceNeedsMoreModes) {
    const auto b = evaluate_budget(20, 8000, SourceModel::ideal(), DetectorModel{}, std::nullopt, 0.1, 0.1);
    EXPECT_NEAR(b.ra.ra, 0.075, 1e-14);
    EXPECT_FALSE(b.verdict_a);
    EXPECT_EQ(b.verdict_b_basis, "none");
    EXPECT_NEAR(b.networks_per_hard_instance, 1 / 0.9, 1e-15);
}

TEST(Budget, IdealDevicePassesWithEnoughModes) {
    const int n = 5;
    const int m = static_cast<int>(std::ceil(3.0 * n * n / (2 * 0.01)));
    const auto b = evaluate_budget(n, m, SourceModel::ideal(), DetectorModel{}, DistinguishabilityParams::uniform(n, 1.0), 0.1, 0.1);
    EXPECT_TRUE(b.verdict_a);
    ASSERT_TRUE(b.rb);
    EXPECT_EQ(*b.rb, 0.0);
    EXPECT_TRUE(*b.verdict_b);
    EXPECT_EQ(b.verdict_b_basis, "exact");
}

TEST(Budget, MismatchInversion) {
    const auto t = invert_budget(20, 8000, 0.1, 0.1, BudgetParam::Mismatch, {});
    EXPECT_TRUE(t.feasible);
    EXPECT_NEAR(t.value, std::sqrt(0.001 / 2489.0), 1e-15);
    EXPECT_NEAR(t.value, 6.34e-4, 5e-7);
}

TEST(Budget, InfeasibleNamesDominantTerm) {
    const auto t = invert_budget(10, 2000, 0.1, 0.1, BudgetParam::DarkRate, {});
    EXPECT_FALSE(t.feasible);
    EXPECT_NE(t.dominant_term.find("bunching"), std::string::npos);
    HardwareParams hw;
    hw.loss_prob = 0.5;
    const auto u = invert_budget(10, 1'000'000, 0.1, 0.1, BudgetParam::DarkRate, hw);
    EXPECT_FALSE(u.feasible);
    EXPECT_NE(u.dominant_term.find("losses"), std::string::npos);
}

TEST(Budget, LinearInversionClosedForm) {
    const int n = 6, m = 20000;
    const auto t = invert_budget(n, m, 0.1, 0.1, BudgetParam::LossProb, {});
    EXPECT_NEAR(t.value, (0.01 - 3.0 * n * n / (2.0 * m)) / (3.0 * n), 1e-17);
}

TEST(Budget, InversionRoundTrips) {
    HardwareParams base;
    base.dark_rate = 1e-9;
    base.loss_prob = 1e-4;
    base.multi_photon = 2e-4;
    for (auto p : {BudgetParam::DarkRate, BudgetParam::LossProb, BudgetParam::MultiPhoton}) {
        const auto t = invert_budget(8, 40000, 0.2, 0.3, p, base);
        ASSERT_TRUE(t.feasible);
        HardwareParams hw = base;
        (p == BudgetParam::DarkRate ? hw.dark_rate : p == BudgetParam::LossProb ? hw.loss_prob : hw.multi_photon) = t.value;
        EXPECT_NEAR(linear_condition_lhs(8, 40000, hw), 0.06, 1e-12);
    }
    const auto f = invert_budget(8, 40000, 0.2, 0.3, BudgetParam::Mismatch, base);
    EXPECT_NEAR(bound_RB_smallmismatch(8, 1 - f.value), 0.04 * 0.3, 1e-12);
}

TEST(Budget, ThresholdsAreMonotone) {
    for (auto p : {BudgetParam::DarkRate, BudgetParam::LossProb, BudgetParam::MultiPhoton, BudgetParam::Mismatch}) {
        double last = 0;
        for (double eps : {0.05, 0.1, 0.2, 0.5}) {
            const auto t = invert_budget(4, 100000, eps, 0.1, p, {});
            EXPECT_GE(t.value, last);
            last = t.value;
        }
        last = 0;
        for (double delta : {0.05, 0.1, 0.5, 0.9}) {
            const auto t = invert_budget(4, 100000, 0.1, delta, p, {});
            EXPECT_GE(t.value, last);
            last = t.value;
        }
    }
}

TEST(Budget, ScalingTable) {
    const std::vector<int> ns{10, 20, 40};
    const auto rows = scaling_table(0.1, 0.1, ns);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[2].max_mismatch / rows[0].max_mismatch, 0.125, 0.0125);
    EXPECT_NEAR(rows[1].max_loss / rows[0].max_loss, 0.5, 0.01);
    EXPECT_NEAR(static_cast<double>(rows[2].required_m) / rows[0].required_m, 16.0, 0.01);
    EXPECT_DOUBLE_EQ(rows[0].element_infidelity, 0.01);
}

TEST(Budget, RejectsBadArguments) {
    EXPECT_THROW(invert_budget(2, 100, 0.0, 0.1, BudgetParam::LossProb, {}), DomainError);
    EXPECT_THROW(invert_budget(2, 100, 0.1, 1.0, BudgetParam::LossProb, {}), DomainError);
    EXPECT_THROW(parse_budget_param("q"), UsageError);
    EXPECT_EQ(parse_budget_param("1-F"), BudgetParam::Mismatch);
}
