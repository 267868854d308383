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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bosonbudget/distinguishability.hpp"
#include "bosonbudget/noise_model.hpp"

namespace bosonbudget {

enum class BudgetParam { DarkRate, LossProb, MultiPhoton, Mismatch };

/// "nu", "r", "1-p1", "1-F".
std::string_view to_string(BudgetParam p);
/// UsageError for unknown names.
BudgetParam parse_budget_param(std::string_view name);

/// Error rates entering the linear and small-mismatch conditions.
struct HardwareParams {
    double dark_rate = 0.0;     // nu
    double loss_prob = 0.0;     // r
    double multi_photon = 0.0;  // 1 - p1
    double mismatch = 0.0;      // 1 - <F_ph>

    double get(BudgetParam p) const;
};

struct Threshold {
    BudgetParam param;
    bool feasible = true;
    double value = 0.0;         // +inf when the condition does not constrain the parameter
    std::string dominant_term;  // set when infeasible
};

/// Largest value of `free_param` meeting
///   3N^2/2M + 3[(M-N) nu + N r] + 4N(1-p1) <= eps delta   (nu, r, 1-p1)
///   (1-F)^2 (N^3/3 - N^2/2 + 7N/6 - 1) <= eps^2 delta      (1-F)
/// at equality, with the other parameters held at `fixed`.
Threshold invert_budget(int n, int m, double epsilon, double delta, BudgetParam free_param,
                        const HardwareParams& fixed);

/// Left-hand side of the linear condition.
double linear_condition_lhs(int n, int m, const HardwareParams& hw);

struct BudgetReport {
    double epsilon;
    double delta;
    int n;
    int m;
    BoundRA ra;
    double ra_simple;
    std::optional<double> rb;        // exact sum over cycle types, N <= 12
    std::optional<double> rb_small;  // needs <F_ph>
    bool verdict_a;                  // RA <= eps delta
    bool verdict_a_simple;           // RA_simple <= eps delta
    std::optional<bool> verdict_b;   // RB <= eps^2 delta
    std::string verdict_b_basis;     // "exact", "small-mismatch" or "none"
    double networks_per_hard_instance;  // 1/(1-delta)
    std::vector<Threshold> max_tolerable;
    std::string caveat;
    std::string element_fidelity_note;
};

BudgetReport evaluate_budget(int n, int m, const SourceModel& src, const DetectorModel& det,
                             const std::optional<DistinguishabilityParams>& g, double epsilon, double delta);

struct ScalingRow {
    int n;
    long long required_m;        // ceil(3N^2/(eps delta)): bunching takes half the budget
    double max_dark_rate;        // other half to each parameter alone
    double max_loss;
    double max_multi_photon;
    double max_mismatch;         // from the small-mismatch condition
    double element_infidelity;   // 1/N^2, scale only
};

std::vector<ScalingRow> scaling_table(double epsilon, double delta, std::span<const int> ns);

}  // namespace bosonbudget
