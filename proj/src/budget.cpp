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

#include "bosonbudget/budget.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

std::string_view to_string(BudgetParam p) {
    switch (p) {
        case BudgetParam::DarkRate: return "nu";
        case BudgetParam::LossProb: return "r";
        case BudgetParam::MultiPhoton: return "1-p1";
        case BudgetParam::Mismatch: return "1-F";
    }
    return "?";
}

BudgetParam parse_budget_param(std::string_view name) {
    for (auto p : {BudgetParam::DarkRate, BudgetParam::LossProb, BudgetParam::MultiPhoton, BudgetParam::Mismatch}) {
        if (to_string(p) == name) return p;
    }
    throw UsageError("unknown budget parameter '" + std::string(name) + "' (expected nu, r, 1-p1 or 1-F)");
}

double HardwareParams::get(BudgetParam p) const {
    switch (p) {
        case BudgetParam::DarkRate: return dark_rate;
        case BudgetParam::LossProb: return loss_prob;
        case BudgetParam::MultiPhoton: return multi_photon;
        case BudgetParam::Mismatch: return mismatch;
    }
    return 0.0;
}

namespace {

void check_budget_args(int n, int m, double epsilon, double delta) {
    if (n < 1 || m < n) {
        throw DomainError("budget: need M >= N >= 1, got N=" + std::to_string(n) + " M=" + std::to_string(m));
    }
    if (!(epsilon > 0.0 && epsilon <= 2.0)) throw DomainError("budget: epsilon must lie in (0, 2]");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("budget: delta must lie in (0, 1)");
}

struct LinearTerms {
    std::array<std::pair<const char*, double>, 4> terms;
};

LinearTerms linear_terms(int n, int m, const HardwareParams& hw) {
    const double nn = n;
    const double mm = m;
    return {{{{"bunching 3N^2/2M", 3.0 * nn * nn / (2.0 * mm)},
              {"dark counts 3(M-N)nu", 3.0 * (mm - nn) * hw.dark_rate},
              {"losses 3Nr", 3.0 * nn * hw.loss_prob},
              {"multi-photon 4N(1-p1)", 4.0 * nn * hw.multi_photon}}}};
}

}  // namespace

double linear_condition_lhs(int n, int m, const HardwareParams& hw) {
    double s = 0.0;
    for (const auto& [name, v] : linear_terms(n, m, hw).terms) s += v;
    return s;
}

Threshold invert_budget(int n, int m, double epsilon, double delta, BudgetParam free_param,
                        const HardwareParams& fixed) {
    check_budget_args(n, m, epsilon, delta);
    Threshold t;
    t.param = free_param;
    if (free_param == BudgetParam::Mismatch) {
        const double poly = smallmismatch_polynomial(n);
        t.value = poly > 0.0 ? std::sqrt(epsilon * epsilon * delta / poly) : std::numeric_limits<double>::infinity();
        return t;
    }
    const auto lt = linear_terms(n, m, fixed);
    const std::size_t skip = free_param == BudgetParam::DarkRate ? 1 : free_param == BudgetParam::LossProb ? 2 : 3;
    double fixed_sum = 0.0;
    std::size_t dominant = 0;
    for (std::size_t i = 0; i < lt.terms.size(); ++i) {
        if (i == skip) continue;
        fixed_sum += lt.terms[i].second;
        if (lt.terms[i].second > lt.terms[dominant].second || dominant == skip) dominant = i;
    }
    const double slack = epsilon * delta - fixed_sum;
    if (slack <= 0.0) {
        t.feasible = false;
        t.value = std::numeric_limits<double>::quiet_NaN();
        t.dominant_term = lt.terms[dominant].first;
        return t;
    }
    const double coeff = free_param == BudgetParam::DarkRate ? 3.0 * (m - n)
                         : free_param == BudgetParam::LossProb ? 3.0 * n
                                                               : 4.0 * n;
    t.value = coeff > 0.0 ? slack / coeff : std::numeric_limits<double>::infinity();
    return t;
}

BudgetReport evaluate_budget(int n, int m, const SourceModel& src, const DetectorModel& det,
                             const std::optional<DistinguishabilityParams>& g, double epsilon, double delta) {
    check_budget_args(n, m, epsilon, delta);
    src.validate();
    det.validate();
    BudgetReport rep{};
    rep.epsilon = epsilon;
    rep.delta = delta;
    rep.n = n;
    rep.m = m;
    rep.ra = bound_RA(n, m, src, det);
    rep.ra_simple = bound_RA_simple(n, m, src, det);
    rep.verdict_a = rep.ra.ra <= epsilon * delta;
    rep.verdict_a_simple = rep.ra_simple <= epsilon * delta;

    HardwareParams hw{det.dark_rate, det.loss_prob, 1.0 - src.p1(), 0.0};
    if (g) {
        g->validate();
        if (n <= kMaxCycleN && g->max_k() >= n) rep.rb = bound_RB(n, *g);
        if (g->avg_fidelity) {
            hw.mismatch = 1.0 - *g->avg_fidelity;
            rep.rb_small = bound_RB_smallmismatch(n, *g->avg_fidelity);
        }
    }
    const double limit_b = epsilon * epsilon * delta;
    if (rep.rb) {
        rep.verdict_b = *rep.rb <= limit_b;
        rep.verdict_b_basis = "exact";
    } else if (rep.rb_small) {
        rep.verdict_b = *rep.rb_small <= limit_b;
        rep.verdict_b_basis = "small-mismatch";
    } else {
        rep.verdict_b_basis = "none";
    }
    rep.networks_per_hard_instance = 1.0 / (1.0 - delta);
    for (auto p : {BudgetParam::DarkRate, BudgetParam::LossProb, BudgetParam::MultiPhoton, BudgetParam::Mismatch}) {
        rep.max_tolerable.push_back(invert_budget(n, m, epsilon, delta, p, hw));
    }
    rep.caveat =
        "Bounds A and B are evaluated separately; they apply in the limit of small setup errors where the "
        "error sources can be considered one at a time.";
    rep.element_fidelity_note =
        "Optical element infidelity must scale as O(N^-2); no constant is available, so no verdict is given.";
    return rep;
}

std::vector<ScalingRow> scaling_table(double epsilon, double delta, std::span<const int> ns) {
    std::vector<ScalingRow> rows;
    const double ed = epsilon * delta;
    for (int n : ns) {
        const double nn = n;
        const auto m = static_cast<long long>(std::ceil(3.0 * nn * nn / ed));
        check_budget_args(n, static_cast<int>(std::max<long long>(m, n)), epsilon, delta);
        const double half = ed - 3.0 * nn * nn / (2.0 * static_cast<double>(m));
        ScalingRow r{};
        r.n = n;
        r.required_m = m;
        r.max_dark_rate = m > n ? half / (3.0 * (static_cast<double>(m) - nn)) : std::numeric_limits<double>::infinity();
        r.max_loss = half / (3.0 * nn);
        r.max_multi_photon = half / (4.0 * nn);
        const double poly = smallmismatch_polynomial(n);
        r.max_mismatch = poly > 0.0 ? std::sqrt(epsilon * epsilon * delta / poly) : std::numeric_limits<double>::infinity();
        r.element_infidelity = 1.0 / (nn * nn);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace bosonbudget
