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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bosonbudget/error.hpp"
#include "bosonbudget/fock.hpp"
#include "bosonbudget/matrix.hpp"
#include "bosonbudget/numeric.hpp"
#include "bosonbudget/rng.hpp"

namespace bosonbudget {

/// Outcomes with their probabilities. Outcomes are unique; order is the
/// order the builder produced them in.
template <class Outcome>
struct DistributionTable {
    std::vector<Outcome> outcomes;
    std::vector<double> probs;

    std::size_t size() const noexcept { return outcomes.size(); }

    double total_mass() const {
        CompensatedSum s;
        for (double p : probs) s += p;
        return s.value();
    }

    bool complete(double tol = 1e-10) const { return std::abs(total_mass() - 1.0) <= tol; }

    /// Probability of `o`, 0 if absent. Linear scan.
    double prob(const Outcome& o) const {
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i] == o) return probs[i];
        }
        return 0.0;
    }
};

using FockDistribution = DistributionTable<OccupationVector>;
using ClickDistribution = DistributionTable<ClickPattern>;

inline constexpr std::uint64_t kDistributionBudget = 5'000'000;

/// |per(U[n|s])|^2 / (mu(n) mu(s)); exactly 0 when |n| != |s|.
/// DimensionError if n or s do not have length M.
double prob_ideal(const NetworkUnitary& u, const OccupationVector& n, const OccupationVector& s);

/// P_U(s|n) for every s with |s| = |n|, outcomes in descending lexicographic
/// order. Outcomes are evaluated in parallel and stored by index.
FockDistribution full_distribution(const NetworkUnitary& u, const OccupationVector& n);

/// Sum over outcomes of |p_i - q_i| over the union of supports (missing
/// outcomes count as 0). No factor 1/2: the range is [0, 2].
template <class Outcome>
double variational_distance(const DistributionTable<Outcome>& p, const DistributionTable<Outcome>& q) {
    std::map<Outcome, double> diff;
    for (std::size_t i = 0; i < p.size(); ++i) diff[p.outcomes[i]] += p.probs[i];
    for (std::size_t i = 0; i < q.size(); ++i) diff[q.outcomes[i]] -= q.probs[i];
    CompensatedSum s;
    for (const auto& [o, d] : diff) s += std::abs(d);
    return s.value();
}

/// i.i.d. inverse-CDF draws from a complete table. Zero-probability outcomes
/// are never drawn. DomainError if the table is not normalized to 1e-9.
template <class Outcome>
std::vector<Outcome> sample_table(const DistributionTable<Outcome>& dist, std::size_t count,
                                  RngStream& rng) {
    if (dist.size() == 0 || !dist.complete(1e-9)) {
        throw DomainError("sample: distribution is incomplete (total mass " +
                          std::to_string(dist.total_mass()) + ")");
    }
    std::vector<double> cdf(dist.size());
    CompensatedSum running;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.probs[i] < 0.0) throw DomainError("sample: negative probability");
        running += dist.probs[i];
        cdf[i] = running.value();
    }
    const double total = cdf.back();
    std::vector<Outcome> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        // skip trailing zero-mass entries that share the final cdf value
        while (dist.probs[static_cast<std::size_t>(it - cdf.begin())] == 0.0 && it != cdf.begin()) --it;
        out.push_back(dist.outcomes[static_cast<std::size_t>(it - cdf.begin())]);
    }
    return out;
}

inline std::vector<OccupationVector> sample_ideal(const FockDistribution& dist, std::size_t count,
                                                  RngStream& rng) {
    return sample_table(dist, count, rng);
}

namespace reference {

/// Single-threaded full_distribution; identical output.
FockDistribution full_distribution_serial(const NetworkUnitary& u, const OccupationVector& n);

}  // namespace reference

}  // namespace bosonbudget
