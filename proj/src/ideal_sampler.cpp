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

#include "bosonbudget/ideal_sampler.hpp"

#include <complex>

#include "bosonbudget/permanent.hpp"

namespace bosonbudget {

double prob_ideal(const NetworkUnitary& u, const OccupationVector& n, const OccupationVector& s) {
    if (n.modes() != u.modes() || s.modes() != u.modes()) {
        throw DimensionError("prob_ideal: occupation vectors must have length M=" +
                             std::to_string(u.modes()));
    }
    if (n.total() != s.total()) return 0.0;
    const Complex per = permanent_ryser(repeated_submatrix(u.matrix(), n, s));
    return std::norm(per) / (mu_double(n) * mu_double(s));
}

namespace {

FockDistribution build_distribution(const NetworkUnitary& u, const OccupationVector& n,
                                    bool parallel) {
    if (n.modes() != u.modes()) {
        throw DimensionError("full_distribution: input has length " + std::to_string(n.modes()) +
                             ", network has M=" + std::to_string(u.modes()));
    }
    FockDistribution dist;
    dist.outcomes = enumerate_outputs(u.modes(), n.total(), false, kDistributionBudget);
    dist.probs.assign(dist.outcomes.size(), 0.0);
    const auto count = static_cast<std::int64_t>(dist.outcomes.size());

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        dist.probs[k] = prob_ideal(u, n, dist.outcomes[k]);
    }
    return dist;
}

}  // namespace

FockDistribution full_distribution(const NetworkUnitary& u, const OccupationVector& n) {
    return build_distribution(u, n, true);
}

FockDistribution reference::full_distribution_serial(const NetworkUnitary& u,
                                                     const OccupationVector& n) {
    return build_distribution(u, n, false);
}

}  // namespace bosonbudget
