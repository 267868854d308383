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

#include <vector>

#include "bosonbudget/fock.hpp"
#include "bosonbudget/ideal_sampler.hpp"
#include "bosonbudget/matrix.hpp"

namespace bosonbudget {

/// Photon-number distribution p_0..p_kmax of one source. All N sources are
/// replicas of each other. Mass above kmax is truncated and reported.
struct SourceModel {
    std::vector<double> photon_probs{0.0, 1.0};

    static SourceModel ideal() { return {}; }

    int kmax() const noexcept { return static_cast<int>(photon_probs.size()) - 1; }
    double p(int k) const noexcept {
        return k >= 0 && k <= kmax() ? photon_probs[static_cast<std::size_t>(k)] : 0.0;
    }
    double p1() const noexcept { return p(1); }
    /// 1 - sum_k p_k, clamped at 0.
    double truncated_mass() const;
    /// DomainError unless p_k >= 0 and sum p_k <= 1 + 1e-12.
    void validate() const;
};

/// Identical lossy bucket detectors with dark counts:
/// P(no click | s photons) = exp(-dark_rate) * loss_prob^s.
struct DetectorModel {
    double loss_prob = 0.0;
    double dark_rate = 0.0;

    void validate() const;
    double no_click(int photons) const;
};

/// Sources feed input modes 0..sources-1; the remaining inputs are vacuum.
struct DeviceConfig {
    NetworkUnitary network;
    int sources;
    SourceModel source;
    DetectorModel detector;

    int modes() const noexcept { return network.modes(); }
    /// DomainError / DimensionError for out-of-range parameters.
    void validate() const;
    /// p_1 = 1, no loss, no dark counts.
    bool noiseless() const;
};

struct WeightedInput {
    OccupationVector occupation;
    double prob;
};

/// P_I(n) = prod_{i<N} p_{n_i}; 0 if any photon sits outside the source modes.
double input_prob(const DeviceConfig& cfg, const OccupationVector& n);

/// Every input with non-zero P_I, in descending lexicographic order of the
/// source photon numbers.
std::vector<WeightedInput> input_support(const DeviceConfig& cfg);

/// prod_l P_D(m_l | s_l).
double detector_prob(const DetectorModel& det, const ClickPattern& m, const OccupationVector& s);

inline constexpr double kClickTermBudget = 4.0e8;
inline constexpr int kMaxClickModes = 24;

/// Exact P_out(m) for all 2^M click patterns by the triple sum over inputs n
/// (innermost), network outputs s, and patterns m, with compensated
/// accumulation. Patterns are ordered as M-bit binary numbers with mode 0
/// most significant. ResourceError with the estimated term count when the
/// sum is too large.
ClickDistribution output_click_distribution(const DeviceConfig& cfg);

/// P_out(m) for a single pattern without enumerating network outputs:
/// inclusion-exclusion over the clicked set C,
///   P_out(m) = sum_{K subset C} (-1)^{|C|-|K|} exp(-nu (M-|K|)) G(K),
/// where G(K) is the probability that no photon is registered outside K,
/// G(K) = sum_n P_I(n) per(B_K[n|n]) / mu(n) with
/// B_K = r U_src U_src^dagger + (1-r) sum_{l in K} u_l u_l^dagger.
/// Cost grows as 2^{|C|}; intended for patterns with few clicks.
double click_probability(const DeviceConfig& cfg, const ClickPattern& m);

struct DistanceParts {
    double v1;  // mass of patterns with a click count other than N
    double v2;  // sum over N-click patterns of |P_out - P_U(.|n0)|
    double vb;  // bunched mass of the ideal device
    double total() const noexcept { return v1 + v2 + vb; }
};

/// V1, V2, Vb for the configured device. Iterates over the C(M, N) collision
/// free N-click patterns only, so it scales to M in the hundreds for small N.
DistanceParts distance_parts(const DeviceConfig& cfg);

struct BoundRA {
    double ra;       // raw value, may exceed 2
    double q;        // prob. of N clicks, no dark counts elsewhere, ideal input
    double q_prime;  // prob. of a non-ideal input, 1 - p1^N
    double clamped() const noexcept { return ra < 2.0 ? ra : 2.0; }
};

/// Haar-average bound on V1 + V2 + Vb.
BoundRA bound_RA(int photons, int modes, const SourceModel& src, const DetectorModel& det);

/// 3N^2/(2M) + 3[(M-N) nu + N r] + 4N(1 - p1); dominates bound_RA.
double bound_RA_simple(int photons, int modes, const SourceModel& src, const DetectorModel& det);

namespace reference {

ClickDistribution output_click_distribution_serial(const DeviceConfig& cfg);
DistanceParts distance_parts_serial(const DeviceConfig& cfg);

/// V1, V2, Vb straight from their definitions using the full click table and
/// the full ideal Fock distribution. Desk-scale M only.
DistanceParts distance_parts_from_tables(const DeviceConfig& cfg);

}  // namespace reference

}  // namespace bosonbudget
