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
#include <string_view>
#include <vector>

#include "bosonbudget/distinguishability.hpp"
#include "bosonbudget/fock.hpp"
#include "bosonbudget/matrix.hpp"
#include "bosonbudget/noise_model.hpp"

namespace bosonbudget {

enum class WitnessDecision { BosonSampling, Uniform, Inconclusive };

std::string_view to_string(WitnessDecision d);

/// W(m) = prod_a (M/N) sum_{i<N} |U(i, l_a)|^2 over the clicked modes l_a.
double row_norm_statistic(const NetworkUnitary& u, int photons, std::span<const int> clicked);

struct WitnessReferences {
    double uniform;  // mean of W over uniformly drawn collision-free patterns
    double bs;       // mean of W under the ideal distribution, conditioned on N clicks
};

inline constexpr std::uint64_t kWitnessPatternBudget = 5'000'000;

/// Both reference means by exact enumeration of the C(M, N) collision-free patterns.
WitnessReferences witness_references(const NetworkUnitary& u, int photons);

struct WitnessResult {
    double sample_mean = 0.0;
    double standard_error = 0.0;
    double reference_uniform = 0.0;
    double reference_bs = 0.0;
    double threshold = 0.0;  // midpoint of the two references
    WitnessDecision decision = WitnessDecision::Inconclusive;
    std::size_t sample_count = 0;
    std::size_t rejected_count = 0;  // samples without exactly N clicks
};

/// Inconclusive when the sample mean lies within two standard errors of the
/// midpoint; otherwise the closer reference wins.
WitnessResult row_norm_witness(const NetworkUnitary& u, int photons, std::span<const ClickPattern> samples);
WitnessResult row_norm_witness(const NetworkUnitary& u, int photons, std::span<const ClickPattern> samples,
                               const WitnessReferences& refs);

/// Probability that, after U followed by its inverse, exactly the N source
/// modes click, with the device noise active at the sources and detectors.
double unitarity_roundtrip(const DeviceConfig& cfg);

struct SuppressionResult {
    bool law_valid = true;
    double suppressed_mass = 0.0;        // under the given g
    double ideal_suppressed_mass = 0.0;  // g = 1
    std::size_t flagged_outputs = 0;
    std::size_t total_outputs = 0;
    std::size_t law_violations = 0;      // flagged outputs with ideal probability > 1e-10
};

inline constexpr int kMaxSuppressionN = 7;

/// Suppressed iff l is not a multiple of N, where l is the sum of the
/// 0-based output mode indices.
bool fourier_suppressed(const OccupationVector& s);

/// One photon per input of the N-mode Fourier network. Every flagged output
/// is first checked by a direct permanent; if any fails, law_valid is false
/// and the masses are left at zero.
SuppressionResult suppression_test(int n, const DistinguishabilityParams& g);

}  // namespace bosonbudget
