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
#include <optional>
#include <span>
#include <vector>

#include "bosonbudget/fock.hpp"
#include "bosonbudget/matrix.hpp"

namespace bosonbudget {

/// counts[k-1] = number of k-cycles.
struct CycleType {
    std::vector<int> counts;

    int c(int k) const { return k >= 1 && k <= static_cast<int>(counts.size()) ? counts[static_cast<std::size_t>(k - 1)] : 0; }
    int size() const;
};

struct CycleClass {
    CycleType type;
    std::uint64_t class_size;
};

inline constexpr int kMaxCycleN = 12;

/// All cycle types of S_N with their class sizes N!/prod(k^{c_k} c_k!),
/// starting from the identity (N,0,..,0).
std::vector<CycleClass> cycle_types(int n);

/// Cycle type of a permutation given as images perm[i].
CycleType cycle_type_of(std::span<const int> perm);

/// chi(n) = sum_{k=0}^n n!/k!, exact for n <= 20.
std::uint64_t chi(int n);

/// g_k = Tr(rho_1^k) for k = 2..; g_1 = 1 implicitly.
struct DistinguishabilityParams {
    std::vector<double> g;  // g[0] = g_2
    std::optional<double> avg_fidelity;

    static DistinguishabilityParams uniform(int max_k, double value);
    /// g_k = 1 - k (1 - F), the small-mismatch relation.
    static DistinguishabilityParams from_fidelity(int max_k, double fidelity);

    int max_k() const noexcept { return static_cast<int>(g.size()) + 1; }
    /// g_k; 1 for k <= 1, DimensionError beyond max_k().
    double gk(int k) const;
    void validate() const;
};

struct JitterSourceSpec {
    double spectral_width;  // sigma_omega
    double jitter_std;      // sigma_tau
};

inline constexpr std::size_t kJitterMonteCarloSamples = std::size_t{1} << 20;

/// g_2..g_maxK and <F_ph> for photons with a Gaussian spectral envelope and
/// Gaussian arrival-time jitter. k <= 3 and <F_ph> by Gauss-Hermite
/// quadrature (64, 128, 256 nodes per dimension, NumericError if the last two
/// differ by more than 1e-6); k > 3 by Monte Carlo on a stream seeded by `seed`.
DistinguishabilityParams g_from_jitter(const JitterSourceSpec& spec, int max_k, std::uint64_t seed = 0);

/// J(sigma) = prod_{k>=2} g_k^{c_k(sigma)}.
double J_sigma(const DistinguishabilityParams& g, std::span<const int> sigma);
double J_cycle_type(const DistinguishabilityParams& g, const CycleType& c);

/// sum_rho J(rho) per(W_rho) with W_rho[i,a] = conj(A[i,a]) A[rho(i),a].
/// Equals |per A|^2 when all g_k = 1 and per(|A|^2) when all g_k = 0.
double mismatch_form(const ComplexMatrix& a, const DistinguishabilityParams& g);

inline constexpr int kMaxMismatchPhotons = 8;

/// Output probability for partially distinguishable identical photons.
double prob_mismatch(const NetworkUnitary& u, const OccupationVector& n, const OccupationVector& s,
                     const DistinguishabilityParams& g);

/// sum over cycle types of chi(c_1)(1 - prod g_k^{c_k})^2 / prod(k^{c_k} c_k!).
double bound_RB(int n, const DistinguishabilityParams& g);

/// (1 - F)^2 (N^3/3 - N^2/2 + 7N/6 - 1).
double bound_RB_smallmismatch(int n, double avg_fidelity);

/// N^3/3 - N^2/2 + 7N/6 - 1, exact in rational arithmetic.
double smallmismatch_polynomial(int n);

}  // namespace bosonbudget
