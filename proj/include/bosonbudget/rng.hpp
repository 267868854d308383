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
#include <limits>
#include <random>
#include <string_view>

namespace bosonbudget {

/// Seeded random stream. Satisfies UniformRandomBitGenerator so the standard
/// distributions can draw from it directly.
///
/// Streams are splittable: split(i) derives an independent child stream from
/// (seed, i) through SplitMix64 mixing, so a loop that gives iteration i the
/// stream split(i) produces the same draws regardless of how iterations are
/// scheduled across threads.
class RngStream {
public:
    using result_type = std::uint64_t;
    static constexpr std::string_view algorithm = "mt19937_64+splitmix64";

    explicit RngStream(std::uint64_t seed);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    result_type operator()() {
        ++position_;
        return engine_();
    }

    /// Child stream keyed by `index`; does not advance this stream.
    RngStream split(std::uint64_t index) const;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t position() const noexcept { return position_; }

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double uniform();
    /// Standard normal draw.
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t position_ = 0;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bosonbudget
