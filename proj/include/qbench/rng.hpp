// Copyright 2026 The qbench developers
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

#include <cmath>
#include <cstdint>
#include <random>

namespace qbench {

/// Seeded random stream with platform-independent output.
///
/// Wraps std::mt19937_64 (bit-exact engine per the standard) but derives all
/// variates with explicit formulas instead of std::*_distribution, whose
/// output is implementation-defined. Identical seeds therefore produce
/// identical draws on every platform and standard library.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Lemire multiply-shift; bias < 2^-64.
    uint64_t uniform_int(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller. One cached value per pair.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    /// +1 or -1 with equal probability.
    int rademacher() { return (engine_() & 1ull) ? 1 : -1; }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// splitmix64 step; used to derive independent substream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic substream for (master seed, index), e.g. one per shot.
/// Streams with distinct indices are statistically independent, so shot-level
/// parallelism cannot change results.
inline RandomStream derive_stream(uint64_t master_seed, uint64_t index) {
    uint64_t s = master_seed ^ (0x6a09e667f3bcc909ull + index * 0x9e3779b97f4a7c15ull);
    uint64_t mixed = splitmix64(s);
    mixed ^= splitmix64(s) << 1;
    return RandomStream(mixed);
}

} // namespace qbench
