// Copyright 2026 The qthresh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTHRESH_RNG_H
#define QTHRESH_RNG_H

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qthresh {

/// SplitMix64 output mix (no state increment).
constexpr uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded from a single 64-bit value through four SplitMix64 steps.
///
/// The draw primitives (`uniform`, `gaussian_pair`) are part of the on-disk
/// reproducibility contract: changing them changes every results file.
class Rng {
   public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto &word : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            word = splitmix64_mix(sm);
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Two independent standard normals from one Box-Muller transform.
    std::pair<double, double> gaussian_pair() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    /// Sum of `trials` Bernoulli(p) draws. One uniform per trial.
    uint64_t binomial(uint64_t trials, double p) {
        uint64_t k = 0;
        for (uint64_t i = 0; i < trials; ++i) {
            k += uniform() < p;
        }
        return k;
    }

   private:
    static constexpr uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<uint64_t, 4> s_{};
};

/// Per-trial seed: M(M(M(M(s0) ^ d) ^ q) ^ t) with q = round(theta * 1e4) and
/// M the SplitMix64 mix. Pure in its arguments.
inline uint64_t seed_for(uint64_t base_seed, uint64_t distance, double theta, uint64_t trial) {
    const auto q = static_cast<uint64_t>(std::llround(theta * 1e4));
    return splitmix64_mix(splitmix64_mix(splitmix64_mix(splitmix64_mix(base_seed) ^ distance) ^ q) ^ trial);
}

}  // namespace qthresh

#endif
