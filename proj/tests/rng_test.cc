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

#include "qthresh/rng.h"

#include <unordered_set>

#include "gtest/gtest.h"

using namespace qthresh;

TEST(rng, seed_for_golden) {
    EXPECT_EQ(seed_for(0, 0, 0.0, 0), 0u);
    EXPECT_EQ(seed_for(1337, 5, 0.05, 0), 3161813718774468023ULL);
    EXPECT_EQ(seed_for(1337, 5, 0.05, 1), 5673355919030974223ULL);
}

TEST(rng, seed_for_trial_injective) {
    std::unordered_set<uint64_t> seen;
    for (uint64_t t = 0; t < 1000000; ++t) {
        seen.insert(seed_for(1337, 5, 0.05, t));
    }
    EXPECT_EQ(seen.size(), 1000000u);
}

TEST(rng, theta_quantized_to_1e4) {
    EXPECT_EQ(seed_for(7, 3, 0.05, 2), seed_for(7, 3, 0.05000001, 2));
    EXPECT_NE(seed_for(7, 3, 0.05, 2), seed_for(7, 3, 0.0501, 2));
}

TEST(rng, xoshiro_golden) {
    Rng rng(1337);
    EXPECT_EQ(rng.next(), 12468955128717782748ULL);
    EXPECT_EQ(rng.next(), 15024386940265324015ULL);
    EXPECT_EQ(rng.next(), 14342583032507416131ULL);
    Rng u(1337);
    EXPECT_EQ(u.uniform(), 0.6759434119590045);
    EXPECT_EQ(u.uniform(), 0.8144736480449252);
}

TEST(rng, gaussian_moments) {
    Rng rng(99);
    double s = 0, s2 = 0, cross = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        auto [a, b] = rng.gaussian_pair();
        s += a + b;
        s2 += a * a + b * b;
        cross += a * b;
    }
    EXPECT_NEAR(s / (2 * n), 0.0, 0.01);
    EXPECT_NEAR(s2 / (2 * n), 1.0, 0.01);
    EXPECT_NEAR(cross / n, 0.0, 0.01);
}

TEST(rng, binomial_edges) {
    Rng rng(5);
    EXPECT_EQ(rng.binomial(100, 0.0), 0u);
    EXPECT_EQ(rng.binomial(100, 1.0), 100u);
    EXPECT_EQ(rng.binomial(0, 0.5), 0u);
}
