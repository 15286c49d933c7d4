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

#include "qthresh/union_find.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "qthresh/matching.h"
#include "qthresh/rng.h"

using namespace qthresh;

TEST(union_find, empty_defects) {
    const auto g = decoding_graph(build_lattice(5), PauliType::X);
    EXPECT_EQ(decode_unionfind(g, std::vector<int>{}), BitVec(25, 0));
}

TEST(union_find, single_defect_next_to_boundary) {
    const auto layout = build_lattice(3);
    const auto g = decoding_graph(layout, PauliType::X);
    for (const auto &b : g.boundary_edges()) {
        const std::vector<int> defects{b.u};
        ClusterState cs(g, defects);
        EXPECT_TRUE(cs.has_odd_cluster());
        cs.grow_round();
        EXPECT_FALSE(cs.has_odd_cluster());
        BitVec err(9, 0);
        err[b.qubit] = 1;
        if (graph_syndrome(g, err) != defects) {
            continue;  // qubit also touches another check
        }
        const auto c = decode_unionfind(g, defects);
        EXPECT_EQ(graph_syndrome(g, c), defects);
        // Either boundary qubit of a weight-2 check is a valid single-edge fix.
        auto residual = ErrorPattern::zeros(9);
        residual.x_bits = c;
        residual.x_bits[b.qubit] ^= 1;
        EXPECT_FALSE(is_logical_failure(layout, residual));
        EXPECT_EQ(std::count(c.begin(), c.end(), 1), 1);
    }
}

TEST(union_find, cluster_parity_tracks_defects) {
    const auto g = decoding_graph(build_lattice(5), PauliType::X);
    const auto e = g.pair_edges()[5];
    const std::vector<int> defects{std::min(e.u, e.v), std::max(e.u, e.v)};
    ClusterState cs(g, defects);
    EXPECT_TRUE(cs.parity(cs.find(defects[0])));
    const int root = cs.merge(defects[0], defects[1]);
    EXPECT_FALSE(cs.parity(root));
    EXPECT_EQ(cs.find(defects[0]), cs.find(defects[1]));
    const int b = cs.merge(root, g.boundary());
    EXPECT_TRUE(cs.touches_boundary(b));
    EXPECT_FALSE(cs.is_odd(b));
}

TEST(peel, single_boundary_edge) {
    const auto g = decoding_graph(build_lattice(3), PauliType::X);
    const auto b = g.boundary_edges().front();
    std::vector<uint8_t> erasure(g.edges.size(), 0);
    erasure[b.qubit] = 1;
    EXPECT_EQ(peel(g, erasure, std::vector<int>{b.u}), std::vector<int>{b.qubit});
}

TEST(peel, stranded_odd_component_throws) {
    const auto g = decoding_graph(build_lattice(5), PauliType::X);
    const auto e = g.pair_edges().front();
    std::vector<uint8_t> erasure(g.edges.size(), 0);
    erasure[e.qubit] = 1;
    EXPECT_THROW(peel(g, erasure, std::vector<int>{e.u}), std::invalid_argument);
}

// Random erasures with planted defect sets drawn from chains inside them.
TEST(peel, random_erasures_restore_syndrome) {
    const auto g = decoding_graph(build_lattice(5), PauliType::X);
    Rng rng(404);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<uint8_t> erasure(g.edges.size(), 0);
        BitVec chain(g.edges.size(), 0);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            erasure[e] = rng.uniform() < 0.35;
            chain[e] = erasure[e] && rng.uniform() < 0.5;
        }
        const auto defects = graph_syndrome(g, chain);
        const auto flips = peel(g, erasure, defects);
        BitVec c(g.edges.size(), 0);
        for (int e : flips) {
            ASSERT_TRUE(erasure[e]);
            c[e] ^= 1;
        }
        ASSERT_EQ(graph_syndrome(g, c), defects) << "trial " << trial;
    }
}

TEST(union_find, syndrome_validity_and_support) {
    for (int d : {3, 5, 7}) {
        const auto layout = build_lattice(d);
        Rng rng(d * 31);
        for (auto t : {PauliType::X, PauliType::Z}) {
            const auto g = decoding_graph(layout, t);
            for (int trial = 0; trial < 1000; ++trial) {
                BitVec err(d * d, 0);
                for (auto &b : err) b = rng.uniform() < 0.12;
                const auto defects = graph_syndrome(g, err);
                ClusterState cs(g, defects);
                while (cs.has_odd_cluster()) {
                    cs.grow_round();
                }
                const auto erasure = cs.erasure();
                const auto c = decode_unionfind(g, defects);
                ASSERT_EQ(graph_syndrome(g, c), defects);
                for (int q = 0; q < d * d; ++q) {
                    if (c[q]) {
                        EXPECT_TRUE(erasure[q]);
                    }
                }
            }
        }
    }
}

TEST(union_find, weight_one_errors_are_corrected_at_d5) {
    const auto layout = build_lattice(5);
    for (auto t : {PauliType::X, PauliType::Z}) {
        const auto g = decoding_graph(layout, t);
        for (int q = 0; q < 25; ++q) {
            BitVec err(25, 0);
            err[q] = 1;
            const auto c = decode_unionfind(g, graph_syndrome(g, err));
            auto residual = ErrorPattern::zeros(25);
            residual.bits(t) = c;
            residual.bits(t)[q] ^= 1;
            EXPECT_FALSE(is_logical_failure(layout, residual)) << "qubit " << q;
        }
    }
}
