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

#include "qthresh/lattice.h"

#include <algorithm>
#include <numeric>
#include <queue>

#include "gtest/gtest.h"
#include "qthresh/rng.h"

using namespace qthresh;

namespace {

size_t overlap(const std::vector<int> &a, const std::vector<int> &b) {
    size_t n = 0;
    for (int x : a) {
        n += std::count(b.begin(), b.end(), x);
    }
    return n;
}

BitVec support_bits(int n, const std::vector<int> &support) {
    BitVec bits(n, 0);
    for (int q : support) {
        bits[q] ^= 1;
    }
    return bits;
}

}  // namespace

TEST(lattice, check_counts) {
    for (int d : {3, 5, 7, 9}) {
        const auto layout = build_lattice(d);
        EXPECT_EQ(layout.n_data, d * d);
        EXPECT_EQ(static_cast<int>(layout.z_checks.size()), (d * d - 1) / 2);
        EXPECT_EQ(static_cast<int>(layout.x_checks.size()), (d * d - 1) / 2);
    }
    EXPECT_THROW(build_lattice(4), std::invalid_argument);
    EXPECT_THROW(build_lattice(1), std::invalid_argument);
}

TEST(lattice, stabilizer_and_logical_commutation) {
    for (int d : {3, 5, 7}) {
        const auto layout = build_lattice(d);
        for (const auto &z : layout.z_checks) {
            EXPECT_TRUE(z.size() == 2 || z.size() == 4);
            for (const auto &x : layout.x_checks) {
                EXPECT_EQ(overlap(z, x) % 2, 0u);
            }
            EXPECT_EQ(overlap(z, layout.logical_x_support) % 2, 0u);
        }
        for (const auto &x : layout.x_checks) {
            EXPECT_TRUE(x.size() == 2 || x.size() == 4);
            EXPECT_EQ(overlap(x, layout.logical_z_support) % 2, 0u);
        }
        EXPECT_EQ(overlap(layout.logical_z_support, layout.logical_x_support) % 2, 1u);
        EXPECT_EQ(static_cast<int>(layout.logical_z_support.size()), d);
    }
}

TEST(lattice, weight_two_checks_on_boundary) {
    const int d = 5;
    const auto layout = build_lattice(d);
    for (const auto *checks : {&layout.z_checks, &layout.x_checks}) {
        for (const auto &c : *checks) {
            if (c.size() != 2) {
                continue;
            }
            for (int q : c) {
                const int r = q / d, col = q % d;
                EXPECT_TRUE(r == 0 || r == d - 1 || col == 0 || col == d - 1);
            }
        }
    }
}

// Exhaustive d=3 check that no undetectable X error of weight < 3 flips a logical.
TEST(lattice, code_distance_three_exhaustive) {
    const auto layout = build_lattice(3);
    int min_logical = 100;
    for (int mask = 1; mask < (1 << 9); ++mask) {
        auto e = ErrorPattern::zeros(9);
        for (int q = 0; q < 9; ++q) {
            e.x_bits[q] = (mask >> q) & 1;
        }
        if (!syndrome(layout, e).empty()) {
            continue;
        }
        if (is_logical_failure(layout, e)) {
            min_logical = std::min(min_logical, __builtin_popcount(mask));
        }
    }
    EXPECT_EQ(min_logical, 3);
}

TEST(lattice, syndrome_examples) {
    const auto layout = build_lattice(5);
    EXPECT_TRUE(syndrome(layout, ErrorPattern::zeros(25)).empty());

    auto e = ErrorPattern::zeros(25);
    e.x_bits[2 * 5 + 2] = 1;  // interior qubit
    const auto s = syndrome(layout, e);
    EXPECT_EQ(s.z_defects.size(), 2u);
    EXPECT_TRUE(s.x_defects.empty());

    auto logical = ErrorPattern::zeros(25);
    logical.x_bits = support_bits(25, layout.logical_x_support);
    EXPECT_TRUE(syndrome(layout, logical).z_defects.empty());
    EXPECT_TRUE(is_logical_failure(layout, logical));
    EXPECT_FALSE(is_logical_failure(layout, ErrorPattern::zeros(25)));

    for (const auto &x : layout.x_checks) {
        auto stab = ErrorPattern::zeros(25);
        stab.x_bits = support_bits(25, x);
        EXPECT_FALSE(is_logical_failure(layout, stab));
    }
    EXPECT_THROW(is_logical_failure(layout, e), std::logic_error);
}

TEST(lattice, syndrome_is_coset_invariant) {
    const auto layout = build_lattice(5);
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto e = ErrorPattern::zeros(25);
        for (int q = 0; q < 25; ++q) {
            e.x_bits[q] = rng.uniform() < 0.2;
            e.z_bits[q] = rng.uniform() < 0.2;
        }
        auto shifted = e;
        const auto &sx = layout.x_checks[rng.next() % layout.x_checks.size()];
        const auto &sz = layout.z_checks[rng.next() % layout.z_checks.size()];
        for (int q : sx) shifted.x_bits[q] ^= 1;
        for (int q : sz) shifted.z_bits[q] ^= 1;
        EXPECT_EQ(syndrome(layout, e), syndrome(layout, shifted));
    }
}

TEST(lattice, decoding_graph_counts) {
    for (int d : {3, 5, 7}) {
        const auto layout = build_lattice(d);
        for (auto t : {PauliType::X, PauliType::Z}) {
            const auto g = decoding_graph(layout, t);
            EXPECT_EQ(g.num_checks, (d * d - 1) / 2);
            ASSERT_EQ(static_cast<int>(g.edges.size()), d * d);
            for (int e = 0; e < d * d; ++e) {
                EXPECT_EQ(g.edges[e].qubit, e);
            }
            EXPECT_EQ(g.pair_edges().size() + g.boundary_edges().size(), static_cast<size_t>(d * d));
            // Connected including the boundary.
            std::vector<uint8_t> seen(g.num_nodes(), 0);
            std::queue<int> q;
            q.push(g.boundary());
            seen[g.boundary()] = 1;
            while (!q.empty()) {
                const int v = q.front();
                q.pop();
                for (int e : g.incident[v]) {
                    const int w = g.other_end(e, v);
                    if (!seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
                }
            }
            EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), g.num_nodes());
        }
    }
}

TEST(lattice, d3_graphs_isomorphic) {
    const auto layout = build_lattice(3);
    const auto gx = decoding_graph(layout, PauliType::X);
    const auto gz = decoding_graph(layout, PauliType::Z);
    ASSERT_EQ(gx.num_checks, gz.num_checks);
    auto edge_multiset = [](const DecodingGraph &g, const std::vector<int> &perm) {
        std::vector<std::pair<int, int>> out;
        for (const auto &e : g.edges) {
            int a = perm[e.u], b = perm[e.v];
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<int> id(gz.num_nodes());
    std::iota(id.begin(), id.end(), 0);
    const auto target = edge_multiset(gz, id);
    std::vector<int> perm(gx.num_checks);
    std::iota(perm.begin(), perm.end(), 0);
    bool found = false;
    do {
        auto full = perm;
        full.push_back(gx.boundary());
        found = edge_multiset(gx, full) == target;
    } while (!found && std::next_permutation(perm.begin(), perm.end()));
    EXPECT_TRUE(found);
}

TEST(lattice, pairwise_weights_match_naive_all_pairs) {
    const auto layout = build_lattice(7);
    for (auto t : {PauliType::X, PauliType::Z}) {
        const auto g = decoding_graph(layout, t);
        const int n = g.num_checks;
        // Floyd-Warshall over check nodes only: paths never pass through the boundary.
        const int inf = 1 << 20;
        std::vector<int> dist(n * n, inf);
        std::vector<int> to_boundary(n, inf);
        for (int v = 0; v < n; ++v) {
            dist[v * n + v] = 0;
        }
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            if (g.is_boundary_edge(e)) {
                to_boundary[g.edges[e].u] = 1;
            } else {
                dist[g.edges[e].u * n + g.edges[e].v] = dist[g.edges[e].v * n + g.edges[e].u] = 1;
            }
        }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dist[i * n + j] = std::min(dist[i * n + j], dist[i * n + k] + dist[k * n + j]);
        std::vector<int> bdist(n, inf);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) bdist[i] = std::min(bdist[i], dist[i * n + c] + to_boundary[c]);

        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> defects;
            for (int v = 0; v < n; ++v) {
                if (rng.uniform() < 0.3) defects.push_back(v);
            }
            const auto w = pairwise_weights(g, defects);
            for (size_t i = 0; i < defects.size(); ++i) {
                EXPECT_EQ(w.boundary_weight(i), bdist[defects[i]]);
                EXPECT_EQ(static_cast<int>(w.boundary_path(i).size()), bdist[defects[i]]);
                for (size_t j = 0; j < defects.size(); ++j) {
                    EXPECT_EQ(w.pair_weight(i, j), dist[defects[i] * n + defects[j]]);
                    if (i != j) {
                        // The path's qubits flip exactly the two endpoints.
                        BitVec bits(g.edges.size(), 0);
                        for (int q : w.path(i, j)) bits[q] ^= 1;
                        std::vector<int> fired;
                        for (int v = 0; v < n; ++v) {
                            int parity = 0;
                            for (int e : g.incident[v]) parity ^= bits[e];
                            if (parity) fired.push_back(v);
                        }
                        std::vector<int> ends{std::min(defects[i], defects[j]), std::max(defects[i], defects[j])};
                        EXPECT_EQ(fired, ends);
                        EXPECT_EQ(static_cast<int>(w.path(i, j).size()), w.pair_weight(i, j));
                    }
                }
            }
        }
    }
}

TEST(lattice, adjacent_defects_share_one_qubit) {
    const auto layout = build_lattice(5);
    const auto g = decoding_graph(layout, PauliType::X);
    const auto e = g.pair_edges().front();
    const std::vector<int> defects{e.u, e.v};
    const auto w = pairwise_weights(g, defects);
    EXPECT_EQ(w.pair_weight(0, 1), 1);
    EXPECT_EQ(w.path(0, 1), std::vector<int>{e.qubit});
    const auto b = g.boundary_edges().front();
    const std::vector<int> single{b.u};
    EXPECT_EQ(pairwise_weights(g, single).boundary_weight(0), 1);
    const std::vector<int> bad{g.num_checks};
    EXPECT_THROW(pairwise_weights(g, bad), std::out_of_range);
}

TEST(lattice, deterministic) {
    const auto a = build_lattice(7);
    const auto b = build_lattice(7);
    EXPECT_EQ(a.z_checks, b.z_checks);
    EXPECT_EQ(a.x_checks, b.x_checks);
}
