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
#include <deque>
#include <stdexcept>
#include <string>

#include "qthresh/matching.h"

namespace qthresh {

ClusterState::ClusterState(const DecodingGraph &graph, std::span<const int> defects) : graph_(graph) {
    const int n = graph.num_nodes();
    parent_.resize(n);
    for (int v = 0; v < n; ++v) {
        parent_[v] = v;
    }
    rank_.assign(n, 0);
    parity_.assign(n, 0);
    boundary_.assign(n, 0);
    boundary_[graph.boundary()] = 1;
    grown_.assign(graph.edges.size(), 0);
    for (int d : defects) {
        if (d < 0 || d >= graph.num_checks) {
            throw std::out_of_range("defect " + std::to_string(d) + " is not a node of the decoding graph");
        }
        parity_[d] ^= 1;
    }
}

int ClusterState::find(int node) {
    int root = node;
    while (parent_[root] != root) {
        root = parent_[root];
    }
    while (parent_[node] != root) {
        const int next = parent_[node];
        parent_[node] = root;
        node = next;
    }
    return root;
}

int ClusterState::merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return a;
    }
    if (rank_[a] < rank_[b] || (rank_[a] == rank_[b] && b < a)) {
        std::swap(a, b);
    }
    parent_[b] = a;
    if (rank_[a] == rank_[b]) {
        ++rank_[a];
    }
    parity_[a] ^= parity_[b];
    boundary_[a] |= boundary_[b];
    return a;
}

bool ClusterState::has_odd_cluster() {
    for (int v = 0; v < graph_.num_nodes(); ++v) {
        if (parent_[v] == v && is_odd(v)) {
            return true;
        }
    }
    return false;
}

int ClusterState::grow_round() {
    // Growth is simultaneous, so the set grown this round does not depend on
    // the order odd clusters are visited; merging follows ascending edge id.
    std::vector<int> fresh;
    for (size_t e = 0; e < graph_.edges.size(); ++e) {
        if (grown_[e]) {
            continue;
        }
        const auto &edge = graph_.edges[e];
        if (is_odd(find(edge.u)) || is_odd(find(edge.v))) {
            fresh.push_back(static_cast<int>(e));
        }
    }
    for (int e : fresh) {
        grown_[e] = 1;
        merge(graph_.edges[e].u, graph_.edges[e].v);
    }
    return static_cast<int>(fresh.size());
}

std::vector<int> peel(const DecodingGraph &graph, std::span<const uint8_t> erasure, std::span<const int> defects) {
    const int n = graph.num_nodes();
    std::vector<uint8_t> is_defect(n, 0);
    for (int d : defects) {
        if (d < 0 || d >= graph.num_checks) {
            throw std::out_of_range("defect " + std::to_string(d) + " is not a node of the decoding graph");
        }
        is_defect[d] ^= 1;
    }

    // Spanning forest by BFS over erased edges; the boundary component first.
    std::vector<int> tree_edge(n, -1);
    std::vector<uint8_t> seen(n, 0);
    std::vector<int> order;
    std::vector<int> roots;
    std::deque<int> frontier;
    auto span_from = [&](int root) {
        seen[root] = 1;
        roots.push_back(root);
        frontier.assign(1, root);
        while (!frontier.empty()) {
            const int node = frontier.front();
            frontier.pop_front();
            order.push_back(node);
            for (int e : graph.incident[node]) {
                if (!erasure[e]) {
                    continue;
                }
                const int next = graph.other_end(e, node);
                if (!seen[next]) {
                    seen[next] = 1;
                    tree_edge[next] = e;
                    frontier.push_back(next);
                }
            }
        }
    };
    span_from(graph.boundary());
    for (int v = 0; v < graph.num_checks; ++v) {
        if (!seen[v]) {
            span_from(v);
        }
    }

    std::vector<int> flips;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int node = *it;
        const int e = tree_edge[node];
        if (e < 0 || !is_defect[node]) {
            continue;
        }
        flips.push_back(e);
        is_defect[node] = 0;
        is_defect[graph.other_end(e, node)] ^= 1;
    }
    for (int root : roots) {
        if (root != graph.boundary() && is_defect[root]) {
            throw std::invalid_argument("erasure component rooted at node " + std::to_string(root) +
                                        " holds an odd number of defects and no boundary");
        }
    }
    std::sort(flips.begin(), flips.end());
    return flips;
}

BitVec decode_unionfind(const DecodingGraph &graph, std::span<const int> defects) {
    ClusterState clusters(graph, defects);
    while (clusters.has_odd_cluster()) {
        if (clusters.grow_round() == 0) {
            throw std::logic_error("union-find growth stalled with an odd cluster");
        }
    }
    BitVec correction(graph.edges.size(), 0);
    for (int e : peel(graph, clusters.erasure(), defects)) {
        correction[e] = 1;
    }
    std::vector<int> expected(defects.begin(), defects.end());
    std::sort(expected.begin(), expected.end());
    if (graph_syndrome(graph, correction) != expected) {
        throw std::logic_error("union-find correction does not reproduce the syndrome");
    }
    return correction;
}

}  // namespace qthresh
