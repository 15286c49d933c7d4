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
#include <deque>
#include <stdexcept>
#include <string>

namespace qthresh {

ErrorPattern &ErrorPattern::operator^=(const ErrorPattern &other) {
    if (other.x_bits.size() != x_bits.size() || other.z_bits.size() != z_bits.size()) {
        throw std::invalid_argument("ErrorPattern size mismatch in xor");
    }
    for (size_t q = 0; q < x_bits.size(); ++q) {
        x_bits[q] ^= other.x_bits[q];
        z_bits[q] ^= other.z_bits[q];
    }
    return *this;
}

SurfaceCodeLayout build_lattice(int distance) {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("surface code distance must be odd and >= 3, got " + std::to_string(distance));
    }
    const int d = distance;
    SurfaceCodeLayout layout;
    layout.distance = d;
    layout.n_data = d * d;

    // Plaquette (i, j), 0 <= i, j <= d, covers rows {i-1, i} x cols {j-1, j}.
    // (i + j) even is an X-check, odd a Z-check.
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d; ++j) {
            const bool is_x = (i + j) % 2 == 0;
            const bool top_bottom = i == 0 || i == d;
            const bool left_right = j == 0 || j == d;
            if (top_bottom && left_right) {
                continue;
            }
            if (top_bottom && is_x) {
                continue;
            }
            if (left_right && !is_x) {
                continue;
            }
            std::vector<int> support;
            for (int r = i - 1; r <= i; ++r) {
                for (int c = j - 1; c <= j; ++c) {
                    if (r >= 0 && r < d && c >= 0 && c < d) {
                        support.push_back(r * d + c);
                    }
                }
            }
            (is_x ? layout.x_checks : layout.z_checks).push_back(std::move(support));
        }
    }
    for (int r = 0; r < d; ++r) {
        layout.logical_z_support.push_back(r * d);
    }
    for (int c = 0; c < d; ++c) {
        layout.logical_x_support.push_back(c);
    }
    return layout;
}

bool odd_overlap(std::span<const uint8_t> bits, std::span<const int> support) {
    uint8_t parity = 0;
    for (int q : support) {
        parity ^= bits[q];
    }
    return parity & 1;
}

std::vector<int> fired_checks(const std::vector<std::vector<int>> &checks, std::span<const uint8_t> bits) {
    std::vector<int> fired;
    for (size_t k = 0; k < checks.size(); ++k) {
        if (odd_overlap(bits, checks[k])) {
            fired.push_back(static_cast<int>(k));
        }
    }
    return fired;
}

Syndrome syndrome(const SurfaceCodeLayout &layout, const ErrorPattern &error) {
    if (error.x_bits.size() != static_cast<size_t>(layout.n_data) ||
        error.z_bits.size() != static_cast<size_t>(layout.n_data)) {
        throw std::invalid_argument("error pattern length does not match layout");
    }
    return Syndrome{fired_checks(layout.z_checks, error.x_bits), fired_checks(layout.x_checks, error.z_bits)};
}

bool is_logical_failure(const SurfaceCodeLayout &layout, const ErrorPattern &residual) {
    if (!syndrome(layout, residual).empty()) {
        throw std::logic_error("residual error has a nonzero syndrome; correction was inconsistent");
    }
    return odd_overlap(residual.x_bits, layout.logical_z_support) ||
           odd_overlap(residual.z_bits, layout.logical_x_support);
}

std::vector<GraphEdge> DecodingGraph::pair_edges() const {
    std::vector<GraphEdge> out;
    for (const auto &e : edges) {
        if (e.v != boundary()) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<GraphEdge> DecodingGraph::boundary_edges() const {
    std::vector<GraphEdge> out;
    for (const auto &e : edges) {
        if (e.v == boundary()) {
            out.push_back(e);
        }
    }
    return out;
}

DecodingGraph decoding_graph(const SurfaceCodeLayout &layout, PauliType error_type) {
    const auto &checks = layout.checks_detecting(error_type);
    DecodingGraph graph;
    graph.error_type = error_type;
    graph.num_checks = static_cast<int>(checks.size());

    std::vector<std::vector<int>> touching(layout.n_data);
    for (size_t k = 0; k < checks.size(); ++k) {
        for (int q : checks[k]) {
            touching[q].push_back(static_cast<int>(k));
        }
    }
    graph.incident.assign(graph.num_nodes(), {});
    for (int q = 0; q < layout.n_data; ++q) {
        const auto &t = touching[q];
        GraphEdge e{};
        if (t.size() == 2) {
            e = GraphEdge{t[0], t[1], q};
        } else if (t.size() == 1) {
            e = GraphEdge{t[0], graph.boundary(), q};
        } else {
            throw std::logic_error("qubit " + std::to_string(q) + " touches " + std::to_string(t.size()) +
                                   " same-type checks");
        }
        graph.edges.push_back(e);
        graph.incident[e.u].push_back(q);
        graph.incident[e.v].push_back(q);
    }
    return graph;
}

namespace {

std::vector<int> walk_back(const DecodingGraph &graph, const std::vector<int> &parent, int source, int target) {
    std::vector<int> qubits;
    int node = target;
    while (node != source) {
        const int e = parent[node];
        if (e < 0) {
            throw std::logic_error("no stored path between requested nodes");
        }
        qubits.push_back(e);
        node = graph.other_end(e, node);
    }
    std::reverse(qubits.begin(), qubits.end());
    return qubits;
}

}  // namespace

std::vector<int> DefectWeights::path(size_t i, size_t j) const {
    return walk_back(*graph, parent_edge[i], defects[i], defects[j]);
}

std::vector<int> DefectWeights::boundary_path(size_t i) const {
    return walk_back(*graph, parent_edge[i], defects[i], graph->boundary());
}

DefectWeights pairwise_weights(const DecodingGraph &graph, std::span<const int> defects) {
    const size_t n = defects.size();
    DefectWeights out;
    out.graph = &graph;
    out.defects.assign(defects.begin(), defects.end());
    out.pair.assign(n * n, kUnreachable);
    out.boundary.assign(n, kUnreachable);
    out.parent_edge.assign(n, {});

    std::vector<int> dist(graph.num_nodes());
    std::deque<int> frontier;
    for (size_t i = 0; i < n; ++i) {
        const int src = defects[i];
        if (src < 0 || src >= graph.num_checks) {
            throw std::out_of_range("defect " + std::to_string(src) + " is not a node of the decoding graph");
        }
        std::fill(dist.begin(), dist.end(), kUnreachable);
        auto &parent = out.parent_edge[i];
        parent.assign(graph.num_nodes(), -1);
        dist[src] = 0;
        frontier.assign(1, src);
        while (!frontier.empty()) {
            const int node = frontier.front();
            frontier.pop_front();
            // The boundary is a sink: pair paths must not route through it.
            if (node == graph.boundary()) {
                continue;
            }
            for (int e : graph.incident[node]) {
                const int next = graph.other_end(e, node);
                if (dist[next] == kUnreachable) {
                    dist[next] = dist[node] + 1;
                    parent[next] = e;
                    frontier.push_back(next);
                }
            }
        }
        for (size_t j = 0; j < n; ++j) {
            out.pair[i * n + j] = dist[defects[j]];
        }
        out.boundary[i] = dist[graph.boundary()];
    }
    return out;
}

}  // namespace qthresh
