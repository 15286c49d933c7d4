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

#ifndef QTHRESH_LATTICE_H
#define QTHRESH_LATTICE_H

#include <cstdint>
#include <span>
#include <vector>

namespace qthresh {

using BitVec = std::vector<uint8_t>;

/// Which Pauli component a decoding graph corrects. X faults fire Z-checks.
enum class PauliType : uint8_t { X, Z };

/// Rotated surface code on a d x d grid of data qubits, qubit (r, c) = r * d + c.
///
/// Weight-2 Z-checks sit on the top and bottom edges, weight-2 X-checks on the
/// left and right edges. Logical Z is the first column, logical X the first row.
struct SurfaceCodeLayout {
    int distance = 0;
    int n_data = 0;
    std::vector<std::vector<int>> z_checks;
    std::vector<std::vector<int>> x_checks;
    std::vector<int> logical_z_support;
    std::vector<int> logical_x_support;

    const std::vector<std::vector<int>> &checks_detecting(PauliType fault) const {
        return fault == PauliType::X ? z_checks : x_checks;
    }
    const std::vector<int> &logical_detecting(PauliType fault) const {
        return fault == PauliType::X ? logical_z_support : logical_x_support;
    }
};

/// Per-qubit fault bits. A Y fault sets both.
struct ErrorPattern {
    BitVec x_bits;
    BitVec z_bits;

    static ErrorPattern zeros(int n_data) {
        return ErrorPattern{BitVec(n_data, 0), BitVec(n_data, 0)};
    }
    BitVec &bits(PauliType t) { return t == PauliType::X ? x_bits : z_bits; }
    const BitVec &bits(PauliType t) const { return t == PauliType::X ? x_bits : z_bits; }
    ErrorPattern &operator^=(const ErrorPattern &other);
    bool operator==(const ErrorPattern &other) const = default;
};

/// Indices of fired checks, ascending.
struct Syndrome {
    std::vector<int> z_defects;  // fired by X faults
    std::vector<int> x_defects;  // fired by Z faults

    const std::vector<int> &defects_of(PauliType fault) const {
        return fault == PauliType::X ? z_defects : x_defects;
    }
    bool empty() const { return z_defects.empty() && x_defects.empty(); }
    bool operator==(const Syndrome &other) const = default;
};

SurfaceCodeLayout build_lattice(int distance);

/// Fired check indices (ascending) for one check family against one bit vector.
std::vector<int> fired_checks(const std::vector<std::vector<int>> &checks, std::span<const uint8_t> bits);

Syndrome syndrome(const SurfaceCodeLayout &layout, const ErrorPattern &error);

/// Parity of `bits` over `support`.
bool odd_overlap(std::span<const uint8_t> bits, std::span<const int> support);

/// True iff the residual anticommutes with a logical operator. Throws
/// std::logic_error when the residual still has a syndrome.
bool is_logical_failure(const SurfaceCodeLayout &layout, const ErrorPattern &residual);

struct GraphEdge {
    int u;
    int v;  // equals DecodingGraph::boundary() for boundary edges
    int qubit;
};

/// Check graph for one fault type: nodes are the checks that detect it, plus
/// one virtual boundary node. Every data qubit is exactly one edge, and
/// `edges[q].qubit == q`, so edge ids and qubit ids coincide.
struct DecodingGraph {
    PauliType error_type = PauliType::X;
    int num_checks = 0;
    std::vector<GraphEdge> edges;
    /// Per node (boundary included): incident edge ids in ascending order.
    std::vector<std::vector<int>> incident;

    int boundary() const { return num_checks; }
    int num_nodes() const { return num_checks + 1; }
    bool is_boundary_edge(int e) const { return edges[e].v == boundary(); }
    int other_end(int e, int node) const { return edges[e].u == node ? edges[e].v : edges[e].u; }
    std::vector<GraphEdge> pair_edges() const;
    std::vector<GraphEdge> boundary_edges() const;
};

DecodingGraph decoding_graph(const SurfaceCodeLayout &layout, PauliType error_type);

inline constexpr int kUnreachable = -1;

/// Unit-weight shortest paths among a defect set and to the boundary.
/// Pair paths never pass through the boundary node.
struct DefectWeights {
    std::vector<int> defects;
    std::vector<int> pair;       // row-major n x n, kUnreachable when disconnected
    std::vector<int> boundary;   // per defect, kUnreachable when disconnected

    size_t size() const { return defects.size(); }
    int pair_weight(size_t i, size_t j) const { return pair[i * defects.size() + j]; }
    int boundary_weight(size_t i) const { return boundary[i]; }

    /// Qubits along the stored shortest path between defects i and j.
    std::vector<int> path(size_t i, size_t j) const;
    /// Qubits along the stored shortest path from defect i to the boundary.
    std::vector<int> boundary_path(size_t i) const;

    // BFS trees, one per defect source: parent edge per node (-1 at source/unreached).
    std::vector<std::vector<int>> parent_edge;
    const DecodingGraph *graph = nullptr;
};

/// Breadth-first distances from every defect. Throws std::out_of_range when a
/// defect is not a check node of the graph.
DefectWeights pairwise_weights(const DecodingGraph &graph, std::span<const int> defects);

}  // namespace qthresh

#endif
