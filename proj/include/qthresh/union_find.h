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

#ifndef QTHRESH_UNION_FIND_H
#define QTHRESH_UNION_FIND_H

#include <span>
#include <vector>

#include "qthresh/lattice.h"

namespace qthresh {

/// Cluster bookkeeping for the union-find decoder: disjoint sets over the
/// check nodes plus the boundary node, with per-root defect parity and a
/// boundary-contact flag. A cluster containing the boundary node is neutral.
class ClusterState {
   public:
    ClusterState(const DecodingGraph &graph, std::span<const int> defects);

    int find(int node);
    /// Union by rank; returns the new root.
    int merge(int a, int b);

    bool parity(int root) const { return parity_[root]; }
    bool touches_boundary(int root) const { return boundary_[root]; }
    bool is_odd(int root) const { return parity_[root] && !boundary_[root]; }
    bool has_odd_cluster();

    /// One growth round: every ungrown edge incident to an odd cluster is added
    /// to the erasure in full, then clusters joined by new edges are merged in
    /// ascending edge order. Returns the number of edges grown.
    int grow_round();

    const std::vector<uint8_t> &erasure() const { return grown_; }

   private:
    const DecodingGraph &graph_;
    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<uint8_t> parity_;
    std::vector<uint8_t> boundary_;
    std::vector<uint8_t> grown_;
};

/// Leaf-peel a spanning forest of the erased edges. Components touching the
/// boundary are rooted there; others at their lowest node. Returns flipped
/// edge ids (= qubits) ascending. Throws std::invalid_argument if a component
/// without boundary contact holds an odd number of defects.
std::vector<int> peel(const DecodingGraph &graph, std::span<const uint8_t> erasure, std::span<const int> defects);

/// Grow clusters until none is odd, then peel. Verified against the defects;
/// a mismatch throws std::logic_error.
BitVec decode_unionfind(const DecodingGraph &graph, std::span<const int> defects);

}  // namespace qthresh

#endif
