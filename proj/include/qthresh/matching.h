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

#ifndef QTHRESH_MATCHING_H
#define QTHRESH_MATCHING_H

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qthresh/lattice.h"

namespace qthresh {

inline constexpr double kNoEdge = std::numeric_limits<double>::infinity();
inline constexpr int kBoundaryPartner = -1;

/// Complete defect graph plus a boundary option per defect. Defects are
/// addressed by local index [0, n); an infinite weight removes the option.
struct MatchingInstance {
    std::vector<int> defect_ids;
    std::vector<double> pair;      // row-major n x n, symmetric
    std::vector<double> boundary;  // per defect

    size_t size() const { return boundary.size(); }
    double pair_weight(size_t i, size_t j) const { return pair[i * size() + j]; }

    /// Throws std::invalid_argument on asymmetric, negative or NaN weights.
    void validate() const;
};

MatchingInstance make_instance(const DefectWeights &weights);

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // (i, j) with i < j, ascending
    std::vector<int> boundary_matched;       // ascending
    double total_weight = 0;

    /// Partner per defect, kBoundaryPartner for boundary matches.
    std::vector<int> partners(size_t n) const;
    bool operator==(const Matching &other) const = default;
};

/// Weight tolerance used for tie detection between candidate matchings.
inline constexpr double kTieTolerance = 1e-9;

/// Exact minimum-weight admissible matching (pairs and boundary matches).
///
/// Runs a maximum-weight perfect matching on a doubled graph: each defect has
/// a virtual partner that carries its boundary weight, and virtual partners
/// pair with each other at zero cost. Among optimal matchings the result is the
/// lexicographically smallest pair set, with the boundary ordered after every
/// defect.
Matching blossom_match(const MatchingInstance &instance);

/// Exhaustive enumeration over all admissible matchings, same tie rule as
/// blossom_match. Throws std::invalid_argument above kBruteForceLimit defects.
inline constexpr size_t kBruteForceLimit = 12;
Matching brute_force_match(const MatchingInstance &instance);

/// Toggle stored shortest paths of every matched pair / boundary match.
BitVec lift_matching(const DefectWeights &weights, const Matching &matching, int n_qubits);

/// Checks fired (ascending) on `graph` by the given bit vector.
std::vector<int> graph_syndrome(const DecodingGraph &graph, std::span<const uint8_t> bits);

/// Minimum-weight perfect matching decoder on one check graph. The result is
/// verified against the defects; a mismatch throws std::logic_error.
BitVec decode_mwpm(const DecodingGraph &graph, std::span<const int> defects, const DefectWeights &weights);
BitVec decode_mwpm(const DecodingGraph &graph, std::span<const int> defects);

}  // namespace qthresh

#endif
