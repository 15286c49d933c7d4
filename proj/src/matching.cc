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

#include "qthresh/matching.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "qthresh/blossom.h"

namespace qthresh {

void MatchingInstance::validate() const {
    const size_t n = size();
    if (pair.size() != n * n || (!defect_ids.empty() && defect_ids.size() != n)) {
        throw std::invalid_argument("matching instance has inconsistent sizes");
    }
    for (size_t i = 0; i < n; ++i) {
        if (std::isnan(boundary[i]) || boundary[i] < 0) {
            throw std::invalid_argument("boundary weights must be nonnegative");
        }
        for (size_t j = 0; j < n; ++j) {
            const double w = pair_weight(i, j);
            if (i != j && (std::isnan(w) || w < 0 || w != pair_weight(j, i))) {
                throw std::invalid_argument("pair weights must be symmetric and nonnegative");
            }
        }
    }
}

MatchingInstance make_instance(const DefectWeights &weights) {
    const size_t n = weights.size();
    MatchingInstance inst;
    inst.defect_ids = weights.defects;
    inst.pair.assign(n * n, kNoEdge);
    inst.boundary.assign(n, kNoEdge);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            const int w = weights.pair_weight(i, j);
            if (i != j && w != kUnreachable) {
                inst.pair[i * n + j] = w;
            }
        }
        if (weights.boundary_weight(i) != kUnreachable) {
            inst.boundary[i] = weights.boundary_weight(i);
        }
    }
    return inst;
}

std::vector<int> Matching::partners(size_t n) const {
    std::vector<int> out(n, kBoundaryPartner);
    for (auto [i, j] : pairs) {
        out[i] = j;
        out[j] = i;
    }
    return out;
}

namespace {

double option_weight(const MatchingInstance &inst, int i, int partner) {
    return partner == kBoundaryPartner ? inst.boundary[i] : inst.pair_weight(i, partner);
}

Matching from_partners(const MatchingInstance &inst, const std::vector<int> &partner) {
    Matching m;
    for (size_t i = 0; i < partner.size(); ++i) {
        const int p = partner[i];
        if (p == kBoundaryPartner) {
            m.boundary_matched.push_back(static_cast<int>(i));
            m.total_weight += inst.boundary[i];
        } else if (static_cast<int>(i) < p) {
            m.pairs.emplace_back(static_cast<int>(i), p);
            m.total_weight += inst.pair_weight(i, p);
        }
    }
    return m;
}

/// Min-weight admissible matching restricted to `subset` (local indices).
class SubsetSolver {
   public:
    SubsetSolver(const MatchingInstance &inst, std::vector<int> subset) : inst_(inst), subset_(std::move(subset)) {
        const int m = static_cast<int>(subset_.size());
        double shift = 0;
        for (int a = 0; a < m; ++a) {
            const double b = inst_.boundary[subset_[a]];
            if (std::isfinite(b)) {
                shift = std::max(shift, b);
            }
            for (int c = a + 1; c < m; ++c) {
                const double w = inst_.pair_weight(subset_[a], subset_[c]);
                if (std::isfinite(w)) {
                    shift = std::max(shift, w);
                }
            }
        }
        pair_edge_.assign(static_cast<size_t>(m) * m, -1);
        boundary_edge_.assign(m, -1);
        std::vector<WeightedEdge> edges;
        for (int a = 0; a < m; ++a) {
            for (int c = a + 1; c < m; ++c) {
                const double w = inst_.pair_weight(subset_[a], subset_[c]);
                if (std::isfinite(w)) {
                    pair_edge_[a * m + c] = pair_edge_[c * m + a] = static_cast<int>(edges.size());
                    edges.push_back({a, c, shift - w});
                }
            }
            const double b = inst_.boundary[subset_[a]];
            if (std::isfinite(b)) {
                boundary_edge_[a] = static_cast<int>(edges.size());
                edges.push_back({a, m + a, shift - b});
            }
        }
        for (int a = 0; a < m; ++a) {
            for (int c = a + 1; c < m; ++c) {
                edges.push_back({m + a, m + c, shift});
            }
        }
        matcher_.emplace(2 * m, std::move(edges), true, kTieTolerance);
    }

    /// Writes partners (in instance-local ids) for the subset and returns the weight.
    double solve(std::vector<int> &partner) {
        const int m = static_cast<int>(subset_.size());
        if (m == 0) {
            return 0;
        }
        const auto mate = matcher_->solve();
        double total = 0;
        for (int a = 0; a < m; ++a) {
            const int b = mate[a];
            if (b < 0) {
                throw std::runtime_error("matching instance admits no perfect matching");
            }
            const int i = subset_[a];
            if (b < m) {
                partner[i] = subset_[b];
                if (a < b) {
                    total += inst_.pair_weight(i, subset_[b]);
                }
            } else {
                partner[i] = kBoundaryPartner;
                total += inst_.boundary[i];
            }
        }
        return total;
    }

    /// True if the option can appear in some optimal matching of the subset
    /// problem (zero reduced cost under the final duals). Positions, not ids.
    bool tight(int a, int c_or_boundary) const {
        const int m = static_cast<int>(subset_.size());
        const int k = c_or_boundary == kBoundaryPartner ? boundary_edge_[a] : pair_edge_[a * m + c_or_boundary];
        return k >= 0 && matcher_->reduced_cost(k) <= kTightTolerance;
    }

   private:
    static constexpr double kTightTolerance = 1e-6;

    const MatchingInstance &inst_;
    std::vector<int> subset_;
    std::vector<int> pair_edge_;
    std::vector<int> boundary_edge_;
    std::optional<MaxWeightMatcher> matcher_;
};

}  // namespace

Matching blossom_match(const MatchingInstance &instance) {
    instance.validate();
    const int n = static_cast<int>(instance.size());
    if (n == 0) {
        return {};
    }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) {
        all[i] = i;
    }
    std::vector<int> partner(n, kBoundaryPartner);
    SubsetSolver full(instance, all);
    const double optimum = full.solve(partner);

    // Lexicographic canonicalisation: walk defects in ascending order and try
    // every earlier option that is tight under the optimal duals. An option is
    // accepted if the remaining defects can still complete an optimum.
    std::vector<bool> fixed(n, false);
    double fixed_weight = 0;
    for (int i = 0; i < n; ++i) {
        if (fixed[i]) {
            continue;
        }
        std::vector<int> options;
        for (int j = i + 1; j < n; ++j) {
            if (!fixed[j]) {
                options.push_back(j);
            }
        }
        options.push_back(kBoundaryPartner);
        for (int option : options) {
            if (option == partner[i]) {
                break;
            }
            if (!full.tight(i, option)) {
                continue;
            }
            std::vector<int> rest;
            for (int j = i + 1; j < n; ++j) {
                if (!fixed[j] && j != option) {
                    rest.push_back(j);
                }
            }
            std::vector<int> trial = partner;
            SubsetSolver sub(instance, rest);
            const double rest_weight = sub.solve(trial);
            if (fixed_weight + option_weight(instance, i, option) + rest_weight <= optimum + kTieTolerance) {
                trial[i] = option;
                if (option != kBoundaryPartner) {
                    trial[option] = i;
                }
                partner = std::move(trial);
                break;
            }
        }
        fixed[i] = true;
        fixed_weight += option_weight(instance, i, partner[i]);
        if (partner[i] != kBoundaryPartner) {
            fixed[partner[i]] = true;
        }
    }
    return from_partners(instance, partner);
}

Matching brute_force_match(const MatchingInstance &instance) {
    instance.validate();
    const size_t n = instance.size();
    if (n > kBruteForceLimit) {
        throw std::invalid_argument("brute force matching limited to " + std::to_string(kBruteForceLimit) +
                                    " defects, got " + std::to_string(n));
    }
    std::vector<int> partner(n, -2);
    std::vector<int> best;
    double best_weight = kNoEdge;

    // Options are visited in lexicographic order (boundary last), so the first
    // optimum found is the canonical one.
    std::function<void(double)> recurse = [&](double acc) {
        size_t i = 0;
        while (i < n && partner[i] != -2) {
            ++i;
        }
        if (i == n) {
            if (acc < best_weight - kTieTolerance) {
                best_weight = acc;
                best = partner;
            }
            return;
        }
        for (size_t j = i + 1; j < n; ++j) {
            const double w = instance.pair_weight(i, j);
            if (partner[j] != -2 || !std::isfinite(w)) {
                continue;
            }
            partner[i] = static_cast<int>(j);
            partner[j] = static_cast<int>(i);
            recurse(acc + w);
            partner[i] = partner[j] = -2;
        }
        if (std::isfinite(instance.boundary[i])) {
            partner[i] = kBoundaryPartner;
            recurse(acc + instance.boundary[i]);
            partner[i] = -2;
        }
    };
    recurse(0.0);
    if (best.empty() && n > 0) {
        throw std::runtime_error("matching instance admits no admissible matching");
    }
    return from_partners(instance, best);
}

BitVec lift_matching(const DefectWeights &weights, const Matching &matching, int n_qubits) {
    BitVec correction(n_qubits, 0);
    for (auto [i, j] : matching.pairs) {
        for (int q : weights.path(i, j)) {
            correction[q] ^= 1;
        }
    }
    for (int i : matching.boundary_matched) {
        for (int q : weights.boundary_path(i)) {
            correction[q] ^= 1;
        }
    }
    return correction;
}

std::vector<int> graph_syndrome(const DecodingGraph &graph, std::span<const uint8_t> bits) {
    std::vector<uint8_t> parity(graph.num_checks, 0);
    for (const auto &e : graph.edges) {
        if (bits[e.qubit]) {
            parity[e.u] ^= 1;
            if (e.v != graph.boundary()) {
                parity[e.v] ^= 1;
            }
        }
    }
    std::vector<int> fired;
    for (int k = 0; k < graph.num_checks; ++k) {
        if (parity[k]) {
            fired.push_back(k);
        }
    }
    return fired;
}

BitVec decode_mwpm(const DecodingGraph &graph, std::span<const int> defects, const DefectWeights &weights) {
    const auto matching = blossom_match(make_instance(weights));
    auto correction = lift_matching(weights, matching, static_cast<int>(graph.edges.size()));
    std::vector<int> expected(defects.begin(), defects.end());
    std::sort(expected.begin(), expected.end());
    if (graph_syndrome(graph, correction) != expected) {
        throw std::logic_error("MWPM correction does not reproduce the syndrome");
    }
    return correction;
}

BitVec decode_mwpm(const DecodingGraph &graph, std::span<const int> defects) {
    return decode_mwpm(graph, defects, pairwise_weights(graph, defects));
}

}  // namespace qthresh
