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

#ifndef QTHRESH_BLOSSOM_H
#define QTHRESH_BLOSSOM_H

#include <vector>

namespace qthresh {

struct WeightedEdge {
    int u;
    int v;
    double weight;
};

/// Maximum-weight matching on a general graph by Edmonds' primal-dual blossom
/// algorithm, O(V^3).
///
/// With `max_cardinality` set, the result is a maximum-weight matching among
/// the maximum-cardinality ones. Weights are reals; slacks within `tolerance`
/// of zero are treated as tight. After `solve()`, `reduced_cost(k)` gives the
/// complementary-slackness slack of edge k under the final dual solution. Any
/// optimal matching uses only edges whose reduced cost is zero.
class MaxWeightMatcher {
   public:
    MaxWeightMatcher(int num_vertices, std::vector<WeightedEdge> edges, bool max_cardinality,
                     double tolerance = 1e-9);

    /// Mate of each vertex, or -1 if unmatched.
    std::vector<int> solve();

    double reduced_cost(int edge) const;
    const std::vector<WeightedEdge> &edges() const { return edges_; }

   private:
    double slack(int k) const;
    template <typename F>
    void for_each_leaf(int b, F &&f) const;
    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int nvertex_;
    std::vector<WeightedEdge> edges_;
    bool max_cardinality_;
    double tol_;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

}  // namespace qthresh

#endif
