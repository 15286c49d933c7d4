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

#include "qthresh/blossom.h"

#include <algorithm>
#include <stdexcept>

// Port of the classic O(V^3) primal-dual formulation (Galil's presentation of
// Edmonds' algorithm). Vertex ids are [0, V); blossom ids are [V, 2V).
// Edge endpoints are numbered p = 2k (edges[k].u) and p = 2k + 1 (edges[k].v).
// Labels: 0 free, 1 S (outer), 2 T (inner); bit 4 marks a breadcrumb.

namespace qthresh {

namespace {

int wrap(int j, int size) {
    return ((j % size) + size) % size;
}

}  // namespace

MaxWeightMatcher::MaxWeightMatcher(int num_vertices, std::vector<WeightedEdge> edges, bool max_cardinality,
                                   double tolerance)
    : nvertex_(num_vertices), edges_(std::move(edges)), max_cardinality_(max_cardinality), tol_(tolerance) {
    for (const auto &e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= nvertex_ || e.v >= nvertex_ || e.u == e.v) {
            throw std::invalid_argument("matcher edge has invalid endpoints");
        }
    }
}

double MaxWeightMatcher::slack(int k) const {
    const auto &e = edges_[k];
    return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
}

template <typename F>
void MaxWeightMatcher::for_each_leaf(int b, F &&f) const {
    if (b < nvertex_) {
        f(b);
        return;
    }
    for (int t : blossomchilds_[b]) {
        for_each_leaf(t, f);
    }
}

void MaxWeightMatcher::assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        for_each_leaf(b, [this](int v) { queue_.push_back(v); });
    } else if (t == 2) {
        const int base = blossombase_[b];
        assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
}

int MaxWeightMatcher::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = blossombase_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            v = endpoint_[labelend_[b]];
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[b] = 1;
    }
    return base;
}

void MaxWeightMatcher::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto &path = blossomchilds_[b];
    auto &endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
        blossomparent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for_each_leaf(b, [&](int leaf) {
        if (label_[inblossom_[leaf]] == 2) {
            queue_.push_back(leaf);
        }
        inblossom_[leaf] = b;
    });

    std::vector<int> bestedgeto(2 * nvertex_, -1);
    auto consider = [&](int kk) {
        int i = edges_[kk].u;
        int j = edges_[kk].v;
        if (inblossom_[j] == b) {
            std::swap(i, j);
        }
        const int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
        }
    };
    for (int sub : path) {
        if (!has_bestedges_[sub]) {
            for_each_leaf(sub, [&](int leaf) {
                for (int p : neighbend_[leaf]) {
                    consider(p / 2);
                }
            });
        } else {
            for (int kk : blossombestedges_[sub]) {
                consider(kk);
            }
        }
        blossombestedges_[sub].clear();
        has_bestedges_[sub] = false;
        bestedge_[sub] = -1;
    }
    auto &best = blossombestedges_[b];
    best.clear();
    for (int kk : bestedgeto) {
        if (kk != -1) {
            best.push_back(kk);
        }
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : best) {
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
            bestedge_[b] = kk;
        }
    }
}

void MaxWeightMatcher::expand_blossom(int b, bool endstage) {
    // Copy: recursive expansion and relabeling may touch blossomchilds_[b].
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
        blossomparent_[s] = -1;
        if (s < nvertex_) {
            inblossom_[s] = s;
        } else if (endstage && dualvar_[s] <= tol_) {
            expand_blossom(s, endstage);
        } else {
            for_each_leaf(s, [&](int leaf) { inblossom_[leaf] = s; });
        }
    }
    if (!endstage && label_[b] == 2) {
        const auto &endps = blossomendps_[b];
        const int size = static_cast<int>(childs.size());
        const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
        int jstep;
        int endptrick;
        if (j & 1) {
            j -= size;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = 0;
            label_[endpoint_[endps[wrap(j - endptrick, size)] ^ endptrick ^ 1]] = 0;
            assign_label(endpoint_[p ^ 1], 2, p);
            allowedge_[endps[wrap(j - endptrick, size)] / 2] = true;
            j += jstep;
            p = endps[wrap(j - endptrick, size)] ^ endptrick;
            allowedge_[p / 2] = true;
            j += jstep;
        }
        int bv = childs[wrap(j, size)];
        label_[endpoint_[p ^ 1]] = label_[bv] = 2;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (childs[wrap(j, size)] != entrychild) {
            bv = childs[wrap(j, size)];
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for_each_leaf(bv, [&](int leaf) {
                if (found == -1 && label_[leaf] != 0) {
                    found = leaf;
                }
            });
            if (found != -1) {
                label_[found] = 0;
                label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
}

void MaxWeightMatcher::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) {
        t = blossomparent_[t];
    }
    if (t >= nvertex_) {
        augment_blossom(t, v);
    }
    auto &childs = blossomchilds_[b];
    auto &endps = blossomendps_[b];
    const int size = static_cast<int>(childs.size());
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
        j -= size;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = childs[wrap(j, size)];
        const int p = endps[wrap(j - endptrick, size)] ^ endptrick;
        if (t >= nvertex_) {
            augment_blossom(t, endpoint_[p]);
        }
        j += jstep;
        t = childs[wrap(j, size)];
        if (t >= nvertex_) {
            augment_blossom(t, endpoint_[p ^ 1]);
        }
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
}

void MaxWeightMatcher::augment_matching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto &start : ends) {
        int s = start[0];
        int p = start[1];
        while (true) {
            const int bs = inblossom_[s];
            if (bs >= nvertex_) {
                augment_blossom(bs, s);
            }
            mate_[s] = p;
            if (labelend_[bs] == -1) {
                break;
            }
            const int t = endpoint_[labelend_[bs]];
            const int bt = inblossom_[t];
            s = endpoint_[labelend_[bt]];
            const int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= nvertex_) {
                augment_blossom(bt, j);
            }
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> MaxWeightMatcher::solve() {
    const int n = nvertex_;
    const int nedge = static_cast<int>(edges_.size());
    if (n == 0) {
        return {};
    }
    double maxweight = 0;
    for (const auto &e : edges_) {
        maxweight = std::max(maxweight, e.weight);
    }
    endpoint_.assign(2 * nedge, 0);
    neighbend_.assign(n, {});
    for (int k = 0; k < nedge; ++k) {
        endpoint_[2 * k] = edges_[k].u;
        endpoint_[2 * k + 1] = edges_[k].v;
        neighbend_[edges_[k].u].push_back(2 * k + 1);
        neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n, -1);
    label_.assign(2 * n, 0);
    labelend_.assign(2 * n, -1);
    inblossom_.resize(n);
    for (int v = 0; v < n; ++v) {
        inblossom_[v] = v;
    }
    blossomparent_.assign(2 * n, -1);
    blossomchilds_.assign(2 * n, {});
    blossombase_.assign(2 * n, -1);
    for (int v = 0; v < n; ++v) {
        blossombase_[v] = v;
    }
    blossomendps_.assign(2 * n, {});
    bestedge_.assign(2 * n, -1);
    blossombestedges_.assign(2 * n, {});
    has_bestedges_.assign(2 * n, false);
    unusedblossoms_.clear();
    for (int b = n; b < 2 * n; ++b) {
        unusedblossoms_.push_back(b);
    }
    dualvar_.assign(2 * n, 0.0);
    for (int v = 0; v < n; ++v) {
        dualvar_[v] = maxweight;
    }
    allowedge_.assign(nedge, false);
    queue_.clear();

    for (int stage = 0; stage < n; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; ++b) {
            blossombestedges_[b].clear();
            has_bestedges_[b] = false;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), false);
        queue_.clear();
        for (int v = 0; v < n; ++v) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                assign_label(v, 1, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                const int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    const int k = p / 2;
                    const int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w]) {
                        continue;
                    }
                    double kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= tol_) {
                            allowedge_[k] = true;
                        }
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            const int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        const int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                            bestedge_[b] = k;
                        }
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                            bestedge_[w] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }

            int deltatype = -1;
            double delta = 0;
            int deltaedge = -1;
            int deltablossom = -1;
            if (!max_cardinality_) {
                deltatype = 1;
                delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
            }
            for (int v = 0; v < n; ++v) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    const double d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n; ++b) {
                if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    const double d = slack(bestedge_[b]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                    (deltatype == -1 || dualvar_[b] < delta)) {
                    delta = dualvar_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                // No further progress possible; only reachable in max-cardinality mode.
                deltatype = 1;
                delta = std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n));
            }

            for (int v = 0; v < n; ++v) {
                if (label_[inblossom_[v]] == 1) {
                    dualvar_[v] -= delta;
                } else if (label_[inblossom_[v]] == 2) {
                    dualvar_[v] += delta;
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == 1) {
                        dualvar_[b] += delta;
                    } else if (label_[b] == 2) {
                        dualvar_[b] -= delta;
                    }
                }
            }

            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = true;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == 0) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = true;
                queue_.push_back(edges_[deltaedge].u);
            } else if (deltatype == 4) {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = n; b < 2 * n; ++b) {
            if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] <= tol_) {
                expand_blossom(b, true);
            }
        }
    }

    std::vector<int> result(n, -1);
    for (int v = 0; v < n; ++v) {
        if (mate_[v] >= 0) {
            result[v] = endpoint_[mate_[v]];
        }
    }
    return result;
}

double MaxWeightMatcher::reduced_cost(int k) const {
    double s = slack(k);
    std::vector<int> ichain{edges_[k].u};
    std::vector<int> jchain{edges_[k].v};
    while (blossomparent_[ichain.back()] != -1) {
        ichain.push_back(blossomparent_[ichain.back()]);
    }
    while (blossomparent_[jchain.back()] != -1) {
        jchain.push_back(blossomparent_[jchain.back()]);
    }
    auto ii = ichain.rbegin();
    auto jj = jchain.rbegin();
    for (; ii != ichain.rend() && jj != jchain.rend() && *ii == *jj; ++ii, ++jj) {
        s += 2 * dualvar_[*ii];
    }
    return s;
}

}  // namespace qthresh
