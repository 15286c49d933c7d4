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

#include "qthresh/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "qthresh/rng.h"

namespace qthresh {

std::string_view to_string(CrossingMethod method) {
    return method == CrossingMethod::Linearized ? "linearized" : "grid-exact";
}

CrossingEstimate crossing(std::span<const double> thetas, std::span<const double> ler_a, std::span<const double> ler_b) {
    const size_t n = thetas.size();
    if (ler_a.size() != n || ler_b.size() != n) {
        throw std::invalid_argument("crossing: curves are not on the same grid");
    }
    if (n < 2) {
        throw std::invalid_argument("crossing: need at least 2 grid points");
    }
    std::vector<double> delta(n);
    for (size_t k = 0; k < n; ++k) {
        delta[k] = ler_a[k] - ler_b[k];
    }
    CrossingEstimate est;
    est.min_abs_delta = std::fabs(delta[0]);
    size_t best = 0;
    for (size_t k = 1; k < n; ++k) {
        if (std::fabs(delta[k]) < est.min_abs_delta) {
            est.min_abs_delta = std::fabs(delta[k]);
            best = k;
        }
    }
    for (size_t k = 0; k + 1 < n; ++k) {
        if (delta[k] * delta[k + 1] < 0) {
            est.method = CrossingMethod::Linearized;
            est.theta_c = thetas[k] - delta[k] * (thetas[k + 1] - thetas[k]) / (delta[k + 1] - delta[k]);
            return est;
        }
    }
    est.method = CrossingMethod::GridExact;
    est.theta_c = thetas[best];
    return est;
}

namespace {

void require_same_grid(const SweepCurve &a, const SweepCurve &b) {
    if (a.points.size() != b.points.size()) {
        throw std::invalid_argument("curves are not on the same grid");
    }
    for (size_t k = 0; k < a.points.size(); ++k) {
        if (a.points[k].theta != b.points[k].theta) {
            throw std::invalid_argument("curves are not on the same grid");
        }
    }
}

std::vector<const SweepCurve *> by_distance(std::span<const SweepCurve> curves) {
    std::vector<const SweepCurve *> sorted;
    std::set<int> distances;
    for (const auto &c : curves) {
        sorted.push_back(&c);
        distances.insert(c.distance);
        require_same_grid(curves[0], c);
    }
    if (distances.size() < 2 || distances.size() != curves.size()) {
        throw std::invalid_argument("need at least two curves with distinct distances");
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepCurve *x, const SweepCurve *y) { return x->distance < y->distance; });
    return sorted;
}

std::vector<CrossingEstimate> all_pairs(std::span<const SweepCurve> curves) {
    const auto sorted = by_distance(curves);
    std::vector<CrossingEstimate> out;
    for (size_t i = 0; i < sorted.size(); ++i) {
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            out.push_back(crossing(*sorted[i], *sorted[j]));
        }
    }
    return out;
}

bool linearized_median(const std::vector<CrossingEstimate> &pairs, double &median) {
    std::vector<double> roots;
    for (const auto &c : pairs) {
        if (c.method == CrossingMethod::Linearized) {
            roots.push_back(c.theta_c);
        }
    }
    if (roots.empty()) {
        return false;
    }
    median = percentile(std::move(roots), 0.5);
    return true;
}

}  // namespace

CrossingEstimate crossing(const SweepCurve &a, const SweepCurve &b) {
    require_same_grid(a, b);
    auto est = crossing(a.thetas(), a.lers(), b.lers());
    est.d_a = a.distance;
    est.d_b = b.distance;
    return est;
}

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) {
        throw std::invalid_argument("percentile of an empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double h = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<size_t>(std::floor(h));
    if (lo + 1 >= samples.size()) {
        return samples.back();
    }
    return samples[lo] + (h - static_cast<double>(lo)) * (samples[lo + 1] - samples[lo]);
}

std::vector<SweepCurve> bootstrap_resample(std::span<const SweepCurve> curves, uint64_t base_seed, uint64_t index) {
    Rng rng(seed_for(base_seed, 0, 0.0, index));
    std::vector<SweepCurve> out(curves.begin(), curves.end());
    for (auto &curve : out) {
        for (auto &p : curve.points) {
            p.failures = rng.binomial(p.trials, p.ler);
            p.ler = static_cast<double>(p.failures) / static_cast<double>(p.trials);
        }
    }
    return out;
}

CrossingMedian crossing_median(std::span<const SweepCurve> curves, size_t n_bootstrap, uint64_t base_seed) {
    if (n_bootstrap == 0) {
        throw std::invalid_argument("bootstrap count must be >= 1");
    }
    CrossingMedian out;
    out.pairwise = all_pairs(curves);
    out.n_bootstrap = n_bootstrap;
    out.available = linearized_median(out.pairwise, out.median);
    if (!out.available) {
        return out;
    }
    std::vector<double> medians;
    for (size_t r = 0; r < n_bootstrap; ++r) {
        const auto resampled = bootstrap_resample(curves, base_seed, r);
        double m = 0;
        if (linearized_median(all_pairs(resampled), m)) {
            medians.push_back(m);
        }
    }
    out.n_bootstrap_used = medians.size();
    if (!medians.empty()) {
        out.interval_low = percentile(medians, 0.025);
        out.interval_high = percentile(medians, 0.975);
    } else {
        out.interval_low = out.interval_high = out.median;
    }
    return out;
}

double collapse_cost(std::span<const SweepCurve> curves, double p_c, double nu) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &c : curves) {
        const double scale = std::pow(static_cast<double>(c.distance), 1.0 / nu);
        for (const auto &p : c.points) {
            xs.push_back((p.theta - p_c) * scale);
            ys.push_back(p.ler);
        }
    }
    const size_t n = xs.size();
    // Standardise x; the quadratic fit's residuals are invariant to it.
    double mean = 0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(n);
    double var = 0;
    for (double x : xs) {
        var += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(var / static_cast<double>(n));
    if (!(sd > 0)) {
        return std::numeric_limits<double>::infinity();
    }
    double a[3][4] = {};
    for (size_t i = 0; i < n; ++i) {
        const double u = (xs[i] - mean) / sd;
        const double basis[3] = {1.0, u, u * u};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                a[r][c] += basis[r] * basis[c];
            }
            a[r][3] += basis[r] * ys[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(a[col], a[pivot]);
        if (std::fabs(a[col][col]) < 1e-12) {
            return std::numeric_limits<double>::infinity();
        }
        for (int r = 0; r < 3; ++r) {
            if (r != col) {
                const double f = a[r][col] / a[col][col];
                for (int c = col; c < 4; ++c) {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    const double coef[3] = {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
    double sse = 0;
    for (size_t i = 0; i < n; ++i) {
        const double u = (xs[i] - mean) / sd;
        const double r = ys[i] - (coef[0] + coef[1] * u + coef[2] * u * u);
        sse += r * r;
    }
    return sse / static_cast<double>(n);
}

namespace {

constexpr double kNuMin = 0.5;
constexpr double kNuMax = 2.0;
constexpr int kScanPc = 81;
constexpr int kScanNu = 31;
constexpr double kPinnedFraction = 1e-3;

struct Box {
    double pc_lo;
    double pc_hi;
    double nu_lo;
    double nu_hi;

    std::array<double, 2> clamp(std::array<double, 2> v) const {
        return {std::clamp(v[0], pc_lo, pc_hi), std::clamp(v[1], nu_lo, nu_hi)};
    }
};

struct FitPoint {
    double p_c;
    double nu;
    double cost;
};

FitPoint minimise(std::span<const SweepCurve> curves, const Box &box) {
    auto cost_at = [&](std::array<double, 2> v) {
        v = box.clamp(v);
        return collapse_cost(curves, v[0], v[1]);
    };
    const double dpc = (box.pc_hi - box.pc_lo) / (kScanPc - 1);
    const double dnu = (box.nu_hi - box.nu_lo) / (kScanNu - 1);
    std::array<double, 2> best{box.pc_lo, box.nu_lo};
    double best_cost = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPc; ++i) {
        for (int j = 0; j < kScanNu; ++j) {
            const std::array<double, 2> v{box.pc_lo + i * dpc, box.nu_lo + j * dnu};
            const double c = collapse_cost(curves, v[0], v[1]);
            if (c < best_cost) {
                best_cost = c;
                best = v;
            }
        }
    }

    // Nelder-Mead refinement; vertices may leave the box but are evaluated clamped.
    std::array<std::array<double, 2>, 3> s{best, std::array<double, 2>{best[0] + dpc, best[1]},
                                           std::array<double, 2>{best[0], best[1] + dnu}};
    std::array<double, 3> f{best_cost, cost_at(s[1]), cost_at(s[2])};
    for (int iter = 0; iter < 400; ++iter) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        const auto lo = idx[0];
        const auto mid = idx[1];
        const auto hi = idx[2];
        const double size = std::max(std::fabs(s[hi][0] - s[lo][0]) / (box.pc_hi - box.pc_lo),
                                     std::fabs(s[hi][1] - s[lo][1]) / (box.nu_hi - box.nu_lo));
        if (size < 1e-9) {
            break;
        }
        const std::array<double, 2> centroid{(s[lo][0] + s[mid][0]) / 2, (s[lo][1] + s[mid][1]) / 2};
        auto along = [&](double t) {
            return std::array<double, 2>{centroid[0] + t * (s[hi][0] - centroid[0]),
                                         centroid[1] + t * (s[hi][1] - centroid[1])};
        };
        const auto xr = along(-1.0);
        const double fr = cost_at(xr);
        if (fr < f[lo]) {
            const auto xe = along(-2.0);
            const double fe = cost_at(xe);
            if (fe < fr) {
                s[hi] = xe;
                f[hi] = fe;
            } else {
                s[hi] = xr;
                f[hi] = fr;
            }
        } else if (fr < f[mid]) {
            s[hi] = xr;
            f[hi] = fr;
        } else {
            const auto xc = fr < f[hi] ? along(-0.5) : along(0.5);
            const double fc = cost_at(xc);
            if (fc < std::min(fr, f[hi])) {
                s[hi] = xc;
                f[hi] = fc;
            } else {
                for (int k : {mid, hi}) {
                    s[k] = {s[lo][0] + 0.5 * (s[k][0] - s[lo][0]), s[lo][1] + 0.5 * (s[k][1] - s[lo][1])};
                    f[k] = cost_at(s[k]);
                }
            }
        }
    }
    const int arg = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
    const auto v = box.clamp(s[arg]);
    return {v[0], v[1], f[arg]};
}

}  // namespace

CollapseFit collapse_fit(std::span<const SweepCurve> curves, size_t n_bootstrap, uint64_t base_seed) {
    by_distance(curves);
    bool any_nonzero = false;
    for (const auto &c : curves) {
        for (const auto &p : c.points) {
            any_nonzero |= p.ler != 0;
        }
    }
    if (!any_nonzero) {
        throw std::invalid_argument("collapse fit on all-zero curves is degenerate");
    }
    const auto thetas = curves[0].thetas();
    const auto [tmin, tmax] = std::minmax_element(thetas.begin(), thetas.end());
    const Box box{0.5 * *tmin, *tmax, kNuMin, kNuMax};

    const auto best = minimise(curves, box);
    CollapseFit fit;
    fit.p_c = best.p_c;
    fit.nu = best.nu;
    fit.cost = best.cost;
    fit.search_box = {box.pc_lo, box.pc_hi, box.nu_lo, box.nu_hi};
    const double pc_tol = kPinnedFraction * (box.pc_hi - box.pc_lo);
    const double nu_tol = kPinnedFraction * (box.nu_hi - box.nu_lo);
    fit.p_c_pinned = fit.p_c - box.pc_lo <= pc_tol || box.pc_hi - fit.p_c <= pc_tol;
    fit.nu_pinned = fit.nu - box.nu_lo <= nu_tol || box.nu_hi - fit.nu <= nu_tol;

    fit.n_bootstrap = n_bootstrap;
    fit.interval_low = fit.interval_high = fit.p_c;
    if (n_bootstrap > 0) {
        std::vector<double> estimates;
        for (size_t r = 0; r < n_bootstrap; ++r) {
            estimates.push_back(minimise(bootstrap_resample(curves, base_seed, r), box).p_c);
        }
        fit.interval_low = std::min(fit.p_c, percentile(estimates, 0.025));
        fit.interval_high = std::max(fit.p_c, percentile(estimates, 0.975));
    }
    return fit;
}

}  // namespace qthresh
