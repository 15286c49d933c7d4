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

#ifndef QTHRESH_ANALYSIS_H
#define QTHRESH_ANALYSIS_H

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qthresh/montecarlo.h"

namespace qthresh {

enum class CrossingMethod : uint8_t { Linearized, GridExact };
std::string_view to_string(CrossingMethod method);

struct CrossingEstimate {
    int d_a = 0;
    int d_b = 0;
    double theta_c = 0;
    CrossingMethod method = CrossingMethod::GridExact;
    double min_abs_delta = 0;
};

/// Crossing of two LER curves on one grid. The lowest sign change of
/// delta_k = a_k - b_k gives the linear interpolation root; without a sign
/// change the grid point minimising |delta_k| (lowest on ties) is returned.
CrossingEstimate crossing(std::span<const double> thetas, std::span<const double> ler_a, std::span<const double> ler_b);
CrossingEstimate crossing(const SweepCurve &a, const SweepCurve &b);

struct CrossingMedian {
    bool available = false;  // false when no pair has a sign change
    double median = 0;
    double interval_low = 0;
    double interval_high = 0;
    std::vector<CrossingEstimate> pairwise;  // every distance pair, ascending
    size_t n_bootstrap = 0;
    size_t n_bootstrap_used = 0;  // resamples with at least one crossing
};

/// Median of the linearized pairwise crossings, with a percentile interval
/// from binomial resampling of every point.
CrossingMedian crossing_median(std::span<const SweepCurve> curves, size_t n_bootstrap, uint64_t base_seed);

struct CollapseFit {
    double p_c = 0;
    double nu = 0;
    double cost = 0;
    double interval_low = 0;
    double interval_high = 0;
    size_t n_bootstrap = 0;
    bool p_c_pinned = false;
    bool nu_pinned = false;
    std::array<double, 4> search_box{};  // p_c_min, p_c_max, nu_min, nu_max
};

/// Collapse cost for (p_c, nu): mean squared residual of one least-squares
/// quadratic in x = (theta - p_c) * d^(1/nu) through every point.
double collapse_cost(std::span<const SweepCurve> curves, double p_c, double nu);

/// Minimise the collapse cost over p_c in [grid_min / 2, grid_max] and
/// nu in [0.5, 2] by grid scan then Nelder-Mead. Throws std::invalid_argument
/// for fewer than two distances, mismatched grids, or all-zero curves.
CollapseFit collapse_fit(std::span<const SweepCurve> curves, size_t n_bootstrap, uint64_t base_seed);

/// Linear-interpolation percentile (q in [0, 1]) of unsorted samples.
double percentile(std::vector<double> samples, double q);

/// Binomial redraw of every point's failure count, seeded by resample index.
std::vector<SweepCurve> bootstrap_resample(std::span<const SweepCurve> curves, uint64_t base_seed, uint64_t index);

}  // namespace qthresh

#endif
