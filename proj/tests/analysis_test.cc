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

#include <cmath>

#include "gtest/gtest.h"

using namespace qthresh;

namespace {

SweepCurve make_curve(int d, const std::vector<double> &thetas, const std::vector<double> &lers, uint64_t trials = 2000) {
    SweepCurve c;
    c.distance = d;
    c.step = thetas.size() > 1 ? thetas[1] - thetas[0] : 0;
    for (size_t k = 0; k < thetas.size(); ++k) {
        TrialBatchResult p;
        p.distance = d;
        p.theta = thetas[k];
        p.trials = trials;
        p.failures = static_cast<uint64_t>(std::llround(lers[k] * trials));
        p.ler = lers[k];
        c.points.push_back(p);
    }
    return c;
}

std::vector<double> grid(double start, double step, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(std::round((start + k * step) * 1e10) / 1e10);
    return out;
}

// Noiseless collapse data: f(x) = 0.2 + 1.5 x + 2 x^2 with x = (theta - p_c) d^(1/nu).
std::vector<SweepCurve> collapse_data(double p_c, double nu) {
    const auto th = grid(0.04, 0.01, 9);
    std::vector<SweepCurve> curves;
    for (int d : {3, 5, 7}) {
        std::vector<double> ler;
        for (double t : th) {
            const double x = (t - p_c) * std::pow(d, 1 / nu);
            ler.push_back(0.2 + 1.5 * x + 2 * x * x);
        }
        curves.push_back(make_curve(d, th, ler));
    }
    return curves;
}

}  // namespace

TEST(crossing, hand_example) {
    const std::vector<double> th{0.1, 0.2}, a{0.2, 0.4}, b{0.3, 0.35};
    const auto c = crossing(th, a, b);
    EXPECT_EQ(c.method, CrossingMethod::Linearized);
    EXPECT_NEAR(c.theta_c, 1.0 / 6, 1e-15);
}

TEST(crossing, planted_piecewise_linear) {
    const auto th = grid(0.03, 0.01, 10);
    std::vector<double> a, b;
    for (double t : th) {
        a.push_back(0.3 + 2.0 * (t - 0.0715));
        b.push_back(0.3 + 3.5 * (t - 0.0715));
    }
    const auto c = crossing(th, a, b);
    EXPECT_EQ(c.method, CrossingMethod::Linearized);
    EXPECT_LT(std::fabs(c.theta_c - 0.0715), 1e-12);
}

TEST(crossing, zero_plateau_is_grid_exact) {
    const auto th = grid(0.05, 0.05, 12);
    std::vector<double> a(12, 0.0), b(12, 0.0);
    for (int k = 6; k < 12; ++k) {
        a[k] = 0.01 * k;
        b[k] = 0.02 * k;
    }
    const auto c = crossing(th, a, b);
    EXPECT_EQ(c.method, CrossingMethod::GridExact);
    EXPECT_EQ(c.theta_c, 0.05);
    EXPECT_EQ(c.min_abs_delta, 0.0);
}

TEST(crossing, lowest_sign_change_wins) {
    const std::vector<double> th{0.1, 0.2, 0.3, 0.4}, a{0.1, 0.3, 0.1, 0.3}, b{0.2, 0.2, 0.2, 0.2};
    EXPECT_NEAR(crossing(th, a, b).theta_c, 0.15, 1e-15);
}

TEST(crossing, mismatched_grids_rejected) {
    const std::vector<double> th{0.1, 0.2}, a{0.1}, b{0.2, 0.3};
    EXPECT_THROW(crossing(th, a, b), std::invalid_argument);
    const auto c1 = make_curve(3, {0.1, 0.2}, {0.1, 0.2});
    const auto c2 = make_curve(5, {0.1, 0.3}, {0.1, 0.2});
    EXPECT_THROW(crossing(c1, c2), std::invalid_argument);
}

TEST(crossing_median, planted_lines_and_bootstrap) {
    const auto th = grid(0.03, 0.01, 10);
    std::vector<SweepCurve> curves;
    const double slopes[] = {1.0, 2.0, 3.0};
    int k = 0;
    for (int d : {3, 5, 7}) {
        std::vector<double> ler;
        for (double t : th) ler.push_back(0.3 + slopes[k] * (t - 0.0715));
        curves.push_back(make_curve(d, th, ler, 1000000));
        ++k;
    }
    const auto m = crossing_median(curves, 20, 1337);
    ASSERT_TRUE(m.available);
    EXPECT_EQ(m.pairwise.size(), 3u);
    EXPECT_EQ(m.pairwise[0].d_a, 3);
    EXPECT_EQ(m.pairwise[0].d_b, 5);
    EXPECT_NEAR(m.median, 0.0715, 1e-12);
    EXPECT_LE(m.interval_low, m.interval_high);
    EXPECT_NEAR(m.interval_low, 0.0715, 0.003);
    EXPECT_NEAR(m.interval_high, 0.0715, 0.003);
    EXPECT_EQ(m.n_bootstrap_used, 20u);
    const auto again = crossing_median(curves, 20, 1337);
    EXPECT_EQ(again.interval_low, m.interval_low);
    EXPECT_EQ(again.interval_high, m.interval_high);
}

TEST(crossing_median, degenerate_zero_one_curves) {
    const std::vector<double> th{0.063, 0.080};
    std::vector<SweepCurve> curves{make_curve(3, th, {0.0, 1.0}), make_curve(5, th, {1.0, 0.0})};
    const auto m = crossing_median(curves, 50, 9);
    ASSERT_TRUE(m.available);
    EXPECT_NEAR(m.median, 0.0715, 1e-12);
    // 0 and 1 never resample to anything else.
    EXPECT_NEAR(m.interval_low, 0.0715, 1e-12);
    EXPECT_NEAR(m.interval_high, 0.0715, 1e-12);
}

TEST(crossing_median, unavailable_without_sign_change) {
    const auto th = grid(0.05, 0.05, 4);
    std::vector<SweepCurve> curves{make_curve(3, th, {0.1, 0.2, 0.3, 0.4}), make_curve(5, th, {0.2, 0.3, 0.4, 0.5})};
    const auto m = crossing_median(curves, 5, 1);
    EXPECT_FALSE(m.available);
    EXPECT_EQ(m.pairwise[0].method, CrossingMethod::GridExact);
    std::vector<SweepCurve> one{curves[0]};
    EXPECT_THROW(crossing_median(one, 5, 1), std::invalid_argument);
}

TEST(analysis, percentile_type7) {
    EXPECT_EQ(percentile({3, 1, 2}, 0.5), 2.0);
    EXPECT_EQ(percentile({1, 2, 3, 4}, 0.5), 2.5);
    EXPECT_EQ(percentile({1, 2, 3, 4}, 0.0), 1.0);
    EXPECT_EQ(percentile({1, 2, 3, 4}, 1.0), 4.0);
    EXPECT_NEAR(percentile({0, 10}, 0.025), 0.25, 1e-15);
    EXPECT_THROW(percentile({}, 0.5), std::invalid_argument);
}

TEST(analysis, bootstrap_resample_deterministic) {
    const auto th = grid(0.05, 0.05, 3);
    std::vector<SweepCurve> curves{make_curve(3, th, {0.1, 0.2, 0.3}, 500), make_curve(5, th, {0.05, 0.2, 0.4}, 500)};
    const auto a = bootstrap_resample(curves, 1337, 4);
    const auto b = bootstrap_resample(curves, 1337, 4);
    const auto c = bootstrap_resample(curves, 1337, 5);
    EXPECT_EQ(a[0].points, b[0].points);
    EXPECT_NE(a[0].points, c[0].points);
    for (const auto &p : a[1].points) {
        EXPECT_EQ(p.ler, double(p.failures) / p.trials);
    }
}

TEST(collapse, cost_zero_at_truth) {
    const auto curves = collapse_data(0.052, 1.35);
    EXPECT_LT(collapse_cost(curves, 0.052, 1.35), 1e-20);
    EXPECT_GT(collapse_cost(curves, 0.07, 1.35), 1e-8);
}

TEST(collapse, recovers_noiseless_parameters) {
    const auto curves = collapse_data(0.052, 1.35);
    const auto fit = collapse_fit(curves, 0, 1);
    EXPECT_NEAR(fit.p_c, 0.052, 1e-4);
    EXPECT_NEAR(fit.nu, 1.35, 1e-2);
    EXPECT_FALSE(fit.p_c_pinned);
    EXPECT_FALSE(fit.nu_pinned);
    EXPECT_EQ(fit.search_box[0], 0.02);
    EXPECT_EQ(fit.search_box[1], 0.12);
    EXPECT_EQ(fit.interval_low, fit.p_c);
}

TEST(collapse, monotone_ordered_curves_pin) {
    const auto th = grid(0.03, 0.01, 10);
    std::vector<SweepCurve> curves;
    for (int d : {3, 5, 7}) {
        std::vector<double> ler;
        for (double t : th) ler.push_back(0.05 + 2.0 * t + 0.03 * d);
        curves.push_back(make_curve(d, th, ler));
    }
    const auto fit = collapse_fit(curves, 0, 1);
    EXPECT_TRUE(fit.p_c_pinned || fit.nu_pinned);
}

TEST(collapse, interval_contains_estimate) {
    const auto curves = collapse_data(0.052, 1.35);
    const auto fit = collapse_fit(curves, 10, 3);
    EXPECT_LE(fit.interval_low, fit.p_c);
    EXPECT_GE(fit.interval_high, fit.p_c);
}

TEST(collapse, degenerate_inputs) {
    const auto th = grid(0.03, 0.01, 5);
    std::vector<SweepCurve> zeros{make_curve(3, th, std::vector<double>(5, 0.0)), make_curve(5, th, std::vector<double>(5, 0.0))};
    EXPECT_THROW(collapse_fit(zeros, 0, 1), std::invalid_argument);
    std::vector<SweepCurve> single{make_curve(3, th, {0.1, 0.2, 0.3, 0.4, 0.5})};
    EXPECT_THROW(collapse_fit(single, 0, 1), std::invalid_argument);
}
