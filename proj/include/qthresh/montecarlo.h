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

#ifndef QTHRESH_MONTECARLO_H
#define QTHRESH_MONTECARLO_H

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qthresh/neural.h"
#include "qthresh/noise.h"
#include "qthresh/rng.h"

namespace qthresh {

enum class DecoderKind : uint8_t { Mwpm, UnionFind, Neural };

std::string_view to_string(DecoderKind decoder);
DecoderKind parse_decoder(std::string_view text);

/// One (decoder, d, theta) operating point.
struct TrialBatchResult {
    NoiseMode mode = NoiseMode::Pauli;
    DecoderKind decoder = DecoderKind::Mwpm;
    int distance = 0;
    double theta = 0;
    uint64_t seed = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double ler = 0;
    double ci_low = 0;
    double ci_high = 0;
    uint64_t decoder_failures = 0;
    double decoder_fail_rate = 0;
    double mean_defects = 0;    // both check types
    double mean_defects_x = 0;  // Z-checks fired by X faults
    double mean_defects_z = 0;  // X-checks fired by Z faults
    double mean_correction_weight = 0;
    uint64_t non_finite_guidance = 0;

    bool operator==(const TrialBatchResult &other) const = default;
};

/// Normal-approximation 95% interval, clamped to [0, 1].
std::pair<double, double> wald_interval(uint64_t failures, uint64_t trials);

struct RunOptions {
    unsigned workers = 1;
    const GuidanceModel *model = nullptr;  // required for DecoderKind::Neural
};

/// Algorithm: for each trial t in [0, T), seed an Rng with seed_for(s0, d,
/// theta, t), sample the error, decode the X and Z graphs independently and
/// score the residual. Results do not depend on `options.workers`.
TrialBatchResult run_point(DecoderKind decoder, NoiseMode mode, int distance, double theta, uint64_t trials,
                           uint64_t base_seed, const RunOptions &options = {});

struct SweepGrid {
    double start = 0;
    double step = 0;
    size_t count = 0;

    /// Count of points start + k * step not exceeding stop (with 1e-9 slack).
    static SweepGrid from_range(double start, double stop, double step);
    /// theta_k = start + k * step rounded to 10 decimals.
    std::vector<double> values() const;
    void validate() const;
};

struct SweepCurve {
    NoiseMode mode = NoiseMode::Pauli;
    DecoderKind decoder = DecoderKind::Mwpm;
    int distance = 0;
    double step = 0;
    std::vector<TrialBatchResult> points;

    std::vector<double> thetas() const;
    std::vector<double> lers() const;
};

struct MatrixConfig {
    NoiseMode mode = NoiseMode::Pauli;
    std::vector<DecoderKind> decoders;
    std::vector<int> distances;
    SweepGrid grid;
    uint64_t trials = 0;
    uint64_t seed = 1337;
};

/// One curve per (decoder, distance), in decoder-then-distance order.
std::vector<SweepCurve> run_matrix(const MatrixConfig &config, const RunOptions &options = {});

struct CurveSummary {
    NoiseMode mode = NoiseMode::Pauli;
    DecoderKind decoder = DecoderKind::Mwpm;
    int distance = 0;
    size_t n_points = 0;
    double mean_ler = 0;
    double auc_proxy = 0;
    double max_decoder_fail_rate = 0;

    bool operator==(const CurveSummary &other) const = default;
};

/// Mean LER, trapezoidal area over the grid and worst decoder-failure rate.
CurveSummary summarize(const SweepCurve &curve);

}  // namespace qthresh

#endif
