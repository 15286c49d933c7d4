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

#include "qthresh/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "qthresh/matching.h"
#include "qthresh/union_find.h"

namespace qthresh {

std::string_view to_string(DecoderKind decoder) {
    switch (decoder) {
        case DecoderKind::Mwpm:
            return "mwpm";
        case DecoderKind::UnionFind:
            return "unionfind";
        case DecoderKind::Neural:
            return "neural";
    }
    return "unknown";
}

DecoderKind parse_decoder(std::string_view text) {
    if (text == "mwpm") {
        return DecoderKind::Mwpm;
    }
    if (text == "unionfind" || text == "uf") {
        return DecoderKind::UnionFind;
    }
    if (text == "neural") {
        return DecoderKind::Neural;
    }
    throw std::invalid_argument("unknown decoder '" + std::string(text) + "'");
}

std::pair<double, double> wald_interval(uint64_t failures, uint64_t trials) {
    const double p = static_cast<double>(failures) / static_cast<double>(trials);
    const double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

namespace {

struct Tally {
    uint64_t failures = 0;
    uint64_t decoder_failures = 0;
    uint64_t defects_x = 0;
    uint64_t defects_z = 0;
    uint64_t correction_weight = 0;
    uint64_t non_finite = 0;

    void add(const Tally &o) {
        failures += o.failures;
        decoder_failures += o.decoder_failures;
        defects_x += o.defects_x;
        defects_z += o.defects_z;
        correction_weight += o.correction_weight;
        non_finite += o.non_finite;
    }
};

struct PointContext {
    DecoderKind decoder;
    NoiseConfig noise;
    uint64_t base_seed;
    const SurfaceCodeLayout &layout;
    const DecodingGraph &x_graph;
    const DecodingGraph &z_graph;
    const GuidanceModel *model;
};

/// Decode one graph; returns false on a (neural) decoder failure.
bool decode_into(const PointContext &ctx, const DecodingGraph &graph, std::span<const int> defects, BitVec &out,
                 Tally &tally) {
    switch (ctx.decoder) {
        case DecoderKind::Mwpm:
            out = decode_mwpm(graph, defects);
            return true;
        case DecoderKind::UnionFind:
            out = decode_unionfind(graph, defects);
            return true;
        case DecoderKind::Neural: {
            auto res = decode_neural_mwpm(graph, defects, pairwise_weights(graph, defects), *ctx.model);
            out = std::move(res.correction);
            tally.non_finite += static_cast<uint64_t>(res.non_finite);
            return !res.decoder_failure;
        }
    }
    throw std::invalid_argument("unknown decoder");
}

Tally run_trials(const PointContext &ctx, uint64_t begin, uint64_t end) {
    Tally tally;
    BitVec x_corr;
    BitVec z_corr;
    for (uint64_t t = begin; t < end; ++t) {
        Rng rng(seed_for(ctx.base_seed, static_cast<uint64_t>(ctx.layout.distance), ctx.noise.theta, t));
        auto residual = sample_error(ctx.layout, ctx.noise, rng);
        const auto syn = syndrome(ctx.layout, residual);
        tally.defects_x += syn.z_defects.size();
        tally.defects_z += syn.x_defects.size();
        const bool ok_x = decode_into(ctx, ctx.x_graph, syn.z_defects, x_corr, tally);
        const bool ok_z = decode_into(ctx, ctx.z_graph, syn.x_defects, z_corr, tally);
        for (size_t q = 0; q < residual.x_bits.size(); ++q) {
            tally.correction_weight += x_corr[q] + z_corr[q];
            residual.x_bits[q] ^= x_corr[q];
            residual.z_bits[q] ^= z_corr[q];
        }
        if (!ok_x || !ok_z) {
            // A correction that misses the syndrome cannot be scored as a success.
            ++tally.decoder_failures;
            ++tally.failures;
        } else if (is_logical_failure(ctx.layout, residual)) {
            ++tally.failures;
        }
    }
    return tally;
}

}  // namespace

TrialBatchResult run_point(DecoderKind decoder, NoiseMode mode, int distance, double theta, uint64_t trials,
                           uint64_t base_seed, const RunOptions &options) {
    if (trials == 0) {
        throw std::invalid_argument("trial count must be >= 1");
    }
    const NoiseConfig noise{mode, theta};
    noise.validate();
    if (decoder == DecoderKind::Neural) {
        if (options.model == nullptr) {
            throw std::invalid_argument("neural decoder requires a guidance model");
        }
        options.model->validate();
    }
    const auto layout = build_lattice(distance);
    const auto x_graph = decoding_graph(layout, PauliType::X);
    const auto z_graph = decoding_graph(layout, PauliType::Z);
    const PointContext ctx{decoder, noise, base_seed, layout, x_graph, z_graph, options.model};

    const uint64_t workers = std::clamp<uint64_t>(options.workers, 1, trials);
    Tally total;
    if (workers == 1) {
        total = run_trials(ctx, 0, trials);
    } else {
        std::vector<Tally> parts(workers);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (uint64_t w = 0; w < workers; ++w) {
            const uint64_t begin = trials * w / workers;
            const uint64_t end = trials * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] {
                try {
                    parts[w] = run_trials(ctx, begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : threads) {
            t.join();
        }
        for (uint64_t w = 0; w < workers; ++w) {
            if (errors[w]) {
                std::rethrow_exception(errors[w]);
            }
            total.add(parts[w]);
        }
    }

    TrialBatchResult r;
    r.mode = mode;
    r.decoder = decoder;
    r.distance = distance;
    r.theta = theta;
    r.seed = base_seed;
    r.trials = trials;
    r.failures = total.failures;
    const double n = static_cast<double>(trials);
    r.ler = static_cast<double>(total.failures) / n;
    std::tie(r.ci_low, r.ci_high) = wald_interval(total.failures, trials);
    r.decoder_failures = total.decoder_failures;
    r.decoder_fail_rate = static_cast<double>(total.decoder_failures) / n;
    r.mean_defects_x = static_cast<double>(total.defects_x) / n;
    r.mean_defects_z = static_cast<double>(total.defects_z) / n;
    r.mean_defects = static_cast<double>(total.defects_x + total.defects_z) / n;
    r.mean_correction_weight = static_cast<double>(total.correction_weight) / n;
    r.non_finite_guidance = total.non_finite;
    return r;
}

SweepGrid SweepGrid::from_range(double start, double stop, double step) {
    if (!(step > 0)) {
        throw std::invalid_argument("sweep step must be > 0");
    }
    if (!(stop >= start)) {
        throw std::invalid_argument("sweep stop must be >= start");
    }
    const auto count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    return SweepGrid{start, step, count};
}

void SweepGrid::validate() const {
    if (!(step > 0)) {
        throw std::invalid_argument("sweep step must be > 0");
    }
    if (count == 0) {
        throw std::invalid_argument("sweep grid is empty");
    }
}

std::vector<double> SweepGrid::values() const {
    validate();
    std::vector<double> out(count);
    for (size_t k = 0; k < count; ++k) {
        out[k] = std::round((start + static_cast<double>(k) * step) * 1e10) / 1e10;
    }
    return out;
}

std::vector<double> SweepCurve::thetas() const {
    std::vector<double> out;
    for (const auto &p : points) {
        out.push_back(p.theta);
    }
    return out;
}

std::vector<double> SweepCurve::lers() const {
    std::vector<double> out;
    for (const auto &p : points) {
        out.push_back(p.ler);
    }
    return out;
}

std::vector<SweepCurve> run_matrix(const MatrixConfig &config, const RunOptions &options) {
    if (config.decoders.empty()) {
        throw std::invalid_argument("decoder list is empty");
    }
    if (config.distances.empty()) {
        throw std::invalid_argument("distance list is empty");
    }
    const auto thetas = config.grid.values();
    std::vector<SweepCurve> curves;
    for (DecoderKind decoder : config.decoders) {
        for (int d : config.distances) {
            SweepCurve curve{config.mode, decoder, d, config.grid.step, {}};
            for (double theta : thetas) {
                curve.points.push_back(run_point(decoder, config.mode, d, theta, config.trials, config.seed, options));
            }
            curves.push_back(std::move(curve));
        }
    }
    return curves;
}

CurveSummary summarize(const SweepCurve &curve) {
    if (curve.points.size() < 2) {
        throw std::invalid_argument("curve summary needs at least 2 points");
    }
    CurveSummary s;
    s.mode = curve.mode;
    s.decoder = curve.decoder;
    s.distance = curve.distance;
    s.n_points = curve.points.size();
    double sum = 0;
    for (const auto &p : curve.points) {
        sum += p.ler;
        s.max_decoder_fail_rate = std::max(s.max_decoder_fail_rate, p.decoder_fail_rate);
    }
    s.mean_ler = sum / static_cast<double>(s.n_points);
    s.auc_proxy = curve.step * (sum - 0.5 * (curve.points.front().ler + curve.points.back().ler));
    return s;
}

}  // namespace qthresh
