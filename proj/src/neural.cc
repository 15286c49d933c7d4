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

#include "qthresh/neural.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qthresh/format.h"
#include "qthresh/rng.h"

namespace qthresh {

void GuidanceModel::validate() const {
    if (!(alpha_min > 0 && alpha_min <= 1 && alpha_max >= 1 && std::isfinite(alpha_max))) {
        throw std::invalid_argument("guidance clips must satisfy 0 < alpha_min <= 1 <= alpha_max");
    }
    for (double w : phi) {
        if (!std::isfinite(w)) {
            throw std::invalid_argument("guidance weights must be finite");
        }
    }
}

FeatureVector extract_features(const MatchingInstance &base, size_t i, size_t j) {
    const double bi = base.boundary[i];
    const double bj = base.boundary[j];
    return {1.0, base.pair_weight(i, j), std::min(bi, bj), std::fabs(bi - bj)};
}

FeatureVector extract_boundary_features(const MatchingInstance &base, size_t i) {
    return {1.0, base.boundary[i], base.boundary[i], 0.0};
}

double guidance_factor(const GuidanceModel &model, const FeatureVector &x, bool *non_finite) {
    double raw = 0;
    for (size_t k = 0; k < x.size(); ++k) {
        raw += model.phi[k] * x[k];
    }
    if (!std::isfinite(raw)) {
        if (non_finite != nullptr) {
            *non_finite = true;
        }
        return 1.0;
    }
    return std::clamp(raw, model.alpha_min, model.alpha_max);
}

GuidedInstance guided_weights(const GuidanceModel &model, const MatchingInstance &base) {
    GuidedInstance out{base, 0};
    const size_t n = base.size();
    auto apply = [&](double w, const FeatureVector &x) {
        if (!std::isfinite(w)) {
            return w;
        }
        bool bad = false;
        const double alpha = guidance_factor(model, x, &bad);
        out.non_finite += bad;
        return alpha * w;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double w = apply(base.pair_weight(i, j), extract_features(base, i, j));
            out.instance.pair[i * n + j] = out.instance.pair[j * n + i] = w;
        }
        out.instance.boundary[i] = apply(base.boundary[i], extract_boundary_features(base, i));
    }
    return out;
}

NeuralDecodeResult decode_neural_mwpm(const DecodingGraph &graph, std::span<const int> defects,
                                      const DefectWeights &weights, const GuidanceModel &model) {
    NeuralDecodeResult result;
    const auto base = make_instance(weights);
    auto guided = guided_weights(model, base);
    result.non_finite = guided.non_finite;
    const auto matching = blossom_match(guided.instance);
    result.correction = lift_matching(weights, matching, static_cast<int>(graph.edges.size()));
    std::vector<int> expected(defects.begin(), defects.end());
    std::sort(expected.begin(), expected.end());
    result.decoder_failure = graph_syndrome(graph, result.correction) != expected;
    return result;
}

std::string serialize_model(const GuidanceModel &model) {
    std::ostringstream out;
    out << "neural-guidance v1\n";
    out << "phi:";
    for (double w : model.phi) {
        out << ' ' << format_double(w);
    }
    out << "\nclip: " << format_double(model.alpha_min) << ' ' << format_double(model.alpha_max) << '\n';
    out << "meta: " << to_string(model.mode) << ' ' << format_double(model.theta) << ' ' << model.distance << ' '
        << model.n_samples << ' ' << model.seed << '\n';
    return out.str();
}

namespace {

std::vector<std::string> fields_after(const std::string &line, const std::string &key, size_t count) {
    if (line.rfind(key, 0) != 0) {
        throw std::invalid_argument("model file: expected '" + key + "' line");
    }
    std::istringstream in(line.substr(key.size()));
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    if (tokens.size() != count) {
        throw std::invalid_argument("model file: '" + key + "' needs " + std::to_string(count) + " fields");
    }
    return tokens;
}

}  // namespace

GuidanceModel parse_model(const std::string &text) {
    std::istringstream in(text);
    std::string header, phi_line, clip_line, meta_line;
    if (!std::getline(in, header) || header != "neural-guidance v1") {
        throw std::invalid_argument("model file: missing 'neural-guidance v1' header");
    }
    std::getline(in, phi_line);
    std::getline(in, clip_line);
    std::getline(in, meta_line);
    GuidanceModel model;
    const auto phi = fields_after(phi_line, "phi:", 4);
    for (size_t k = 0; k < 4; ++k) {
        model.phi[k] = parse_double(phi[k]);
    }
    const auto clip = fields_after(clip_line, "clip:", 2);
    model.alpha_min = parse_double(clip[0]);
    model.alpha_max = parse_double(clip[1]);
    const auto meta = fields_after(meta_line, "meta:", 5);
    model.mode = parse_noise_mode(meta[0]);
    model.theta = parse_double(meta[1]);
    model.distance = parse_integer<int>(meta[2]);
    model.n_samples = parse_integer<uint64_t>(meta[3]);
    model.seed = parse_integer<uint64_t>(meta[4]);
    model.validate();
    return model;
}

void save_model(const GuidanceModel &model, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write model file " + path);
    }
    out << serialize_model(model);
    if (!out) {
        throw std::runtime_error("failed writing model file " + path);
    }
}

GuidanceModel load_model(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read model file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

Matching oracle_matching(const DecodingGraph &graph, std::span<const int> defects, std::span<const uint8_t> fault_bits) {
    const size_t n = defects.size();
    MatchingInstance inst;
    inst.defect_ids.assign(defects.begin(), defects.end());
    inst.pair.assign(n * n, kNoEdge);
    inst.boundary.assign(n, kNoEdge);
    std::vector<int> dist(graph.num_nodes());
    std::deque<int> frontier;
    for (size_t i = 0; i < n; ++i) {
        // 0-1 BFS; the boundary is a sink.
        std::fill(dist.begin(), dist.end(), -1);
        dist[defects[i]] = 0;
        frontier.assign(1, defects[i]);
        std::vector<uint8_t> done(graph.num_nodes(), 0);
        while (!frontier.empty()) {
            const int node = frontier.front();
            frontier.pop_front();
            if (done[node]) {
                continue;
            }
            done[node] = 1;
            if (node == graph.boundary()) {
                continue;
            }
            for (int e : graph.incident[node]) {
                const int next = graph.other_end(e, node);
                const int cost = fault_bits[e] ? 0 : 1;
                if (dist[next] == -1 || dist[node] + cost < dist[next]) {
                    dist[next] = dist[node] + cost;
                    if (cost == 0) {
                        frontier.push_front(next);
                    } else {
                        frontier.push_back(next);
                    }
                }
            }
        }
        for (size_t j = 0; j < n; ++j) {
            if (j != i && dist[defects[j]] >= 0) {
                inst.pair[i * n + j] = dist[defects[j]];
            }
        }
        if (dist[graph.boundary()] >= 0) {
            inst.boundary[i] = dist[graph.boundary()];
        }
    }
    return blossom_match(inst);
}

namespace {

struct Example {
    FeatureVector x;
    double label;
};

double dot(const std::array<double, 4> &a, const FeatureVector &x) {
    return a[0] * x[0] + a[1] * x[1] + a[2] * x[2] + a[3] * x[3];
}

double sigmoid(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

/// Solve the 4x4 system by Gaussian elimination with partial pivoting.
std::array<double, 4> solve4(std::array<std::array<double, 5>, 4> a) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(a[col], a[pivot]);
        if (std::fabs(a[col][col]) < 1e-300) {
            throw std::runtime_error("singular system while linearizing guidance model");
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) {
                continue;
            }
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 5; ++c) {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    std::array<double, 4> x{};
    for (int r = 0; r < 4; ++r) {
        x[r] = a[r][4] / a[r][r];
    }
    return x;
}

}  // namespace

TrainingReport train_guidance(const TrainingConfig &config) {
    if (config.n_samples < 1000) {
        throw std::invalid_argument("training needs at least 1000 samples");
    }
    NoiseConfig{config.mode, config.theta}.validate();
    const auto layout = build_lattice(config.distance);
    const DecodingGraph graphs[2] = {decoding_graph(layout, PauliType::X), decoding_graph(layout, PauliType::Z)};
    const auto n_train_samples =
        static_cast<uint64_t>(std::llround(static_cast<double>(config.n_samples) * (1.0 - config.holdout_fraction)));

    std::vector<Example> train;
    std::vector<Example> heldout;
    for (uint64_t s = 0; s < config.n_samples; ++s) {
        Rng rng(seed_for(config.seed, static_cast<uint64_t>(config.distance), config.theta, s));
        const auto error = sample_error(layout, NoiseConfig{config.mode, config.theta}, rng);
        auto &bucket = s < n_train_samples ? train : heldout;
        for (const auto &graph : graphs) {
            const auto &bits = error.bits(graph.error_type);
            const auto defects = graph_syndrome(graph, bits);
            if (defects.empty()) {
                continue;
            }
            const auto base = make_instance(pairwise_weights(graph, defects));
            const auto partner = oracle_matching(graph, defects, bits).partners(defects.size());
            for (size_t i = 0; i < defects.size(); ++i) {
                for (size_t j = i + 1; j < defects.size(); ++j) {
                    bucket.push_back({extract_features(base, i, j), partner[i] == static_cast<int>(j) ? 1.0 : 0.0});
                }
                bucket.push_back({extract_boundary_features(base, i), partner[i] == kBoundaryPartner ? 1.0 : 0.0});
            }
        }
    }
    if (train.empty()) {
        throw std::runtime_error("degenerate training data: no defect pairs were sampled");
    }

    // Logistic regression for P(pair is in the true pairing), full-batch GD.
    std::array<double, 4> psi{};
    const double inv_n = 1.0 / static_cast<double>(train.size());
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::array<double, 4> grad{};
        for (const auto &ex : train) {
            const double r = sigmoid(dot(psi, ex.x)) - ex.label;
            for (size_t k = 0; k < 4; ++k) {
                grad[k] += r * ex.x[k];
            }
        }
        for (size_t k = 0; k < 4; ++k) {
            psi[k] -= config.step * grad[k] * inv_n;
        }
    }

    // Linear guidance: least-squares fit of 2 * (1 - p) over the training
    // features, so likely pairs get factors below one. Small ridge for
    // collinear feature sets.
    std::array<std::array<double, 5>, 4> normal{};
    for (const auto &ex : train) {
        const double target = 2.0 * (1.0 - sigmoid(dot(psi, ex.x)));
        for (size_t r = 0; r < 4; ++r) {
            for (size_t c = 0; c < 4; ++c) {
                normal[r][c] += ex.x[r] * ex.x[c];
            }
            normal[r][4] += ex.x[r] * target;
        }
    }
    const double ridge = 1e-9 * (normal[0][0] + normal[1][1] + normal[2][2] + normal[3][3]);
    for (size_t r = 0; r < 4; ++r) {
        normal[r][r] += ridge;
    }

    TrainingReport report;
    report.logistic = psi;
    report.model.phi = solve4(normal);
    report.model.alpha_min = config.alpha_min;
    report.model.alpha_max = config.alpha_max;
    report.model.mode = config.mode;
    report.model.theta = config.theta;
    report.model.distance = config.distance;
    report.model.n_samples = config.n_samples;
    report.model.seed = config.seed;
    report.model.validate();

    auto accuracy = [&psi](const std::vector<Example> &set) {
        if (set.empty()) {
            return 0.0;
        }
        size_t correct = 0;
        for (const auto &ex : set) {
            correct += (sigmoid(dot(psi, ex.x)) >= 0.5) == (ex.label > 0.5);
        }
        return static_cast<double>(correct) / static_cast<double>(set.size());
    };
    report.train_examples = train.size();
    report.heldout_examples = heldout.size();
    report.train_accuracy = accuracy(train);
    report.heldout_accuracy = accuracy(heldout);
    return report;
}

}  // namespace qthresh
