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

#ifndef QTHRESH_NEURAL_H
#define QTHRESH_NEURAL_H

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "qthresh/lattice.h"
#include "qthresh/matching.h"
#include "qthresh/noise.h"

namespace qthresh {

/// (1, graph distance, min boundary distance, |boundary distance difference|).
using FeatureVector = std::array<double, 4>;

/// Linear guidance: alpha = clip(phi . x, alpha_min, alpha_max).
struct GuidanceModel {
    std::array<double, 4> phi{1.0, 0.0, 0.0, 0.0};
    double alpha_min = 0.5;
    double alpha_max = 2.0;

    // Provenance of a trained model.
    NoiseMode mode = NoiseMode::Hybrid;
    double theta = 0;
    int distance = 0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;

    static GuidanceModel identity() { return GuidanceModel{}; }
    void validate() const;
    bool operator==(const GuidanceModel &other) const = default;
};

FeatureVector extract_features(const MatchingInstance &base, size_t i, size_t j);
FeatureVector extract_boundary_features(const MatchingInstance &base, size_t i);

/// Clipped guidance factor. A non-finite raw output yields 1 and sets `*non_finite`.
double guidance_factor(const GuidanceModel &model, const FeatureVector &x, bool *non_finite = nullptr);

struct GuidedInstance {
    MatchingInstance instance;
    int non_finite = 0;  // factors that fell back to 1
};

/// Scale every pair and boundary weight by its guidance factor.
GuidedInstance guided_weights(const GuidanceModel &model, const MatchingInstance &base);

struct NeuralDecodeResult {
    BitVec correction;
    bool decoder_failure = false;
    int non_finite = 0;
};

/// Blossom on guided weights, lifted along the base shortest paths. A
/// correction that fails syndrome verification is returned with
/// `decoder_failure` set rather than thrown.
NeuralDecodeResult decode_neural_mwpm(const DecodingGraph &graph, std::span<const int> defects,
                                      const DefectWeights &weights, const GuidanceModel &model);

/// Text model file:
///   neural-guidance v1
///   phi: w0 w1 w2 w3
///   clip: a_min a_max
///   meta: mode theta d n seed
std::string serialize_model(const GuidanceModel &model);
GuidanceModel parse_model(const std::string &text);
void save_model(const GuidanceModel &model, const std::string &path);
GuidanceModel load_model(const std::string &path);

struct TrainingConfig {
    NoiseMode mode = NoiseMode::Hybrid;
    double theta = 0.45;
    int distance = 5;
    uint64_t n_samples = 50000;
    uint64_t seed = 1337;
    double alpha_min = 0.5;
    double alpha_max = 2.0;
    int epochs = 200;
    double step = 0.1;
    double holdout_fraction = 0.2;
};

struct TrainingReport {
    GuidanceModel model;
    std::array<double, 4> logistic{};  // pair-probability weights before linearization
    size_t train_examples = 0;
    size_t heldout_examples = 0;
    double train_accuracy = 0;
    double heldout_accuracy = 0;
};

/// Fit the guidance model on sampled syndromes labelled by their true fault
/// chains. Deterministic in the config. Throws std::invalid_argument for
/// n_samples < 1000 and std::runtime_error when no candidate pairs appear.
TrainingReport train_guidance(const TrainingConfig &config);

/// Oracle pairing for a known fault set: matching on path costs where faulty
/// qubits are free and healthy qubits cost 1.
Matching oracle_matching(const DecodingGraph &graph, std::span<const int> defects, std::span<const uint8_t> fault_bits);

}  // namespace qthresh

#endif
