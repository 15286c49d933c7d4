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

#ifndef QTHRESH_NOISE_H
#define QTHRESH_NOISE_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "qthresh/lattice.h"
#include "qthresh/rng.h"

namespace qthresh {

/// Physical noise family. `BitFlip` (X only at rate p) is a calibration
/// channel used to compare against the known code-capacity threshold.
enum class NoiseMode : uint8_t { Pauli, Hybrid, BitFlip };

std::string_view to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view text);

struct NoiseConfig {
    NoiseMode mode = NoiseMode::Pauli;
    double theta = 0.0;  // p for Pauli/BitFlip, sigma for Hybrid

    void validate() const;
};

struct DisplacementField {
    std::vector<double> dq;
    std::vector<double> dp;
};

struct EffectiveChannelEstimate {
    double p_i = 0;
    double p_x = 0;
    double p_z = 0;
    double p_y = 0;
    uint64_t n_samples = 0;
    double sigma = 0;
    // Raw counts; the probabilities are these over n_samples.
    uint64_t count_i = 0;
    uint64_t count_x = 0;
    uint64_t count_z = 0;
    uint64_t count_y = 0;
};

/// Depolarizing channel, one uniform per qubit in ascending order:
/// [0, p/3) -> X, [p/3, 2p/3) -> Y, [2p/3, p) -> Z.
ErrorPattern sample_pauli_error(const SurfaceCodeLayout &layout, double p, Rng &rng);

/// Independent X flips at rate p, one uniform per qubit.
ErrorPattern sample_bitflip_error(const SurfaceCodeLayout &layout, double p, Rng &rng);

/// One Box-Muller pair per qubit in ascending order: (dq, dp) = sigma * (z0, z1).
DisplacementField sample_displacements(const SurfaceCodeLayout &layout, double sigma, Rng &rng);

/// Nearest multiple of sqrt(pi), ties to even; an odd multiple is a flip.
bool digitize_quadrature(double displacement);

/// Digitize q displacements to X bits and p displacements to Z bits.
ErrorPattern digitize(const DisplacementField &field);

/// Dispatch on the configured mode. Draw order is part of the reproducibility contract.
ErrorPattern sample_error(const SurfaceCodeLayout &layout, const NoiseConfig &config, Rng &rng);

/// Monte Carlo estimate of the digitized single-qubit channel.
EffectiveChannelEstimate estimate_effective_channel(double sigma, uint64_t n_samples, uint64_t seed);

/// Exact marginal flip probability of one digitized quadrature: the Gaussian
/// mass of the odd bins ((m - 1/2) sqrt(pi), (m + 1/2) sqrt(pi)).
double analytic_flip_rate(double sigma);

}  // namespace qthresh

#endif
