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

#include "qthresh/noise.h"

#include <cfenv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qthresh {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

std::string_view to_string(NoiseMode mode) {
    switch (mode) {
        case NoiseMode::Pauli:
            return "pauli";
        case NoiseMode::Hybrid:
            return "hybrid";
        case NoiseMode::BitFlip:
            return "bitflip";
    }
    return "unknown";
}

NoiseMode parse_noise_mode(std::string_view text) {
    if (text == "pauli") {
        return NoiseMode::Pauli;
    }
    if (text == "hybrid") {
        return NoiseMode::Hybrid;
    }
    if (text == "bitflip") {
        return NoiseMode::BitFlip;
    }
    throw std::invalid_argument("unknown noise mode '" + std::string(text) + "'");
}

void NoiseConfig::validate() const {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("noise parameter must be finite");
    }
    if (mode == NoiseMode::Hybrid) {
        if (theta <= 0) {
            throw std::invalid_argument("hybrid sigma must be > 0, got " + std::to_string(theta));
        }
    } else if (theta < 0 || theta > 1) {
        throw std::invalid_argument("error probability must be in [0, 1], got " + std::to_string(theta));
    }
}

ErrorPattern sample_pauli_error(const SurfaceCodeLayout &layout, double p, Rng &rng) {
    NoiseConfig{NoiseMode::Pauli, p}.validate();
    auto error = ErrorPattern::zeros(layout.n_data);
    const double third = p / 3.0;
    for (int q = 0; q < layout.n_data; ++q) {
        const double u = rng.uniform();
        if (u >= p) {
            continue;
        }
        if (u < third) {
            error.x_bits[q] = 1;
        } else if (u < 2 * third) {
            error.x_bits[q] = 1;
            error.z_bits[q] = 1;
        } else {
            error.z_bits[q] = 1;
        }
    }
    return error;
}

ErrorPattern sample_bitflip_error(const SurfaceCodeLayout &layout, double p, Rng &rng) {
    NoiseConfig{NoiseMode::BitFlip, p}.validate();
    auto error = ErrorPattern::zeros(layout.n_data);
    for (int q = 0; q < layout.n_data; ++q) {
        error.x_bits[q] = rng.uniform() < p;
    }
    return error;
}

DisplacementField sample_displacements(const SurfaceCodeLayout &layout, double sigma, Rng &rng) {
    NoiseConfig{NoiseMode::Hybrid, sigma}.validate();
    DisplacementField field;
    field.dq.resize(layout.n_data);
    field.dp.resize(layout.n_data);
    for (int q = 0; q < layout.n_data; ++q) {
        const auto [z0, z1] = rng.gaussian_pair();
        field.dq[q] = sigma * z0;
        field.dp[q] = sigma * z1;
    }
    return field;
}

bool digitize_quadrature(double displacement) {
    // nearbyint honours the current rounding mode; the default is ties-to-even.
    const double m = std::nearbyint(displacement / kSqrtPi);
    return std::fmod(std::fabs(m), 2.0) == 1.0;
}

ErrorPattern digitize(const DisplacementField &field) {
    if (field.dq.size() != field.dp.size()) {
        throw std::invalid_argument("displacement field quadratures differ in length");
    }
    const int n = static_cast<int>(field.dq.size());
    auto error = ErrorPattern::zeros(n);
    for (int q = 0; q < n; ++q) {
        error.x_bits[q] = digitize_quadrature(field.dq[q]);
        error.z_bits[q] = digitize_quadrature(field.dp[q]);
    }
    return error;
}

ErrorPattern sample_error(const SurfaceCodeLayout &layout, const NoiseConfig &config, Rng &rng) {
    switch (config.mode) {
        case NoiseMode::Pauli:
            return sample_pauli_error(layout, config.theta, rng);
        case NoiseMode::Hybrid:
            return digitize(sample_displacements(layout, config.theta, rng));
        case NoiseMode::BitFlip:
            return sample_bitflip_error(layout, config.theta, rng);
    }
    throw std::invalid_argument("unknown noise mode");
}

EffectiveChannelEstimate estimate_effective_channel(double sigma, uint64_t n_samples, uint64_t seed) {
    NoiseConfig{NoiseMode::Hybrid, sigma}.validate();
    if (n_samples == 0) {
        throw std::invalid_argument("n_samples must be >= 1");
    }
    Rng rng(seed);
    EffectiveChannelEstimate est;
    est.sigma = sigma;
    est.n_samples = n_samples;
    for (uint64_t s = 0; s < n_samples; ++s) {
        const auto [z0, z1] = rng.gaussian_pair();
        const bool x = digitize_quadrature(sigma * z0);
        const bool z = digitize_quadrature(sigma * z1);
        if (x && z) {
            ++est.count_y;
        } else if (x) {
            ++est.count_x;
        } else if (z) {
            ++est.count_z;
        } else {
            ++est.count_i;
        }
    }
    const double n = static_cast<double>(n_samples);
    est.p_x = static_cast<double>(est.count_x) / n;
    est.p_z = static_cast<double>(est.count_z) / n;
    est.p_y = static_cast<double>(est.count_y) / n;
    est.p_i = static_cast<double>(est.count_i) / n;
    return est;
}

double analytic_flip_rate(double sigma) {
    if (!(sigma > 0)) {
        throw std::invalid_argument("sigma must be > 0");
    }
    auto upper_tail = [sigma](double x) { return 0.5 * std::erfc(x / (sigma * std::numbers::sqrt2)); };
    double total = 0;
    for (int m = 1;; m += 2) {
        const double mass = upper_tail((m - 0.5) * kSqrtPi) - upper_tail((m + 0.5) * kSqrtPi);
        total += 2 * mass;
        if (mass < 1e-18 && m > 1) {
            break;
        }
    }
    return total;
}

}  // namespace qthresh
