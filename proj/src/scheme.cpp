// sdofsim - Monte Carlo simulator for secure multi-user MISO downlink transmission
// Copyright (C) 2026 the sdofsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sdofsim/scheme.hpp"

#include <cmath>

#include "sdofsim/rng.hpp"

namespace sdofsim::scheme {

namespace {

constexpr double kComponentSigma = 0.70710678118654752440; // sqrt(1/2)

} // namespace

precoding::PowerAllocation effective_powers(const precoding::PowerAllocation& powers,
                                            SchemeVariant variant) {
    if (variant == SchemeVariant::kSecureAlternating) {
        return powers;
    }
    precoding::PowerAllocation adjusted = powers;
    adjusted.d_data += adjusted.d_noise / (powers.users - 1);
    adjusted.d_noise = 0.0;
    return adjusted;
}

SymbolBlock sample_symbols(int users, const precoding::PowerAllocation& powers,
                           SchemeVariant variant, std::uint64_t seed, int block_index) {
    if (users < 2 || powers.users != users) {
        throw InvalidUserCountError("sample_symbols: inconsistent user count");
    }
    const auto p = effective_powers(powers, variant);
    auto engine = rng::engine_for(seed, rng::Domain::kSymbols,
                                  static_cast<std::uint64_t>(block_index));
    std::normal_distribution<double> gauss(0.0, kComponentSigma);
    auto draw = [&](double power) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        return linalg::Complex(re, im) * std::sqrt(power);
    };

    SymbolBlock block;
    block.p_data_power = p.p_data;
    block.d_data_power = p.d_data;
    block.noise_power = p.d_noise;
    block.p_data.resize(users);
    for (int k = 0; k < users; ++k) {
        block.p_data[k] = draw(p.p_data);
    }
    block.d_data.resize(users - 1);
    for (int k = 0; k < users - 1; ++k) {
        block.d_data[k] = draw(p.d_data);
    }
    block.artificial_noise = draw(p.d_noise); // scale 0 under the baseline
    return block;
}

TransmittedBlock transmit_block(const precoding::BlockPrecoder& precoder,
                                const SymbolBlock& symbols, SchemeVariant variant) {
    const int users = precoder.users();
    if (static_cast<int>(precoder.d_beams.size()) != users ||
        symbols.p_data.size() != users || symbols.d_data.size() != users - 1) {
        throw DimensionError("transmit_block: precoder/symbol dimensions disagree");
    }
    const Eigen::Index dim = precoder.p_beams.front().dim();

    TransmittedBlock tx;
    tx.symbols = symbols;
    tx.variant = variant;
    tx.x_p = linalg::ComplexVector::Zero(dim);
    for (int k = 0; k < users; ++k) {
        tx.x_p += symbols.p_data[k] * precoder.p_beams[static_cast<std::size_t>(k)].coeffs();
    }
    const linalg::Complex noise_sample =
        variant == SchemeVariant::kNoNoiseBaseline ? linalg::Complex(0.0, 0.0)
                                                   : symbols.artificial_noise;
    tx.x_d = noise_sample * precoder.d_beams.front().coeffs();
    for (int k = 1; k < users; ++k) {
        tx.x_d += symbols.d_data[k - 1] * precoder.d_beams[static_cast<std::size_t>(k)].coeffs();
    }
    return tx;
}

BlockObservation receive_block(const channel::ChannelRealization& h_p,
                               const channel::ChannelRealization& h_d,
                               const TransmittedBlock& tx,
                               const precoding::BlockPrecoder& precoder,
                               const channel::NoiseRealization& noise_p,
                               const channel::NoiseRealization& noise_d) {
    const int users = h_p.users();
    if (h_d.users() != users || tx.x_p.size() != users || tx.x_d.size() != users ||
        noise_p.n.size() != users || noise_d.n.size() != users || precoder.users() != users) {
        throw DimensionError("receive_block: inconsistent dimensions");
    }

    BlockObservation obs;
    obs.noise_p = noise_p.n;
    obs.noise_d = noise_d.n;
    obs.y_p = h_p.h * tx.x_p + noise_p.n;
    obs.y_d = h_d.h * tx.x_d + noise_d.n;

    const GainTable gains = effective_gains(precoder, h_p, h_d);
    const linalg::Complex noise_sample =
        tx.variant == SchemeVariant::kNoNoiseBaseline ? linalg::Complex(0.0, 0.0)
                                                      : tx.symbols.artificial_noise;
    obs.contrib_p.resize(users, users);
    obs.contrib_d.resize(users, users);
    for (int rx = 0; rx < users; ++rx) {
        for (int i = 0; i < users; ++i) {
            obs.contrib_p(rx, i) = tx.symbols.p_data[i] * gains.p(rx, i);
        }
        obs.contrib_d(rx, 0) = noise_sample * gains.d(rx, 0);
        for (int i = 1; i < users; ++i) {
            obs.contrib_d(rx, i) = tx.symbols.d_data[i - 1] * gains.d(rx, i);
        }
    }
    return obs;
}

GainTable effective_gains(const precoding::BlockPrecoder& precoder,
                          const channel::ChannelRealization& h_p,
                          const channel::ChannelRealization& h_d) {
    const int users = h_p.users();
    if (h_d.users() != users || precoder.users() != users) {
        throw DimensionError("effective_gains: inconsistent dimensions");
    }
    GainTable gains;
    gains.p.resize(users, users);
    gains.d.resize(users, users);
    for (int beam = 0; beam < users; ++beam) {
        // Rows of h are already conjugate-transposed channel vectors, so the
        // receiver-side inner product is a plain matrix-vector product.
        gains.p.col(beam) = h_p.h * precoder.p_beams[static_cast<std::size_t>(beam)].coeffs();
        gains.d.col(beam) = h_d.h * precoder.d_beams[static_cast<std::size_t>(beam)].coeffs();
    }
    return gains;
}

} // namespace sdofsim::scheme
