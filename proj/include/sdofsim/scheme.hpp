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

#pragma once

#include <cstdint>
#include <utility>

#include "sdofsim/channel.hpp"
#include "sdofsim/precoding.hpp"

namespace sdofsim::scheme {

/// kSecureAlternating is the full scheme. kNoNoiseBaseline is the ablation:
/// the artificial-noise stream is zeroed and its power is reallocated
/// equally to the delayed-slot data streams; everything else is unchanged.
enum class SchemeVariant { kSecureAlternating, kNoNoiseBaseline };

/// The independent Gaussian sources of one block: K perfect-slot data
/// symbols (users 1..K), K-1 delayed-slot data symbols (users 2..K), and the
/// artificial-noise sample. Powers are the ones actually applied (after any
/// variant reallocation).
struct SymbolBlock {
    linalg::ComplexVector p_data;       // size K, entry k-1 for user k
    linalg::ComplexVector d_data;       // size K-1, entry k-2 for user k
    linalg::Complex artificial_noise{0.0, 0.0};
    double p_data_power = 0.0;
    double d_data_power = 0.0;
    double noise_power = 0.0;

    /// Message-bearing streams per block; always 2K-1.
    int data_stream_count() const {
        return static_cast<int>(p_data.size() + d_data.size());
    }
};

/// Table of receiver-side stream gains: entry (j, i) is the inner product of
/// receiver j+1's channel row with beam i for the given slot. Column 0 of
/// `d` is the artificial-noise direction.
struct GainTable {
    linalg::ComplexMatrix p;
    linalg::ComplexMatrix d;
};

/// Channel inputs for both slots of a block, with the symbols that formed
/// them (kept so receiver-side decompositions can be reconstructed).
struct TransmittedBlock {
    linalg::ComplexVector x_p;
    linalg::ComplexVector x_d;
    SymbolBlock symbols;
    SchemeVariant variant = SchemeVariant::kSecureAlternating;
};

/// Receiver outputs for both slots together with the exact per-stream
/// decomposition records: contrib_p(k, i) is stream i's contribution to
/// receiver k+1's perfect-slot output, contrib_d likewise for the delayed
/// slot (column 0 = artificial noise). Output = row sum of contributions
/// plus the noise entry.
struct BlockObservation {
    linalg::ComplexVector y_p;
    linalg::ComplexVector y_d;
    linalg::ComplexMatrix contrib_p;
    linalg::ComplexMatrix contrib_d;
    linalg::ComplexVector noise_p;
    linalg::ComplexVector noise_d;
};

/// Draws the block's source symbols. The variant's power reallocation is
/// applied here: under kNoNoiseBaseline the artificial-noise sample is
/// scaled to exactly zero and each delayed-slot data stream receives its
/// share of the freed power. The perfect-slot draws are identical across
/// variants for equal seeds.
SymbolBlock sample_symbols(int users, const precoding::PowerAllocation& powers,
                           SchemeVariant variant, std::uint64_t seed, int block_index);

/// Forms the channel inputs: the perfect-slot input superimposes the K data
/// beams, the delayed-slot input superimposes the artificial noise (zeroed
/// under the baseline variant) and the K-1 data beams.
TransmittedBlock transmit_block(const precoding::BlockPrecoder& precoder,
                                const SymbolBlock& symbols, SchemeVariant variant);

/// Applies the linear channel model y = h * x + n for both slots and records
/// the exact per-stream decomposition from the known gains.
BlockObservation receive_block(const channel::ChannelRealization& h_p,
                               const channel::ChannelRealization& h_d,
                               const TransmittedBlock& tx,
                               const precoding::BlockPrecoder& precoder,
                               const channel::NoiseRealization& noise_p,
                               const channel::NoiseRealization& noise_d);

/// Complete (receiver, beam) gain table for both slots of a block.
GainTable effective_gains(const precoding::BlockPrecoder& precoder,
                          const channel::ChannelRealization& h_p,
                          const channel::ChannelRealization& h_d);

/// Per-stream powers with the variant reallocation applied.
precoding::PowerAllocation effective_powers(const precoding::PowerAllocation& powers,
                                            SchemeVariant variant);

} // namespace sdofsim::scheme
