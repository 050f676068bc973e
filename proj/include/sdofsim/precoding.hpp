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

#include <vector>

#include "sdofsim/channel.hpp"
#include "sdofsim/errors.hpp"
#include "sdofsim/linalg.hpp"

namespace sdofsim::precoding {

enum class StreamKind { kData, kArtificialNoise };
enum class SymbolTag { kPerfectSlot, kDelayedSlot, kNone };

/// What a beamforming direction carries: a data symbol for one user, or the
/// artificial-noise stream (delayed-CSI slot, direction index 0 only).
struct StreamRole {
    StreamKind kind = StreamKind::kData;
    int user = 0; // 1-based; 0 for the artificial-noise stream
    SymbolTag tag = SymbolTag::kNone;
};

/// Per-stream transmit powers for one block under the default policy:
/// in the perfect-CSI slot every one of the K data streams gets total/K;
/// in the delayed-CSI slot the artificial noise gets total/2 and the K-1
/// data streams split the other half equally. kEqualSplit instead gives
/// every stream in a slot total/K. Either way each slot's powers sum to
/// the total budget.
enum class PowerPolicy { kHalfNoise, kEqualSplit };

struct PowerAllocation {
    int users = 0;
    double total = 0.0;
    double p_data = 0.0;  // per data stream, perfect-CSI slot
    double d_noise = 0.0; // artificial-noise stream, delayed-CSI slot
    double d_data = 0.0;  // per data stream, delayed-CSI slot
};

/// Beamformers for one (perfect, delayed) slot pair. p_beams[k-1] carries
/// user k's symbol in the perfect-CSI slot; d_beams[0] carries the
/// artificial noise and d_beams[k-1] (k >= 2) carries user k's symbol in
/// the delayed-CSI slot.
struct BlockPrecoder {
    std::vector<linalg::UnitVector> p_beams;
    std::vector<linalg::UnitVector> d_beams;
    PowerAllocation powers;

    int users() const { return static_cast<int>(p_beams.size()); }
    StreamRole p_role(int idx) const;
    StreamRole d_role(int idx) const;
};

/// Zero-forcing beamformers for a perfect-CSI slot: beam k solves the
/// interference-nulling system formed by all channel rows except row k,
/// so every unintended receiver sees nothing of stream k.
std::vector<linalg::UnitVector> build_p_state_precoder(const channel::TxView& view);

/// Beamformers for a delayed-CSI slot, built from rows 2..K only (the view
/// cannot contain row 1). Direction 0 nulls all of rows 2..K and carries the
/// artificial noise. For user k >= 2 the beam lies in the null space of the
/// remaining rows {2..K}\{k}; within that (generally two-dimensional) space
/// the direction anchored at coordinate k is chosen: the unit-normalized
/// projection of the k-th canonical axis onto the null space, falling back
/// to the first deterministic basis vector if that projection vanishes.
std::vector<linalg::UnitVector> build_d_state_precoder(const channel::TxView& view);

/// Convenience assembly of both slots' beams plus the power allocation.
BlockPrecoder build_block_precoder(const channel::TxView& p_view, const channel::TxView& d_view,
                                   const PowerAllocation& powers);

/// Splits the per-slot budget across streams; throws InvalidPowerError for
/// total_power <= 0.
PowerAllocation allocate_powers(int users, double total_power,
                                PowerPolicy policy = PowerPolicy::kHalfNoise);

/// Unit vector in the null space of `a` with maximal overlap with canonical
/// coordinate `anchor` (the normalized projection of that axis onto the null
/// space). Exposed for testing.
linalg::UnitVector anchored_null_vector(const linalg::ComplexMatrix& a, Eigen::Index anchor);

} // namespace sdofsim::precoding
