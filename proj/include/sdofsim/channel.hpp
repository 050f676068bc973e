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
#include <span>
#include <utility>
#include <vector>

#include "sdofsim/errors.hpp"
#include "sdofsim/linalg.hpp"

namespace sdofsim::channel {

/// One block-fading realization. Row k of `h` is the conjugate-transposed
/// channel vector of receiver k+1, so receiver outputs are y = h * x + n.
struct ChannelRealization {
    int slot = 0;
    linalg::ComplexMatrix h;

    int users() const { return static_cast<int>(h.rows()); }
};

/// CSI quality at the transmitter for one slot. kPAll: every receiver's
/// current channel row is known. kDFirst: receiver 1's current row is only
/// available with one slot of delay; rows 2..K are known instantly.
enum class CsitState { kPAll, kDFirst };

/// How the two slot types are laid out over a run of 2*block_count slots.
enum class ScheduleLayout { kInterleaved, kContiguous };

struct CsitSchedule {
    int block_count = 0;
    ScheduleLayout layout = ScheduleLayout::kInterleaved;
    std::vector<CsitState> pattern;

    /// Slot indices (perfect-CSI slot, delayed-CSI slot) forming block i.
    std::pair<int, int> block_slots(int block) const;
};

/// The channel knowledge the encoder may use for one slot. In state kDFirst
/// `known_rows` holds only rows 2..K of the current realization; row 1 never
/// enters this structure, so code consuming a TxView cannot depend on it.
/// `history` carries full matrices of strictly earlier slots (delayed CSI);
/// the transmission scheme does not consume it but it is part of the
/// encoder's information set.
struct TxView {
    int slot = 0;
    CsitState state = CsitState::kPAll;
    linalg::ComplexMatrix known_rows;
    std::vector<linalg::ComplexMatrix> history;
};

struct NoiseRealization {
    int slot = 0;
    linalg::ComplexVector n;
};

/// K x K matrix of i.i.d. unit-variance circularly symmetric complex Gaussian
/// entries; a pure function of (users, seed, slot). Throws
/// InvalidUserCountError for users < 2.
ChannelRealization sample_channel(int users, std::uint64_t seed, int slot);

/// K i.i.d. CN(0,1) receiver noise samples for one slot.
NoiseRealization sample_noise(int users, std::uint64_t seed, int slot);

/// Schedule with exactly block_count slots of each CSIT state. Interleaved:
/// slot 2i is kPAll and slot 2i+1 is kDFirst. Contiguous: all kPAll slots
/// first, block i pairing slots (i, block_count + i).
CsitSchedule make_schedule(int block_count, ScheduleLayout layout = ScheduleLayout::kInterleaved);

/// Masks a realization down to what the encoder may see in the given state.
TxView tx_view(const ChannelRealization& realization, CsitState state,
               std::span<const ChannelRealization> history = {});

} // namespace sdofsim::channel
