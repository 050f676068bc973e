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

#include "sdofsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdofsim/rng.hpp"

namespace sdofsim::channel {

namespace {

constexpr double kComponentSigma = 0.70710678118654752440; // sqrt(1/2)

} // namespace

std::pair<int, int> CsitSchedule::block_slots(int block) const {
    if (block < 0 || block >= block_count) {
        throw std::out_of_range("CsitSchedule::block_slots: block index out of range");
    }
    if (layout == ScheduleLayout::kInterleaved) {
        return {2 * block, 2 * block + 1};
    }
    return {block, block_count + block};
}

ChannelRealization sample_channel(int users, std::uint64_t seed, int slot) {
    if (users < 2) {
        throw InvalidUserCountError("sample_channel: need at least 2 users, got " +
                                    std::to_string(users));
    }
    auto engine = rng::engine_for(seed, rng::Domain::kChannel, static_cast<std::uint64_t>(slot));
    std::normal_distribution<double> gauss(0.0, kComponentSigma);

    ChannelRealization r;
    r.slot = slot;
    r.h.resize(users, users);
    for (int row = 0; row < users; ++row) {
        for (int col = 0; col < users; ++col) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            r.h(row, col) = linalg::Complex(re, im);
        }
    }
    return r;
}

NoiseRealization sample_noise(int users, std::uint64_t seed, int slot) {
    if (users < 1) {
        throw InvalidUserCountError("sample_noise: need at least 1 user");
    }
    auto engine = rng::engine_for(seed, rng::Domain::kNoise, static_cast<std::uint64_t>(slot));
    std::normal_distribution<double> gauss(0.0, kComponentSigma);

    NoiseRealization n;
    n.slot = slot;
    n.n.resize(users);
    for (int k = 0; k < users; ++k) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        n.n[k] = linalg::Complex(re, im);
    }
    return n;
}

CsitSchedule make_schedule(int block_count, ScheduleLayout layout) {
    if (block_count < 1) {
        throw std::invalid_argument("make_schedule: block_count must be >= 1");
    }
    CsitSchedule schedule;
    schedule.block_count = block_count;
    schedule.layout = layout;
    schedule.pattern.reserve(static_cast<std::size_t>(2 * block_count));
    if (layout == ScheduleLayout::kInterleaved) {
        for (int i = 0; i < block_count; ++i) {
            schedule.pattern.push_back(CsitState::kPAll);
            schedule.pattern.push_back(CsitState::kDFirst);
        }
    } else {
        schedule.pattern.assign(static_cast<std::size_t>(block_count), CsitState::kPAll);
        schedule.pattern.insert(schedule.pattern.end(), static_cast<std::size_t>(block_count),
                                CsitState::kDFirst);
    }
    return schedule;
}

TxView tx_view(const ChannelRealization& realization, CsitState state,
               std::span<const ChannelRealization> history) {
    TxView view;
    view.slot = realization.slot;
    view.state = state;
    if (state == CsitState::kPAll) {
        view.known_rows = realization.h;
    } else {
        // Row 1 of the current slot is withheld; only rows 2..K enter the view.
        view.known_rows = realization.h.bottomRows(realization.h.rows() - 1);
    }
    view.history.reserve(history.size());
    for (const auto& past : history) {
        if (past.slot >= realization.slot) {
            throw std::invalid_argument("tx_view: history must precede the current slot");
        }
        view.history.push_back(past.h);
    }
    return view;
}

} // namespace sdofsim::channel
