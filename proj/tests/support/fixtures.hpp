// Shared helpers for building one simulated block in tests.
#pragma once

#include <cstdint>

#include "sdofsim/analysis.hpp"

namespace fixtures {

struct TestBlock {
    sdofsim::channel::ChannelRealization h_p;
    sdofsim::channel::ChannelRealization h_d;
    sdofsim::precoding::PowerAllocation powers;
    sdofsim::precoding::BlockPrecoder precoder;
    sdofsim::scheme::GainTable gains;
};

inline TestBlock make_block(int users, double total_power, std::uint64_t seed,
                            sdofsim::precoding::PowerPolicy policy =
                                sdofsim::precoding::PowerPolicy::kHalfNoise) {
    namespace channel = sdofsim::channel;
    TestBlock block;
    block.h_p = channel::sample_channel(users, seed, 0);
    block.h_d = channel::sample_channel(users, seed, 1);
    block.powers = sdofsim::precoding::allocate_powers(users, total_power, policy);
    block.precoder = sdofsim::precoding::build_block_precoder(
        channel::tx_view(block.h_p, channel::CsitState::kPAll),
        channel::tx_view(block.h_d, channel::CsitState::kDFirst), block.powers);
    block.gains = sdofsim::scheme::effective_gains(block.precoder, block.h_p, block.h_d);
    return block;
}

} // namespace fixtures
