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
#include <random>

namespace sdofsim::rng {

/// Independent sampling domains. Mixing the domain into the derived seed keeps
/// channel, noise and symbol streams separated even for equal counters.
enum class Domain : std::uint64_t {
    kChannel = 0x6368616e,
    kNoise = 0x6e6f6973,
    kSymbols = 0x73796d62,
    kSweepTrial = 0x74726961,
    kSepDraw = 0x73657064,
    kAudit = 0x61756469,
};

/// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
constexpr std::uint64_t split_step(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: a pure function of (master, domain, a, b),
/// so any (point, trial, slot) stream can be regenerated independently of the
/// order in which other streams are consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master, Domain domain, std::uint64_t a = 0,
                                    std::uint64_t b = 0) {
    std::uint64_t s = split_step(master);
    s = split_step(s ^ static_cast<std::uint64_t>(domain));
    s = split_step(s ^ a);
    s = split_step(s ^ b);
    return s;
}

inline std::mt19937_64 engine_for(std::uint64_t master, Domain domain, std::uint64_t a = 0,
                                  std::uint64_t b = 0) {
    return std::mt19937_64(derive_seed(master, domain, a, b));
}

} // namespace sdofsim::rng
