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

#include <stdexcept>

namespace sdofsim {

/// Matrix/vector shape or state of an argument violates an operation's contract.
class DimensionError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical rank of the input is below what the operation requires.
class RankDeficientError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class NotHermitianError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A factorization pivot came out non-positive.
class NotPositiveDefiniteError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class InvalidUserCountError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class InvalidPowerError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Too few SNR points (or too narrow a span) to fit a pre-log slope.
class InsufficientPointsError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sdofsim
