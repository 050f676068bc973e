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
#include <vector>

#include "sdofsim/channel.hpp"
#include "sdofsim/precoding.hpp"
#include "sdofsim/scheme.hpp"

namespace sdofsim::analysis {

/// Joint Gaussian description of one block seen by a set of observing
/// receivers, conditioned on the channel (the map is fixed, not random).
///
/// The stacked source vector s has 2K independent zero-mean complex Gaussian
/// entries in this order: perfect-slot data for users 1..K, delayed-slot
/// data for users 2..K, artificial noise. observation_map has one row per
/// observation (for each observer j: its perfect-slot output, then its
/// delayed-slot output) and maps s to the noise-free observations; receiver
/// noise is white with unit variance, so the observation covariance is
/// G * diag(source_variance) * G^H + I.
struct GaussianBlockModel {
    int users = 0;
    std::vector<int> observers;            // 1-based receiver indices
    Eigen::VectorXd source_variance;       // length 2K
    linalg::ComplexMatrix observation_map; // (2*|observers|) x 2K
};

/// Rates and leakage for one block at one power level. Rates are bits per
/// channel use (block totals divided by the two slots); leakage entries are
/// bits per block for the secrecy pair with target user k = index + 2.
struct RatePoint {
    double power = 0.0;
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
    std::vector<double> leakage;
};

/// Least-squares line fit of rate (or leakage) against log2(power).
struct SdofFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

/// Result of one statistical-equivalence draw: conditional output variances
/// of the actual and the virtual receiver 1 for the delayed slot.
struct SepDraw {
    double actual_variance = 0.0;
    double virtual_variance = 0.0;
    double deviation = 0.0;
};

/// Monte Carlo summary of the statistical-equivalence check.
struct SepStats {
    double actual_mean = 0.0;
    double virtual_mean = 0.0;
    double deviation = 0.0;
    double deviation_se = 0.0;
    bool within_3se = false;
    int draws = 0;
};

struct PowerAudit {
    double p_slot_mean = 0.0;
    double d_slot_mean = 0.0;
    double p_slot_se = 0.0;
    double d_slot_se = 0.0;
    int blocks = 0;
    bool over_budget = false; // either slot mean above budget by > 3 SE
};

/// Single-stream Gaussian rate log2(1 + p |gain|^2 / denom) in bits.
/// Throws InvalidPowerError for negative stream power or denom <= 0.
double user_rate(linalg::Complex gain, double p_stream, double interference_plus_noise_power);

/// Exact per-user and sum rates for one block from its gain table. User 1
/// accrues rate only in the perfect-CSI slot; users 2..K accrue in both
/// slots. Interference in each denominator comes from the actual residual
/// gains. Rates are normalized per channel use (divided by 2). The returned
/// leakage vector is left empty.
RatePoint block_rates(const scheme::GainTable& gains, const precoding::PowerAllocation& powers,
                      scheme::SchemeVariant variant);

/// Observers {1, ..., target_user - 1} of a secrecy pair.
std::vector<int> observer_set(int target_user);

/// Builds the joint Gaussian model for the given observers from a block's
/// gain table (variant power reallocation applied).
GaussianBlockModel make_block_model(const scheme::GainTable& gains,
                                    const precoding::PowerAllocation& powers,
                                    scheme::SchemeVariant variant, std::span<const int> observers);

/// Exact Gaussian mutual information, in bits per block, between user k's
/// message streams and the modeled observations:
/// log2 det(Sigma) - log2 det(Sigma | target streams), the conditional
/// covariance obtained by zeroing the target streams' variance.
double leakage_mi(const GaussianBlockModel& model, int target_user);

/// Convenience: leakage of the canonical secrecy pair (k; observers 1..k-1).
double pair_leakage(const scheme::GainTable& gains, const precoding::PowerAllocation& powers,
                    scheme::SchemeVariant variant, int target_user);

/// Ordinary least squares of y against x. Throws InsufficientPointsError for
/// fewer than 2 points or zero x-spread.
SdofFit fit_line(std::span<const double> x, std::span<const double> y);

/// Pre-log (degrees-of-freedom) estimate: OLS slope of sum rate against
/// log2(P). Requires at least 4 points spanning at least 40 dB.
SdofFit fit_sdof(std::span<const RatePoint> points);

/// One statistical-equivalence draw. Both realizations must share rows 2..K
/// (only row 1 differs: the virtual receiver has an independent copy). The
/// conditional variance of the delayed-slot output of receiver 1 is computed
/// for both, given the source streams listed in conditioned_streams
/// (0 = artificial noise, 1..K-1 = delayed-slot data of users 2..K).
SepDraw sep_covariance_check(const channel::ChannelRealization& actual,
                             const channel::ChannelRealization& virtual_rx,
                             const precoding::BlockPrecoder& precoder,
                             scheme::SchemeVariant variant,
                             std::span<const int> conditioned_streams);

/// Averages sep_covariance_check over `draws` independent (row 1, virtual
/// row 1) pairs with the transmit statistics held fixed, and tests whether
/// the two mean conditional variances agree within 3 Monte Carlo standard
/// errors.
SepStats sep_equivalence(int users, double total_power, precoding::PowerPolicy policy,
                         scheme::SchemeVariant variant, std::span<const int> conditioned_streams,
                         int draws, std::uint64_t seed);

/// Empirical mean transmitted power per slot over `blocks` simulated blocks,
/// with standard errors; flags a budget violation beyond 3 standard errors.
PowerAudit power_audit(int users, double total_power, precoding::PowerPolicy policy,
                       scheme::SchemeVariant variant, int blocks, std::uint64_t seed);

} // namespace sdofsim::analysis
