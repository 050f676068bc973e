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

#include "sdofsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sdofsim/rng.hpp"

namespace sdofsim::analysis {

namespace {

constexpr double kComponentSigma = 0.70710678118654752440; // sqrt(1/2)

// 40 dB expressed in log2(P) units.
const double kMinFitSpanLog2 = 4.0 * std::log2(10.0);

linalg::ComplexMatrix observation_covariance(const GaussianBlockModel& model,
                                             const Eigen::VectorXd& variance) {
    linalg::ComplexMatrix sigma = model.observation_map * variance.asDiagonal() *
                                  model.observation_map.adjoint();
    sigma += linalg::ComplexMatrix::Identity(sigma.rows(), sigma.cols());
    return sigma;
}

struct MeanAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    int count = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++count;
    }
    double mean() const { return sum / count; }
    double standard_error() const {
        const double m = mean();
        const double var = std::max(0.0, sum_sq / count - m * m);
        return std::sqrt(var / count);
    }
};

} // namespace

double user_rate(linalg::Complex gain, double p_stream, double interference_plus_noise_power) {
    if (p_stream < 0.0) {
        throw InvalidPowerError("user_rate: negative stream power");
    }
    if (interference_plus_noise_power <= 0.0) {
        throw InvalidPowerError("user_rate: interference-plus-noise power must be positive");
    }
    return std::log2(1.0 + p_stream * std::norm(gain) / interference_plus_noise_power);
}

RatePoint block_rates(const scheme::GainTable& gains, const precoding::PowerAllocation& powers,
                      scheme::SchemeVariant variant) {
    const int users = static_cast<int>(gains.p.rows());
    const auto p = scheme::effective_powers(powers, variant);
    if (p.users != users) {
        throw DimensionError("block_rates: gain table and power allocation disagree");
    }

    RatePoint point;
    point.power = p.total;
    point.per_user_rate.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        // Perfect-CSI slot: every user decodes one stream.
        double denom_p = 1.0;
        for (int i = 0; i < users; ++i) {
            if (i != k) {
                denom_p += p.p_data * std::norm(gains.p(k, i));
            }
        }
        double rate = user_rate(gains.p(k, k), p.p_data, denom_p);

        // Delayed-CSI slot: user 1 receives no message stream.
        if (k >= 1) {
            double denom_d = 1.0 + p.d_noise * std::norm(gains.d(k, 0));
            for (int i = 1; i < users; ++i) {
                if (i != k) {
                    denom_d += p.d_data * std::norm(gains.d(k, i));
                }
            }
            rate += user_rate(gains.d(k, k), p.d_data, denom_d);
        }
        point.per_user_rate[static_cast<std::size_t>(k)] = rate / 2.0;
    }
    point.sum_rate = std::accumulate(point.per_user_rate.begin(), point.per_user_rate.end(), 0.0);
    return point;
}

std::vector<int> observer_set(int target_user) {
    if (target_user < 2) {
        throw std::invalid_argument("observer_set: target user must be >= 2");
    }
    std::vector<int> observers(static_cast<std::size_t>(target_user - 1));
    std::iota(observers.begin(), observers.end(), 1);
    return observers;
}

GaussianBlockModel make_block_model(const scheme::GainTable& gains,
                                    const precoding::PowerAllocation& powers,
                                    scheme::SchemeVariant variant,
                                    std::span<const int> observers) {
    const int users = static_cast<int>(gains.p.rows());
    const auto p = scheme::effective_powers(powers, variant);
    if (p.users != users) {
        throw DimensionError("make_block_model: gain table and power allocation disagree");
    }

    GaussianBlockModel model;
    model.users = users;
    model.observers.assign(observers.begin(), observers.end());
    model.source_variance.resize(2 * users);
    for (int k = 0; k < users; ++k) {
        model.source_variance[k] = p.p_data;
    }
    for (int k = 0; k < users - 1; ++k) {
        model.source_variance[users + k] = p.d_data;
    }
    model.source_variance[2 * users - 1] = p.d_noise;

    model.observation_map =
        linalg::ComplexMatrix::Zero(2 * static_cast<Eigen::Index>(observers.size()), 2 * users);
    Eigen::Index row = 0;
    for (int j : observers) {
        if (j < 1 || j > users) {
            throw std::invalid_argument("make_block_model: observer index out of range");
        }
        // Perfect-slot output of receiver j: data streams of users 1..K.
        for (int i = 0; i < users; ++i) {
            model.observation_map(row, i) = gains.p(j - 1, i);
        }
        ++row;
        // Delayed-slot output: data streams of users 2..K plus the noise beam.
        for (int i = 1; i < users; ++i) {
            model.observation_map(row, users + i - 1) = gains.d(j - 1, i);
        }
        model.observation_map(row, 2 * users - 1) = gains.d(j - 1, 0);
        ++row;
    }
    return model;
}

double leakage_mi(const GaussianBlockModel& model, int target_user) {
    if (target_user < 2 || target_user > model.users) {
        throw std::invalid_argument("leakage_mi: target user must be in [2, K]");
    }
    const double full =
        linalg::log_det_hermitian_pd(observation_covariance(model, model.source_variance));

    Eigen::VectorXd conditioned = model.source_variance;
    conditioned[target_user - 1] = 0.0;               // perfect-slot stream
    conditioned[model.users + target_user - 2] = 0.0; // delayed-slot stream
    const double cond = linalg::log_det_hermitian_pd(observation_covariance(model, conditioned));
    return full - cond;
}

double pair_leakage(const scheme::GainTable& gains, const precoding::PowerAllocation& powers,
                    scheme::SchemeVariant variant, int target_user) {
    const auto observers = observer_set(target_user);
    return leakage_mi(make_block_model(gains, powers, variant, observers), target_user);
}

SdofFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InsufficientPointsError("fit_line: x and y lengths differ");
    }
    const int n = static_cast<int>(x.size());
    if (n < 2) {
        throw InsufficientPointsError("fit_line: need at least 2 points");
    }
    const double x_mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - x_mean) * (x[i] - x_mean);
        sxy += (x[i] - x_mean) * (y[i] - y_mean);
    }
    if (sxx == 0.0) {
        throw InsufficientPointsError("fit_line: zero spread in x");
    }

    SdofFit fit;
    fit.points_used = n;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    return fit;
}

SdofFit fit_sdof(std::span<const RatePoint> points) {
    if (points.size() < 4) {
        throw InsufficientPointsError("fit_sdof: need at least 4 SNR points, got " +
                                      std::to_string(points.size()));
    }
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& p : points) {
        x.push_back(std::log2(p.power));
        y.push_back(p.sum_rate);
    }
    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    if (*max_it - *min_it < kMinFitSpanLog2) {
        throw InsufficientPointsError("fit_sdof: SNR grid must span at least 40 dB");
    }
    return fit_line(x, y);
}

SepDraw sep_covariance_check(const channel::ChannelRealization& actual,
                             const channel::ChannelRealization& virtual_rx,
                             const precoding::BlockPrecoder& precoder,
                             scheme::SchemeVariant variant,
                             std::span<const int> conditioned_streams) {
    const int users = actual.users();
    if (virtual_rx.users() != users || precoder.users() != users) {
        throw DimensionError("sep_covariance_check: inconsistent dimensions");
    }
    const auto p = scheme::effective_powers(precoder.powers, variant);
    std::vector<bool> conditioned(static_cast<std::size_t>(users), false);
    for (int s : conditioned_streams) {
        if (s < 0 || s >= users) {
            throw std::invalid_argument("sep_covariance_check: stream index out of range");
        }
        conditioned[static_cast<std::size_t>(s)] = true;
    }

    // Conditioning on a subset of the independent sources just removes their
    // contribution; what is left is the variance of the remaining streams as
    // seen through receiver 1's row, plus unit receiver noise.
    auto conditional_variance = [&](const linalg::ComplexMatrix& h) {
        double var = 1.0;
        for (int s = 0; s < users; ++s) {
            if (conditioned[static_cast<std::size_t>(s)]) {
                continue;
            }
            const double power = s == 0 ? p.d_noise : p.d_data;
            const linalg::Complex gain =
                (h.row(0) * precoder.d_beams[static_cast<std::size_t>(s)].coeffs()).value();
            var += power * std::norm(gain);
        }
        return var;
    };

    SepDraw draw;
    draw.actual_variance = conditional_variance(actual.h);
    draw.virtual_variance = conditional_variance(virtual_rx.h);
    draw.deviation = std::abs(draw.actual_variance - draw.virtual_variance);
    return draw;
}

SepStats sep_equivalence(int users, double total_power, precoding::PowerPolicy policy,
                         scheme::SchemeVariant variant, std::span<const int> conditioned_streams,
                         int draws, std::uint64_t seed) {
    if (draws < 2) {
        throw std::invalid_argument("sep_equivalence: need at least 2 draws");
    }
    // Fixed transmit statistics: one design channel pins the delayed-slot
    // beams; only receiver 1's row (and its virtual copy) is redrawn.
    const auto design = channel::sample_channel(users, seed, 0);
    const auto d_view = channel::tx_view(design, channel::CsitState::kDFirst);
    precoding::BlockPrecoder precoder;
    precoder.d_beams = precoding::build_d_state_precoder(d_view);
    precoder.powers = precoding::allocate_powers(users, total_power, policy);
    // sep only touches d_beams; p_beams just needs matching arity for users().
    precoder.p_beams = precoder.d_beams;

    auto engine = rng::engine_for(seed, rng::Domain::kSepDraw);
    std::normal_distribution<double> gauss(0.0, kComponentSigma);
    auto fresh_row = [&](linalg::ComplexMatrix& h) {
        for (int c = 0; c < users; ++c) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            h(0, c) = linalg::Complex(re, im);
        }
    };

    channel::ChannelRealization actual = design;
    channel::ChannelRealization virtual_rx = design;
    MeanAccumulator acc_actual;
    MeanAccumulator acc_virtual;
    for (int i = 0; i < draws; ++i) {
        fresh_row(actual.h);
        fresh_row(virtual_rx.h);
        const SepDraw draw =
            sep_covariance_check(actual, virtual_rx, precoder, variant, conditioned_streams);
        acc_actual.add(draw.actual_variance);
        acc_virtual.add(draw.virtual_variance);
    }

    SepStats stats;
    stats.draws = draws;
    stats.actual_mean = acc_actual.mean();
    stats.virtual_mean = acc_virtual.mean();
    stats.deviation = std::abs(stats.actual_mean - stats.virtual_mean);
    stats.deviation_se = std::sqrt(acc_actual.standard_error() * acc_actual.standard_error() +
                                   acc_virtual.standard_error() * acc_virtual.standard_error());
    stats.within_3se = stats.deviation <= 3.0 * stats.deviation_se;
    return stats;
}

PowerAudit power_audit(int users, double total_power, precoding::PowerPolicy policy,
                       scheme::SchemeVariant variant, int blocks, std::uint64_t seed) {
    if (blocks < 2) {
        throw std::invalid_argument("power_audit: need at least 2 blocks");
    }
    const auto powers = precoding::allocate_powers(users, total_power, policy);
    const std::uint64_t stream = rng::derive_seed(seed, rng::Domain::kAudit);

    MeanAccumulator acc_p;
    MeanAccumulator acc_d;
    for (int i = 0; i < blocks; ++i) {
        const auto h_p = channel::sample_channel(users, stream, 2 * i);
        const auto h_d = channel::sample_channel(users, stream, 2 * i + 1);
        const auto p_view = channel::tx_view(h_p, channel::CsitState::kPAll);
        const auto d_view = channel::tx_view(h_d, channel::CsitState::kDFirst);
        const auto precoder = precoding::build_block_precoder(p_view, d_view, powers);
        const auto symbols = scheme::sample_symbols(users, powers, variant, stream, i);
        const auto tx = scheme::transmit_block(precoder, symbols, variant);
        acc_p.add(tx.x_p.squaredNorm());
        acc_d.add(tx.x_d.squaredNorm());
    }

    PowerAudit audit;
    audit.blocks = blocks;
    audit.p_slot_mean = acc_p.mean();
    audit.d_slot_mean = acc_d.mean();
    audit.p_slot_se = acc_p.standard_error();
    audit.d_slot_se = acc_d.standard_error();
    audit.over_budget = audit.p_slot_mean > total_power + 3.0 * audit.p_slot_se ||
                        audit.d_slot_mean > total_power + 3.0 * audit.d_slot_se;
    return audit;
}

} // namespace sdofsim::analysis
