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

#include "sdofsim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sdofsim/rng.hpp"

namespace sdofsim::sweep {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

int grid_size(const ExperimentConfig& cfg) {
    return static_cast<int>(
               std::floor((cfg.snr_stop_db - cfg.snr_start_db) / cfg.snr_step_db + 1e-9)) +
           1;
}

ordered_json point_to_json(const PointRecord& p, int users) {
    ordered_json j;
    j["snr_db"] = p.snr_db;
    j["power_linear"] = p.power_linear;
    j["sum_rate_bits"] = p.sum_rate_bits;
    for (int k = 1; k <= users; ++k) {
        j["rate_user_" + std::to_string(k)] = p.rate_user[static_cast<std::size_t>(k - 1)];
    }
    for (int k = 2; k <= users; ++k) {
        j[leakage_column_name(k)] = p.leakage[static_cast<std::size_t>(k - 2)];
    }
    j["trials"] = p.trials;
    return j;
}

} // namespace

std::string leakage_column_name(int target_user) {
    const unsigned mask = (1u << (target_user - 1)) - 1u;
    return "leakage_pair_" + std::to_string(target_user) + "_" + std::to_string(mask);
}

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

SweepResult run_sweep(const ExperimentConfig& cfg) {
    if (cfg.users < 2 || cfg.trials < 1 || cfg.snr_step_db <= 0.0 ||
        cfg.snr_stop_db <= cfg.snr_start_db) {
        throw std::invalid_argument("run_sweep: config violates invariants; "
                                    "run validate_config first");
    }

    SweepResult result;
    result.config = cfg;
    const int users = cfg.users;
    const int n_points = grid_size(cfg);
    const auto schedule = channel::make_schedule(cfg.trials, cfg.layout);

    std::vector<analysis::RatePoint> mean_points;
    mean_points.reserve(static_cast<std::size_t>(n_points));

    for (int ip = 0; ip < n_points; ++ip) {
        const double snr_db = cfg.snr_start_db + ip * cfg.snr_step_db;
        const double power = db_to_linear(snr_db);
        const auto powers = precoding::allocate_powers(users, power, cfg.power_policy);

        std::vector<double> rate_sum(static_cast<std::size_t>(users), 0.0);
        std::vector<double> leak_sum(static_cast<std::size_t>(users - 1), 0.0);
        double sum_rate_total = 0.0;

        for (int it = 0; it < cfg.trials; ++it) {
            const std::uint64_t trial_seed =
                rng::derive_seed(cfg.master_seed, rng::Domain::kSweepTrial,
                                 static_cast<std::uint64_t>(ip), static_cast<std::uint64_t>(it));
            const auto [p_slot, d_slot] = schedule.block_slots(it);
            const auto h_p = channel::sample_channel(users, trial_seed, p_slot);
            const auto h_d = channel::sample_channel(users, trial_seed, d_slot);
            const auto p_view = channel::tx_view(h_p, channel::CsitState::kPAll);
            const auto d_view = channel::tx_view(h_d, channel::CsitState::kDFirst,
                                                 std::span<const channel::ChannelRealization>(
                                                     &h_p, 1));
            const auto precoder = precoding::build_block_precoder(p_view, d_view, powers);
            const auto gains = scheme::effective_gains(precoder, h_p, h_d);

            const auto rates = analysis::block_rates(gains, powers, cfg.variant);
            for (int k = 0; k < users; ++k) {
                rate_sum[static_cast<std::size_t>(k)] +=
                    rates.per_user_rate[static_cast<std::size_t>(k)];
            }
            sum_rate_total += rates.sum_rate;
            for (int k = 2; k <= users; ++k) {
                leak_sum[static_cast<std::size_t>(k - 2)] +=
                    analysis::pair_leakage(gains, powers, cfg.variant, k);
            }
        }

        PointRecord record;
        record.snr_db = snr_db;
        record.power_linear = power;
        record.trials = cfg.trials;
        record.rate_user.resize(static_cast<std::size_t>(users));
        record.leakage.resize(static_cast<std::size_t>(users - 1));
        for (int k = 0; k < users; ++k) {
            record.rate_user[static_cast<std::size_t>(k)] =
                rate_sum[static_cast<std::size_t>(k)] / cfg.trials;
        }
        for (int k = 0; k < users - 1; ++k) {
            record.leakage[static_cast<std::size_t>(k)] =
                leak_sum[static_cast<std::size_t>(k)] / cfg.trials;
        }
        record.sum_rate_bits = sum_rate_total / cfg.trials;
        result.points.push_back(record);

        analysis::RatePoint mean_point;
        mean_point.power = power;
        mean_point.per_user_rate = record.rate_user;
        mean_point.sum_rate = record.sum_rate_bits;
        mean_points.push_back(std::move(mean_point));
    }

    auto& summary = result.summary;
    summary.reference = ReferenceTable::theoretical_slope(users);
    try {
        summary.fit = analysis::fit_sdof(mean_points);
        summary.fit_valid = true;
        summary.delta = summary.fit.slope - summary.reference;
    } catch (const InsufficientPointsError&) {
        summary.fit = analysis::SdofFit{std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN(), 0};
        summary.fit_valid = false;
        summary.delta = std::numeric_limits<double>::quiet_NaN();
    }

    std::vector<double> log2_power;
    log2_power.reserve(result.points.size());
    for (const auto& p : result.points) {
        log2_power.push_back(std::log2(p.power_linear));
    }
    summary.leakage_slopes.resize(static_cast<std::size_t>(users - 1),
                                  std::numeric_limits<double>::quiet_NaN());
    if (result.points.size() >= 2) {
        for (int k = 0; k < users - 1; ++k) {
            std::vector<double> leak;
            leak.reserve(result.points.size());
            for (const auto& p : result.points) {
                leak.push_back(p.leakage[static_cast<std::size_t>(k)]);
            }
            summary.leakage_slopes[static_cast<std::size_t>(k)] =
                analysis::fit_line(log2_power, leak).slope;
        }
    }
    return result;
}

void emit_results(const SweepResult& result, OutputFormat format, std::ostream& out) {
    const int users = result.config.users;
    if (format == OutputFormat::kCsv) {
        out << "snr_db,power_linear,sum_rate_bits";
        for (int k = 1; k <= users; ++k) {
            out << ",rate_user_" << k;
        }
        for (int k = 2; k <= users; ++k) {
            out << "," << leakage_column_name(k);
        }
        out << ",trials\n";
        for (const auto& p : result.points) {
            out << format_double(p.snr_db) << "," << format_double(p.power_linear) << ","
                << format_double(p.sum_rate_bits);
            for (double r : p.rate_user) {
                out << "," << format_double(r);
            }
            for (double l : p.leakage) {
                out << "," << format_double(l);
            }
            out << "," << p.trials << "\n";
        }
        return;
    }

    ordered_json j;
    j["points"] = ordered_json::array();
    for (const auto& p : result.points) {
        j["points"].push_back(point_to_json(p, users));
    }
    ordered_json summary;
    summary["slope"] = result.summary.fit.slope;
    summary["intercept"] = result.summary.fit.intercept;
    summary["r2"] = result.summary.fit.r_squared;
    summary["reference"] = result.summary.reference;
    summary["delta"] = result.summary.delta;
    ordered_json slopes;
    for (int k = 2; k <= users; ++k) {
        slopes[leakage_column_name(k)] =
            result.summary.leakage_slopes[static_cast<std::size_t>(k - 2)];
    }
    summary["leakage_slopes"] = slopes;
    j["summary"] = summary;
    out << j.dump(2) << "\n";
}

void emit_results(const SweepResult& result, OutputFormat format, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("emit_results: cannot open '" + path + "' for writing");
    }
    emit_results(result, format, file);
    file.flush();
    if (!file) {
        throw IoError("emit_results: write to '" + path + "' failed");
    }
}

} // namespace sdofsim::sweep
