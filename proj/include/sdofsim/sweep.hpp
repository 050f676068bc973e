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
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sdofsim/analysis.hpp"

namespace sdofsim::sweep {

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
    int users = 3;
    double snr_start_db = 60.0;
    double snr_stop_db = 140.0;
    double snr_step_db = 10.0;
    int trials = 200;
    std::uint64_t master_seed = 1;
    scheme::SchemeVariant variant = scheme::SchemeVariant::kSecureAlternating;
    channel::ScheduleLayout layout = channel::ScheduleLayout::kInterleaved;
    precoding::PowerPolicy power_policy = precoding::PowerPolicy::kHalfNoise;
    OutputFormat format = OutputFormat::kCsv;
    std::string output_path; // empty: write to stdout
};

struct ConfigError {
    std::string field;
    std::string message;
};

/// Theoretical pre-log targets the fitted slopes are compared against.
struct ReferenceTable {
    static double theoretical_slope(int users) { return (2.0 * users - 1.0) / 2.0; }
    static constexpr double kThreeUserSlope = 2.5;
};

/// Mean rates and leakage at one SNR point.
struct PointRecord {
    double snr_db = 0.0;
    double power_linear = 0.0;
    double sum_rate_bits = 0.0;
    std::vector<double> rate_user;   // index k-1 for user k
    std::vector<double> leakage;     // index k-2 for pair (k; observers 1..k-1)
    int trials = 0;
};

struct SweepSummary {
    analysis::SdofFit fit;
    bool fit_valid = false;
    double reference = 0.0;
    double delta = 0.0;                 // fitted slope minus reference
    std::vector<double> leakage_slopes; // index k-2, slope vs log2(P)
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<PointRecord> points;
    SweepSummary summary;
};

/// CSV column name of a secrecy pair: leakage_pair_<k>_<mask>, where bit j-1
/// of the mask marks observer j. The canonical pair observes users 1..k-1.
std::string leakage_column_name(int target_user);

double db_to_linear(double snr_db);

/// Builds a config from raw key/value input (config file plus flag
/// overrides). Unknown keys, parse failures and invariant violations are all
/// collected and reported together.
std::variant<ExperimentConfig, std::vector<ConfigError>> validate_config(
    const std::map<std::string, std::string>& raw);

/// Runs the configured Monte Carlo sweep: per SNR point, `trials` blocks of
/// channel draws with per-(point, trial) derived seeds; exact Gaussian rates
/// and leakage per block; least-squares pre-log fit across points. Fully
/// deterministic given the config.
SweepResult run_sweep(const ExperimentConfig& config);

/// Serializes a sweep result. CSV holds one row per point with columns
/// snr_db, power_linear, sum_rate_bits, rate_user_1..K,
/// leakage_pair_{k}_{obsmask}, trials. JSON mirrors the same per-point
/// fields plus a summary object {slope, intercept, r2, reference, delta,
/// leakage_slopes}. Numeric serialization round-trips doubles exactly.
void emit_results(const SweepResult& result, OutputFormat format, std::ostream& out);

/// Writes to a file path; throws IoError if the file cannot be written.
void emit_results(const SweepResult& result, OutputFormat format, const std::string& path);

/// Entry point behind the command-line tool; parses flags (and an optional
/// JSON config file), runs the sweep and emits results. Returns 0 on
/// success, 2 on configuration errors, 3 on I/O errors. Errors go to `err`
/// as a machine-readable JSON list.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sdofsim::sweep
