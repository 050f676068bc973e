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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdofsim/sweep.hpp"

namespace sdofsim::sweep {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<double> parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<long long> parse_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    try {
        std::size_t pos = 0;
        if (!s.empty() && s[0] == '-') {
            return std::nullopt;
        }
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void emit_error_list(std::ostream& err, const std::vector<ConfigError>& errors) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : errors) {
        list.push_back({{"field", e.field}, {"message", e.message}});
    }
    err << list.dump() << "\n";
}

} // namespace

std::variant<ExperimentConfig, std::vector<ConfigError>> validate_config(
    const std::map<std::string, std::string>& raw) {
    ExperimentConfig cfg;
    std::vector<ConfigError> errors;
    auto fail = [&errors](const std::string& field, const std::string& message) {
        errors.push_back(ConfigError{field, message});
    };

    for (const auto& [key, value] : raw) {
        if (key == "users") {
            if (auto v = parse_int(value)) {
                cfg.users = static_cast<int>(*v);
            } else {
                fail(key, "not an integer: '" + value + "'");
            }
        } else if (key == "snr_start_db") {
            if (auto v = parse_double(value)) {
                cfg.snr_start_db = *v;
            } else {
                fail(key, "not a number: '" + value + "'");
            }
        } else if (key == "snr_stop_db") {
            if (auto v = parse_double(value)) {
                cfg.snr_stop_db = *v;
            } else {
                fail(key, "not a number: '" + value + "'");
            }
        } else if (key == "snr_step_db") {
            if (auto v = parse_double(value)) {
                cfg.snr_step_db = *v;
            } else {
                fail(key, "not a number: '" + value + "'");
            }
        } else if (key == "trials") {
            if (auto v = parse_int(value)) {
                cfg.trials = static_cast<int>(*v);
            } else {
                fail(key, "not an integer: '" + value + "'");
            }
        } else if (key == "seed") {
            if (auto v = parse_u64(value)) {
                cfg.master_seed = *v;
            } else {
                fail(key, "not an unsigned 64-bit integer: '" + value + "'");
            }
        } else if (key == "variant") {
            const std::string v = to_lower(value);
            if (v == "secure" || v == "secure_alternating") {
                cfg.variant = scheme::SchemeVariant::kSecureAlternating;
            } else if (v == "baseline" || v == "no_noise_baseline" || v == "no-noise") {
                cfg.variant = scheme::SchemeVariant::kNoNoiseBaseline;
            } else {
                fail(key, "expected 'secure' or 'baseline', got '" + value + "'");
            }
        } else if (key == "layout") {
            const std::string v = to_lower(value);
            if (v == "interleaved") {
                cfg.layout = channel::ScheduleLayout::kInterleaved;
            } else if (v == "contiguous") {
                cfg.layout = channel::ScheduleLayout::kContiguous;
            } else {
                fail(key, "expected 'interleaved' or 'contiguous', got '" + value + "'");
            }
        } else if (key == "power_policy") {
            const std::string v = to_lower(value);
            if (v == "half-noise" || v == "half_noise") {
                cfg.power_policy = precoding::PowerPolicy::kHalfNoise;
            } else if (v == "equal-split" || v == "equal_split") {
                cfg.power_policy = precoding::PowerPolicy::kEqualSplit;
            } else {
                fail(key, "expected 'half-noise' or 'equal-split', got '" + value + "'");
            }
        } else if (key == "format") {
            const std::string v = to_lower(value);
            if (v == "csv") {
                cfg.format = OutputFormat::kCsv;
            } else if (v == "json") {
                cfg.format = OutputFormat::kJson;
            } else {
                fail(key, "expected 'csv' or 'json', got '" + value + "'");
            }
        } else if (key == "out") {
            cfg.output_path = value;
        } else {
            fail(key, "unknown configuration key");
        }
    }

    if (cfg.users < 2) {
        fail("users", "users must be >= 2");
    }
    if (cfg.snr_stop_db <= cfg.snr_start_db) {
        fail("snr_stop_db", "snr_stop_db must exceed snr_start_db");
    }
    if (cfg.snr_step_db <= 0.0) {
        fail("snr_step_db", "snr_step_db must be positive");
    }
    if (cfg.trials < 1) {
        fail("trials", "trials must be >= 1");
    }

    if (!errors.empty()) {
        return errors;
    }
    return cfg;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo sweep of a zero-forcing + artificial-noise downlink "
                 "transmission scheme: per-SNR rates, leakage, and pre-log slopes"};
    app.get_formatter()->column_width(28);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override file values)");

    // Flag values are collected as raw strings and validated together, so a
    // bad combination reports every problem at once.
    struct FlagSpec {
        const char* flag;
        const char* key;
        const char* help;
    };
    const FlagSpec specs[] = {
        {"--users", "users", "number of receivers K (>= 2)"},
        {"--snr-start-db", "snr_start_db", "first SNR point in dB"},
        {"--snr-stop-db", "snr_stop_db", "last SNR point in dB"},
        {"--snr-step-db", "snr_step_db", "SNR grid step in dB"},
        {"--trials", "trials", "channel draws per SNR point"},
        {"--seed", "seed", "master seed (unsigned 64-bit)"},
        {"--variant", "variant", "'secure' or 'baseline' (no artificial noise)"},
        {"--layout", "layout", "'interleaved' or 'contiguous' slot layout"},
        {"--format", "format", "'csv' or 'json'"},
        {"--out", "out", "output path (default: stdout)"},
    };
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_options;
    for (const auto& spec : specs) {
        flag_options[spec.key] = app.add_option(spec.flag, flag_values[spec.key], spec.help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error_list(err, {ConfigError{"argv", e.what()}});
        return 2;
    }

    std::map<std::string, std::string> raw;
    if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) {
            emit_error_list(err, {ConfigError{"config", "cannot read '" + config_path + "'"}});
            return 2;
        }
        nlohmann::json parsed;
        try {
            file >> parsed;
        } catch (const nlohmann::json::exception& e) {
            emit_error_list(err, {ConfigError{"config", e.what()}});
            return 2;
        }
        if (!parsed.is_object()) {
            emit_error_list(err, {ConfigError{"config", "config file must hold a JSON object"}});
            return 2;
        }
        for (const auto& [key, value] : parsed.items()) {
            raw[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
    }
    for (const auto& [key, option] : flag_options) {
        if (option->count() > 0) {
            raw[key] = flag_values[key];
        }
    }

    auto validated = validate_config(raw);
    if (std::holds_alternative<std::vector<ConfigError>>(validated)) {
        emit_error_list(err, std::get<std::vector<ConfigError>>(validated));
        return 2;
    }
    const auto& cfg = std::get<ExperimentConfig>(validated);

    try {
        const SweepResult result = run_sweep(cfg);
        if (cfg.output_path.empty()) {
            emit_results(result, cfg.format, out);
        } else {
            emit_results(result, cfg.format, cfg.output_path);
        }
    } catch (const IoError& e) {
        emit_error_list(err, {ConfigError{"out", e.what()}});
        return 3;
    }
    return 0;
}

} // namespace sdofsim::sweep
