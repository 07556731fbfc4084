#include "wsnloc/config_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "wsnloc/propagation.hpp"

namespace wsnloc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument(fmt::format("{}: '{}' is not a valid number", key, value));
    }
    return v;
}

struct ParseState {
    ScenarioConfig config;
    std::string preset = "default";
    bool rx_threshold_set = false;
    bool cs_threshold_set = false;
};

using Setter = std::function<void(ParseState&, std::string_view key, std::string_view value)>;

template <typename T, typename Field>
Setter number(Field field) {
    return [field](ParseState& s, std::string_view key, std::string_view value) {
        field(s.config) = parse_number<T>(key, value);
    };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"plane_width", number<double>([](ScenarioConfig& c) -> double& { return c.plane.width; })},
        {"plane_height", number<double>([](ScenarioConfig& c) -> double& { return c.plane.height; })},
        {"node_count", number<int>([](ScenarioConfig& c) -> int& { return c.node_count; })},
        {"anchor_density", number<double>([](ScenarioConfig& c) -> double& { return c.anchor_density; })},
        {"rng_seed", number<std::uint64_t>([](ScenarioConfig& c) -> std::uint64_t& { return c.rng_seed; })},
        {"channel", [](ParseState& s, std::string_view, std::string_view v) {
             s.config.channel.kind = parse_channel(v);
         }},
        {"mode", [](ParseState& s, std::string_view, std::string_view v) { s.config.mode = parse_mode(v); }},
        {"consideration", [](ParseState& s, std::string_view, std::string_view v) {
             s.config.consideration = parse_consideration(v);
         }},
        {"preset", [](ParseState& s, std::string_view, std::string_view v) {
             if (v != "default" && v != "table2-raw") {
                 throw std::invalid_argument(
                     fmt::format("preset: unknown preset '{}' (expected default|table2-raw)", v));
             }
             s.preset = std::string(v);
         }},
        {"sigma_shadowing_db",
         number<double>([](ScenarioConfig& c) -> double& { return c.channel.sigma_shadowing_db; })},
        {"sigma_rssi_db", number<double>([](ScenarioConfig& c) -> double& { return c.channel.sigma_rssi_db; })},
        {"nominal_range_m", number<double>([](ScenarioConfig& c) -> double& { return c.radio.nominal_range_m; })},
        {"data_rate_bps", number<double>([](ScenarioConfig& c) -> double& { return c.radio.data_rate_bps; })},
        {"tx_power_dbm", number<double>([](ScenarioConfig& c) -> double& { return c.radio.tx_power_dbm; })},
        {"carrier_frequency_hz",
         number<double>([](ScenarioConfig& c) -> double& { return c.radio.carrier_frequency_hz; })},
        {"reception_threshold_dbm", [](ParseState& s, std::string_view k, std::string_view v) {
             s.config.radio.reception_threshold_dbm = parse_number<double>(k, v);
             s.rx_threshold_set = true;
         }},
        {"carrier_sense_threshold_dbm", [](ParseState& s, std::string_view k, std::string_view v) {
             s.config.radio.carrier_sense_threshold_dbm = parse_number<double>(k, v);
             s.cs_threshold_set = true;
         }},
        {"p_tx_mw", number<double>([](ScenarioConfig& c) -> double& { return c.energy.p_tx_mw; })},
        {"p_rx_idle_mw", number<double>([](ScenarioConfig& c) -> double& { return c.energy.p_rx_idle_mw; })},
        {"p_sleep_uw", [](ParseState& s, std::string_view k, std::string_view v) {
             s.config.energy.p_sleep_mw = parse_number<double>(k, v) / 1000.0;
         }},
        {"e_lateration_mj", number<double>([](ScenarioConfig& c) -> double& { return c.energy.e_lateration_mj; })},
        {"e_bbox_mj", number<double>([](ScenarioConfig& c) -> double& { return c.energy.e_bbox_mj; })},
        {"header_bytes", number<int>([](ScenarioConfig& c) -> int& { return c.mac.header_bytes; })},
        {"beacon_payload_bytes", number<int>([](ScenarioConfig& c) -> int& { return c.mac.beacon_payload_bytes; })},
        {"contention_window", number<int>([](ScenarioConfig& c) -> int& { return c.mac.contention_window; })},
        {"slot_time_us", [](ParseState& s, std::string_view k, std::string_view v) {
             s.config.mac.slot_time_s = parse_number<double>(k, v) * 1e-6;
         }},
        {"beacons_per_anchor", number<int>([](ScenarioConfig& c) -> int& { return c.mac.beacons_per_anchor; })},
        {"beacon_interval", number<double>([](ScenarioConfig& c) -> double& { return c.mac.beacon_interval_s; })},
    };
    return table;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
    ParseState state;
    std::istringstream in{std::string(text)};
    std::string raw;
    for (int lineno = 1; std::getline(in, raw); ++lineno) {
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
        }
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(fmt::format("line {}: unknown key '{}'", lineno, key));
        }
        try {
            it->second(state, key, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("line {}: {}", lineno, e.what()));
        }
    }

    auto& c = state.config;
    if (overrides.anchor_density) c.anchor_density = *overrides.anchor_density;
    if (overrides.rng_seed) c.rng_seed = *overrides.rng_seed;
    if (overrides.channel) c.channel.kind = *overrides.channel;
    if (overrides.mode) c.mode = *overrides.mode;
    if (overrides.preset) {
        if (*overrides.preset != "default" && *overrides.preset != "table2-raw") {
            throw ConfigError(fmt::format("preset: unknown preset '{}' (expected default|table2-raw)",
                                          *overrides.preset));
        }
        state.preset = *overrides.preset;
    }

    try {
        if (state.preset == "table2-raw") {
            apply_table2_raw(c.radio);
        } else if (!state.rx_threshold_set && !state.cs_threshold_set &&
                   c.radio.nominal_range_m > 0.0 && c.radio.carrier_frequency_hz > 0.0) {
            calibrate_thresholds(c.radio);
        }
        if (state.rx_threshold_set && !state.cs_threshold_set) {
            c.radio.carrier_sense_threshold_dbm = c.radio.reception_threshold_dbm;
        }
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
    if (path.empty()) return parse_config("", overrides);
    std::ifstream file(path);
    if (!file) {
        throw ConfigIoError(fmt::format("cannot read config file '{}'", path.string()));
    }
    std::ostringstream text;
    text << file.rdbuf();
    return parse_config(text.str(), overrides);
}

}  // namespace wsnloc
