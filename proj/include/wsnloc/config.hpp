#pragma once

#include <cstdint>

#include "wsnloc/types.hpp"

namespace wsnloc {

struct RadioParams {
    double tx_power_dbm = 0.0;
    double data_rate_bps = 19200.0;
    // tx_power - PL(30 m) at 916 MHz, so the free-space range equals
    // nominal_range_m. calibrate_thresholds() recomputes it after edits.
    double reception_threshold_dbm = -61.228117789633634;
    double carrier_sense_threshold_dbm = -61.228117789633634;
    double carrier_frequency_hz = 916e6;
    double nominal_range_m = 30.0;
};

struct MacParams {
    int header_bytes = 11;
    int beacon_payload_bytes = 40;
    int contention_window = 128;
    double slot_time_s = 417e-6;
    int beacons_per_anchor = 10;
    double beacon_interval_s = 1.0;
};

struct EnergyParams {
    double p_tx_mw = 24.75;
    double p_rx_idle_mw = 13.5;
    double p_sleep_mw = 0.015;  // carried, unused: nodes never sleep
    double e_lateration_mj = 1.961;
    double e_bbox_mj = 0.0;
};

struct ChannelParams {
    ChannelKind kind = ChannelKind::FreeSpace;
    double sigma_shadowing_db = 6.0;
    double sigma_rssi_db = 2.0;
};

struct ScenarioConfig {
    Plane plane;
    int node_count = 100;
    double anchor_density = 0.3;
    RadioParams radio;
    MacParams mac;
    EnergyParams energy;
    ChannelParams channel;
    ProtocolMode mode = ProtocolMode::Procedure;
    DeploymentConsideration consideration = DeploymentConsideration::AccuracyFirst;
    std::uint64_t rng_seed = 0;
};

/// Throws std::invalid_argument naming the offending field and constraint.
void validate(const ScenarioConfig& config);

}  // namespace wsnloc
