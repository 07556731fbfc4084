#include "wsnloc/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnloc {

namespace {

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw std::invalid_argument(std::string(field) + ": must be " + constraint);
    }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate(const ScenarioConfig& c) {
    require(positive(c.plane.width), "plane_width", "> 0");
    require(positive(c.plane.height), "plane_height", "> 0");
    require(c.node_count >= 1, "node_count", ">= 1");
    require(std::isfinite(c.anchor_density) && c.anchor_density >= 0.0 && c.anchor_density <= 1.0,
            "anchor_density", "in [0, 1]");

    require(std::isfinite(c.radio.tx_power_dbm), "tx_power_dbm", "finite");
    require(positive(c.radio.data_rate_bps), "data_rate_bps", "> 0");
    require(positive(c.radio.carrier_frequency_hz), "carrier_frequency_hz", "> 0");
    require(positive(c.radio.nominal_range_m), "nominal_range_m", "> 0");
    require(std::isfinite(c.radio.reception_threshold_dbm) &&
                c.radio.reception_threshold_dbm <= c.radio.tx_power_dbm,
            "reception_threshold_dbm", "<= tx_power_dbm");
    require(std::isfinite(c.radio.carrier_sense_threshold_dbm), "carrier_sense_threshold_dbm",
            "finite");

    require(c.mac.header_bytes >= 0, "header_bytes", ">= 0");
    require(c.mac.beacon_payload_bytes >= 0, "beacon_payload_bytes", ">= 0");
    require(c.mac.header_bytes + c.mac.beacon_payload_bytes > 0, "beacon_payload_bytes",
            "> 0 together with header_bytes");
    require(c.mac.contention_window >= 1, "contention_window", ">= 1");
    require(positive(c.mac.slot_time_s), "slot_time_us", "> 0");
    require(c.mac.beacons_per_anchor >= 1, "beacons_per_anchor", ">= 1");
    require(positive(c.mac.beacon_interval_s), "beacon_interval", "> 0");

    require(positive(c.energy.p_tx_mw), "p_tx_mw", "> 0");
    require(positive(c.energy.p_rx_idle_mw), "p_rx_idle_mw", "> 0");
    require(non_negative(c.energy.p_sleep_mw), "p_sleep_mw", ">= 0");
    require(non_negative(c.energy.e_lateration_mj), "e_lateration_mj", ">= 0");
    require(non_negative(c.energy.e_bbox_mj), "e_bbox_mj", ">= 0");

    require(non_negative(c.channel.sigma_shadowing_db), "sigma_shadowing_db", ">= 0");
    require(non_negative(c.channel.sigma_rssi_db), "sigma_rssi_db", ">= 0");
}

}  // namespace wsnloc
