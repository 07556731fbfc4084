#pragma once

#include <span>

#include "wsnloc/config.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

inline constexpr double kMinRangeEstimate_m = 0.01;

/// One noisy RSSI reading of a link: link power plus Normal(0, sigma^2).
double rssi_sample(double link_power_dbm, double sigma_db, RandomStream& noise);

/// Inverts the free-space model at `mean_rssi_dbm`, whatever the real
/// channel is. The result is clamped to [0.01 m, max_distance_m]; readings
/// stronger than tx power map to the lower clamp.
double estimate_distance(double mean_rssi_dbm, const RadioParams& radio, double max_distance_m);

/// Groups receptions by sender, averaging RSSI in dBm. Entries are ordered
/// by the time of each sender's first decoded beacon (ties by sender id).
RangingTable build_ranging_table(std::span<const BeaconReception> receptions,
                                 const RadioParams& radio, double max_distance_m);

}  // namespace wsnloc
