#include "wsnloc/ranging.hpp"

#include <algorithm>
#include <map>

#include "wsnloc/propagation.hpp"

namespace wsnloc {

double rssi_sample(double link_power_dbm, double sigma_db, RandomStream& noise) {
    return link_power_dbm + noise.normal(0.0, sigma_db);
}

double estimate_distance(double mean_rssi_dbm, const RadioParams& radio, double max_distance_m) {
    if (mean_rssi_dbm > radio.tx_power_dbm) return kMinRangeEstimate_m;
    const double d =
        free_space_distance(radio.tx_power_dbm - mean_rssi_dbm, radio.carrier_frequency_hz);
    return std::clamp(d, kMinRangeEstimate_m, std::max(max_distance_m, kMinRangeEstimate_m));
}

RangingTable build_ranging_table(std::span<const BeaconReception> receptions,
                                 const RadioParams& radio, double max_distance_m) {
    struct Accum {
        Position payload;
        double rssi_sum = 0.0;
        std::size_t count = 0;
        double first_s = 0.0;
    };
    std::map<NodeId, Accum> by_sender;
    for (const auto& r : receptions) {
        auto [it, inserted] = by_sender.try_emplace(r.sender);
        auto& a = it->second;
        if (inserted || r.time_s < a.first_s) a.first_s = r.time_s;
        a.payload = r.payload;
        a.rssi_sum += r.rssi_dbm;
        ++a.count;
    }

    RangingTable table;
    table.reserve(by_sender.size());
    for (const auto& [sender, a] : by_sender) {
        RangingEntry e;
        e.anchor_id = sender;
        e.anchor_position = a.payload;
        e.sample_count = a.count;
        e.mean_rssi_dbm = a.rssi_sum / static_cast<double>(a.count);
        e.estimated_distance_m = estimate_distance(e.mean_rssi_dbm, radio, max_distance_m);
        e.first_heard_s = a.first_s;
        table.push_back(e);
    }
    std::stable_sort(table.begin(), table.end(), [](const RangingEntry& l, const RangingEntry& r) {
        return l.first_heard_s < r.first_heard_s;
    });
    return table;
}

}  // namespace wsnloc
