#pragma once

#include <cstddef>
#include <vector>

#include "wsnloc/config.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Friis free-space loss 20*log10(4*pi*d*f/c) in dB. Throws on d <= 0.
double path_loss_free_space(double distance_m, double frequency_hz);

/// Inverse of path_loss_free_space.
double free_space_distance(double loss_db, double frequency_hz);

/// Sets both thresholds to tx_power - PL(nominal_range) so the free-space
/// communication range equals the nominal range.
void calibrate_thresholds(RadioParams& radio);

/// The hardware-table values: -148 dBm for both thresholds.
void apply_table2_raw(RadioParams& radio);

/// Per-pair shadowing loss in dB, symmetric and fixed for one replication.
class ShadowingField {
public:
    ShadowingField() = default;
    /// Draws one Normal(0, sigma^2) value per unordered pair {i < j}, in
    /// lexicographic pair order.
    ShadowingField(std::size_t node_count, double sigma_db, RandomStream& rng);

    double loss_db(NodeId a, NodeId b) const;
    void set_loss_db(NodeId a, NodeId b, double loss_db);
    std::size_t node_count() const { return node_count_; }

private:
    std::size_t index(NodeId a, NodeId b) const;

    std::size_t node_count_ = 0;
    std::vector<double> loss_;
};

/// Received power in dBm. The shadowing term applies only when channel is
/// Shadowing; `pair_loss_db` is loss(i, j) for the link.
double received_power(const Position& sender, const Position& receiver, ChannelKind channel,
                      double pair_loss_db, const RadioParams& radio);

inline bool is_audible(double power_dbm, const RadioParams& radio) {
    return power_dbm >= radio.reception_threshold_dbm;
}

/// Dense matrix of received power for every directed link i -> j; the
/// diagonal is -inf.
class LinkBudget {
public:
    LinkBudget(const std::vector<NodeState>& nodes, ChannelKind channel,
               const ShadowingField* shadowing, const RadioParams& radio);

    double power_dbm(NodeId from, NodeId to) const { return power_[from * n_ + to]; }
    bool audible(NodeId from, NodeId to) const { return power_dbm(from, to) >= rx_threshold_; }
    bool sensed(NodeId from, NodeId to) const { return power_dbm(from, to) >= cs_threshold_; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    double rx_threshold_;
    double cs_threshold_;
    std::vector<double> power_;
};

}  // namespace wsnloc
