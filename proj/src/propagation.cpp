#include "wsnloc/propagation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace wsnloc {

double path_loss_free_space(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0)) {
        throw std::invalid_argument("path_loss_free_space: distance must be > 0");
    }
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / kSpeedOfLight);
}

double free_space_distance(double loss_db, double frequency_hz) {
    return kSpeedOfLight / (4.0 * std::numbers::pi * frequency_hz) * std::pow(10.0, loss_db / 20.0);
}

void calibrate_thresholds(RadioParams& radio) {
    radio.reception_threshold_dbm =
        radio.tx_power_dbm - path_loss_free_space(radio.nominal_range_m, radio.carrier_frequency_hz);
    radio.carrier_sense_threshold_dbm = radio.reception_threshold_dbm;
}

void apply_table2_raw(RadioParams& radio) {
    radio.reception_threshold_dbm = -148.0;
    radio.carrier_sense_threshold_dbm = -148.0;
}

ShadowingField::ShadowingField(std::size_t node_count, double sigma_db, RandomStream& rng)
    : node_count_(node_count), loss_(node_count * (node_count > 0 ? node_count - 1 : 0) / 2) {
    for (auto& l : loss_) l = rng.normal(0.0, sigma_db);
}

std::size_t ShadowingField::index(NodeId a, NodeId b) const {
    if (a == b || a >= node_count_ || b >= node_count_) {
        throw std::out_of_range("ShadowingField: invalid node pair");
    }
    if (a > b) std::swap(a, b);
    // Row-major upper triangle without the diagonal.
    return a * (2 * node_count_ - a - 1) / 2 + (b - a - 1);
}

double ShadowingField::loss_db(NodeId a, NodeId b) const { return loss_[index(a, b)]; }

void ShadowingField::set_loss_db(NodeId a, NodeId b, double loss_db) { loss_[index(a, b)] = loss_db; }

double received_power(const Position& sender, const Position& receiver, ChannelKind channel,
                      double pair_loss_db, const RadioParams& radio) {
    const double d = distance(sender, receiver);
    if (d == 0.0) {
        throw std::invalid_argument("received_power: sender and receiver coincide");
    }
    double p = radio.tx_power_dbm - path_loss_free_space(d, radio.carrier_frequency_hz);
    if (channel == ChannelKind::Shadowing) p -= pair_loss_db;
    return p;
}

LinkBudget::LinkBudget(const std::vector<NodeState>& nodes, ChannelKind channel,
                       const ShadowingField* shadowing, const RadioParams& radio)
    : n_(nodes.size()),
      rx_threshold_(radio.reception_threshold_dbm),
      cs_threshold_(radio.carrier_sense_threshold_dbm),
      power_(n_ * n_, -std::numeric_limits<double>::infinity()) {
    if (channel == ChannelKind::Shadowing && (shadowing == nullptr || shadowing->node_count() != n_)) {
        throw std::invalid_argument("LinkBudget: shadowing channel needs a field for every node");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double loss = channel == ChannelKind::Shadowing ? shadowing->loss_db(i, j) : 0.0;
            const double p = received_power(nodes[i].true_position, nodes[j].true_position, channel,
                                            loss, radio);
            power_[i * n_ + j] = p;
            power_[j * n_ + i] = p;
        }
    }
}

}  // namespace wsnloc
