#include "wsnloc/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace wsnloc {

std::size_t anchor_count_for(double density, int node_count) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::invalid_argument("anchor_density: must be in [0, 1]");
    }
    // Round away floating noise before ceil: 0.3 * 100 is 30.000000000000004.
    const double raw = density * node_count;
    const double snapped = std::round(raw);
    const double count = std::abs(raw - snapped) < 1e-9 ? snapped : std::ceil(raw);
    return static_cast<std::size_t>(count);
}

Deployment deploy(const ScenarioConfig& config, RandomStream& rng) {
    if (config.node_count < 1) {
        throw std::invalid_argument("node_count: must be >= 1");
    }
    const auto n = static_cast<std::size_t>(config.node_count);
    Deployment d;
    d.anchor_count = anchor_count_for(config.anchor_density, config.node_count);
    d.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& node = d.nodes[i];
        node.id = i;
        node.role = Role::Unknown;
        node.true_position.x = rng.uniform(0.0, config.plane.width);
        node.true_position.y = rng.uniform(0.0, config.plane.height);
    }

    // Partial Fisher-Yates: the first anchor_count slots are the sample.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = 0; i < d.anchor_count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
        d.nodes[order[i]].role = Role::Anchor;
    }
    return d;
}

void write_topology_csv(std::ostream& out, const Deployment& deployment) {
    out << "node_id,role,x,y\n";
    for (const auto& node : deployment.nodes) {
        out << fmt::format("{},{},{:.6f},{:.6f}\n", node.id, to_string(node.role),
                           node.true_position.x, node.true_position.y);
    }
}

}  // namespace wsnloc
