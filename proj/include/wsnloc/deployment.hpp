#pragma once

#include <iosfwd>
#include <vector>

#include "wsnloc/config.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

struct Deployment {
    std::vector<NodeState> nodes;
    std::size_t anchor_count = 0;
};

/// ceil(density * node_count), computed so that e.g. 0.3 * 100 gives 30.
std::size_t anchor_count_for(double density, int node_count);

/// Uniform i.i.d. positions on the plane; anchors are a uniform sample
/// without replacement. Throws std::invalid_argument on a bad density or
/// node count.
Deployment deploy(const ScenarioConfig& config, RandomStream& rng);

/// CSV with header `node_id,role,x,y`.
void write_topology_csv(std::ostream& out, const Deployment& deployment);

}  // namespace wsnloc
