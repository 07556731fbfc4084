#pragma once

#include <cstddef>

#include "wsnloc/config.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

/// Bills one node for the beacon phase and its algorithm runs. The node
/// transmits for `tx_time_s` and listens for the rest of the phase; each
/// Lateration run costs e_lateration_mj, each Bounding-Box run e_bbox_mj.
/// Throws std::invalid_argument if tx_time_s exceeds the phase duration.
EnergyLedger charge_node(double tx_time_s, double phase_duration_s, std::size_t lateration_executions,
                         std::size_t bbox_executions, const EnergyParams& params);

}  // namespace wsnloc
