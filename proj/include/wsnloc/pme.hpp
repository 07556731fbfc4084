#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnloc/types.hpp"

namespace wsnloc {

enum class AccuracyClass { Fine, Coarse };
enum class EnergyClass { Low, VeryLow };

/// What the PME knows about a protocol.
struct ProtocolDescriptor {
    ProtocolKind name = ProtocolKind::BoundingBox;
    std::size_t min_anchors = 1;
    std::size_t max_useful_anchors = 1;  // connections past this trigger no re-execution
    AccuracyClass accuracy = AccuracyClass::Coarse;
    EnergyClass energy = EnergyClass::VeryLow;
};

ProtocolDescriptor lateration_descriptor();
ProtocolDescriptor bounding_box_descriptor();

/// Both protocols; what the procedure runs with.
std::vector<ProtocolDescriptor> default_registry();

/// The registry that reproduces a protocol mode: the full registry for
/// Procedure, a single protocol otherwise.
std::vector<ProtocolDescriptor> registry_for(ProtocolMode mode);

struct EnvironmentalConditions {
    std::size_t connected_anchors = 0;
};

/// Highest-ranked eligible protocol, or nullopt when none qualifies.
/// Throws std::invalid_argument on an empty registry.
std::optional<ProtocolKind> select_protocol(const EnvironmentalConditions& env,
                                            DeploymentConsideration consideration,
                                            std::span<const ProtocolDescriptor> registry);

struct ProcedureParams {
    Plane plane;
    double nominal_range_m = 30.0;
    DeploymentConsideration consideration = DeploymentConsideration::AccuracyFirst;
};

struct ProcedureOutcome {
    std::optional<PositionEstimate> estimate;
    std::vector<ProtocolKind> executions;  // in execution order
    std::size_t lateration_executions = 0;
    std::size_t bbox_executions = 0;
};

/// Replays a node's anchor connections in table order. After each new
/// connection the PME picks a protocol and runs it on the anchors connected
/// so far; the last estimate wins.
ProcedureOutcome run_procedure(std::span<const RangingEntry> table,
                               std::span<const ProtocolDescriptor> registry,
                               const ProcedureParams& params);

/// Lateration on the strongest (by mean RSSI) up to six entries.
PositionEstimate execute_lateration(std::span<const RangingEntry> connected, const Plane& plane);

/// Bounding-Box over every entry, each with half-width `range_m`.
PositionEstimate execute_bounding_box(std::span<const RangingEntry> connected, const Plane& plane,
                                      double range_m);

}  // namespace wsnloc
