#include "wsnloc/pme.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "wsnloc/localization.hpp"

namespace wsnloc {

ProtocolDescriptor lateration_descriptor() {
    return {ProtocolKind::Lateration, LaterationProblem::kMinAnchors, LaterationProblem::kMaxAnchors,
            AccuracyClass::Fine, EnergyClass::Low};
}

ProtocolDescriptor bounding_box_descriptor() {
    return {ProtocolKind::BoundingBox, 1, std::numeric_limits<std::size_t>::max(),
            AccuracyClass::Coarse, EnergyClass::VeryLow};
}

std::vector<ProtocolDescriptor> default_registry() {
    return {lateration_descriptor(), bounding_box_descriptor()};
}

std::vector<ProtocolDescriptor> registry_for(ProtocolMode mode) {
    switch (mode) {
    case ProtocolMode::LaterationOnly:
        return {lateration_descriptor()};
    case ProtocolMode::BoundingBoxOnly:
        return {bounding_box_descriptor()};
    case ProtocolMode::Procedure:
        break;
    }
    return default_registry();
}

namespace {

// Lower rank is preferred.
int rank(const ProtocolDescriptor& d, DeploymentConsideration consideration) {
    if (consideration == DeploymentConsideration::AccuracyFirst) {
        return d.accuracy == AccuracyClass::Fine ? 0 : 1;
    }
    return d.energy == EnergyClass::VeryLow ? 0 : 1;
}

const ProtocolDescriptor* pick(const EnvironmentalConditions& env,
                               DeploymentConsideration consideration,
                               std::span<const ProtocolDescriptor> registry) {
    if (registry.empty()) {
        throw std::invalid_argument("select_protocol: empty protocol registry");
    }
    const ProtocolDescriptor* best = nullptr;
    for (const auto& d : registry) {
        if (d.min_anchors > env.connected_anchors) continue;
        // Registry order breaks ties.
        if (best == nullptr || rank(d, consideration) < rank(*best, consideration)) best = &d;
    }
    return best;
}

}  // namespace

std::optional<ProtocolKind> select_protocol(const EnvironmentalConditions& env,
                                            DeploymentConsideration consideration,
                                            std::span<const ProtocolDescriptor> registry) {
    const auto* d = pick(env, consideration, registry);
    if (d == nullptr) return std::nullopt;
    return d->name;
}

PositionEstimate execute_lateration(std::span<const RangingEntry> connected, const Plane& plane) {
    std::vector<RangingEntry> strongest(connected.begin(), connected.end());
    std::stable_sort(strongest.begin(), strongest.end(), [](const RangingEntry& l, const RangingEntry& r) {
        return l.mean_rssi_dbm > r.mean_rssi_dbm;
    });
    if (strongest.size() > LaterationProblem::kMaxAnchors) strongest.resize(LaterationProblem::kMaxAnchors);

    std::vector<RangedAnchor> anchors;
    anchors.reserve(strongest.size());
    for (const auto& e : strongest) anchors.push_back({e.anchor_position, e.estimated_distance_m});
    const LaterationProblem problem(std::move(anchors));
    const auto solution = solve_lateration(problem, plane);

    PositionEstimate est;
    est.position = solution.position;
    est.protocol = ProtocolKind::Lateration;
    est.anchors_used = strongest.size();
    return est;
}

PositionEstimate execute_bounding_box(std::span<const RangingEntry> connected, const Plane& plane,
                                      double range_m) {
    std::vector<BoxAnchor> anchors;
    anchors.reserve(connected.size());
    for (const auto& e : connected) anchors.push_back({e.anchor_position, range_m, e.mean_rssi_dbm});
    const auto result = bounding_box(anchors, plane);

    PositionEstimate est;
    est.position = result.estimate;
    est.protocol = ProtocolKind::BoundingBox;
    est.location_area = result.area;
    est.anchors_used = result.anchors_used;
    return est;
}

ProcedureOutcome run_procedure(std::span<const RangingEntry> table,
                               std::span<const ProtocolDescriptor> registry,
                               const ProcedureParams& params) {
    ProcedureOutcome out;
    for (std::size_t k = 1; k <= table.size(); ++k) {
        const auto* chosen = pick({k}, params.consideration, registry);
        if (chosen == nullptr) continue;
        // Diminishing returns: past max_useful_anchors the protocol has
        // already run on its best anchor set.
        if (k > chosen->max_useful_anchors) continue;

        const auto connected = table.first(k);
        if (chosen->name == ProtocolKind::Lateration) {
            out.estimate = execute_lateration(connected, params.plane);
            ++out.lateration_executions;
        } else {
            out.estimate = execute_bounding_box(connected, params.plane, params.nominal_range_m);
            ++out.bbox_executions;
        }
        out.executions.push_back(chosen->name);
    }
    return out;
}

}  // namespace wsnloc
