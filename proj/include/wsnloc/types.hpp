#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsnloc {

/// A point on the 2-D testing plane, in meters.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

using NodeId = std::size_t;

enum class Role { Anchor, Unknown };

enum class ChannelKind { FreeSpace, Shadowing };

enum class ProtocolKind { Lateration, BoundingBox };

/// Which protocols a replication may use. `Procedure` lets the PME pick.
enum class ProtocolMode { LaterationOnly, BoundingBoxOnly, Procedure };

enum class DeploymentConsideration { AccuracyFirst, LifetimeFirst };

/// Axis-aligned rectangle of candidate positions.
struct LocationArea {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool empty() const { return x_min > x_max || y_min > y_max; }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    Position center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }
    bool contains(const Position& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    friend bool operator==(const LocationArea&, const LocationArea&) = default;
};

struct Plane {
    double width = 100.0;
    double height = 100.0;

    Position clamp(const Position& p) const;
    bool contains(const Position& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
    double diagonal() const { return std::hypot(width, height); }
    LocationArea area() const { return {0.0, width, 0.0, height}; }
};

struct PositionEstimate {
    Position position;
    ProtocolKind protocol = ProtocolKind::BoundingBox;
    std::optional<LocationArea> location_area;
    std::size_t anchors_used = 0;
};

/// A successfully decoded beacon as seen by one receiver.
struct BeaconReception {
    double time_s = 0.0;  // end of the frame's airtime
    NodeId sender = 0;
    Position payload;  // sender's advertised position
    double rssi_dbm = 0.0;
};

/// One anchor's aggregated beacon readings at a receiver.
struct RangingEntry {
    NodeId anchor_id = 0;
    Position anchor_position;
    double mean_rssi_dbm = 0.0;
    std::size_t sample_count = 0;
    double estimated_distance_m = 0.0;
    double first_heard_s = 0.0;
};

/// Entries are kept in connection order (first decoded beacon).
using RangingTable = std::vector<RangingEntry>;

struct EnergyLedger {
    double tx_time_s = 0.0;
    double listen_time_s = 0.0;
    std::size_t lateration_executions = 0;
    double total_mj = 0.0;
};

struct NodeState {
    NodeId id = 0;
    Role role = Role::Unknown;
    Position true_position;
    RangingTable ranging_table;
    std::optional<PositionEstimate> estimate;
    EnergyLedger energy;
};

std::string_view to_string(Role role);
std::string_view to_string(ChannelKind channel);
std::string_view to_string(ProtocolKind protocol);
std::string_view to_string(ProtocolMode mode);
std::string_view to_string(DeploymentConsideration consideration);

// Parsers throw std::invalid_argument on unknown names.
ChannelKind parse_channel(std::string_view text);
ProtocolMode parse_mode(std::string_view text);
DeploymentConsideration parse_consideration(std::string_view text);

}  // namespace wsnloc
