#include "wsnloc/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsnloc {

Position Plane::clamp(const Position& p) const {
    return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
}

std::string_view to_string(Role role) {
    return role == Role::Anchor ? "anchor" : "unknown";
}

std::string_view to_string(ChannelKind channel) {
    return channel == ChannelKind::FreeSpace ? "freespace" : "shadowing";
}

std::string_view to_string(ProtocolKind protocol) {
    return protocol == ProtocolKind::Lateration ? "lateration" : "bbox";
}

std::string_view to_string(ProtocolMode mode) {
    switch (mode) {
    case ProtocolMode::LaterationOnly:
        return "lateration";
    case ProtocolMode::BoundingBoxOnly:
        return "bbox";
    case ProtocolMode::Procedure:
        return "pme";
    }
    return "?";
}

std::string_view to_string(DeploymentConsideration consideration) {
    return consideration == DeploymentConsideration::AccuracyFirst ? "accuracy-first"
                                                                   : "lifetime-first";
}

ChannelKind parse_channel(std::string_view text) {
    if (text == "freespace") return ChannelKind::FreeSpace;
    if (text == "shadowing") return ChannelKind::Shadowing;
    throw std::invalid_argument("unknown channel '" + std::string(text) +
                                "' (expected freespace|shadowing)");
}

ProtocolMode parse_mode(std::string_view text) {
    if (text == "lateration") return ProtocolMode::LaterationOnly;
    if (text == "bbox" || text == "bounding-box") return ProtocolMode::BoundingBoxOnly;
    if (text == "pme" || text == "procedure") return ProtocolMode::Procedure;
    throw std::invalid_argument("unknown mode '" + std::string(text) +
                                "' (expected lateration|bbox|pme)");
}

DeploymentConsideration parse_consideration(std::string_view text) {
    if (text == "accuracy-first") return DeploymentConsideration::AccuracyFirst;
    if (text == "lifetime-first") return DeploymentConsideration::LifetimeFirst;
    throw std::invalid_argument("unknown consideration '" + std::string(text) +
                                "' (expected accuracy-first|lifetime-first)");
}

}  // namespace wsnloc
