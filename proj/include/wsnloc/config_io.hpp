#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wsnloc/config.hpp"

namespace wsnloc {

/// Bad configuration content: syntax, unknown key or failed validation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The file could not be read.
class ConfigIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Command-line values; each one beats the file.
struct ConfigOverrides {
    std::optional<double> anchor_density;
    std::optional<std::uint64_t> rng_seed;
    std::optional<ChannelKind> channel;
    std::optional<ProtocolMode> mode;
    std::optional<std::string> preset;
};

/// Parses flat `key = value` text (`#` starts a comment), applies the
/// overrides and validates. Radio thresholds are calibrated to the nominal
/// range unless set explicitly or the `table2-raw` preset is chosen.
ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// parse_config on a file's contents. An empty path means "no file".
ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

}  // namespace wsnloc
