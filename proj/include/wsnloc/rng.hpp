#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnloc {

/// Deterministic random stream keyed by (seed, label, replication).
///
/// Every consumer of randomness (deployment, shadowing, MAC backoff, RSSI
/// noise) opens its own labelled stream, so draws in one subsystem never
/// shift the sequence seen by another and replications can run in any order.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::string_view label, std::uint64_t replication = 0);

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    /// Uniform integer on [0, n - 1]. Requires n >= 1.
    std::uint64_t below(std::uint64_t n);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Mixes the key into a single 64-bit engine seed (FNV-1a over the label,
/// SplitMix64 finalisation over the combination).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t replication);

}  // namespace wsnloc
