#include "wsnloc/rng.hpp"

namespace wsnloc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t replication) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ fnv1a(label));
    return splitmix64(h ^ replication);
}

RandomStream::RandomStream(std::uint64_t seed, std::string_view label, std::uint64_t replication)
    : engine_(derive_stream_seed(seed, label, replication)) {}

double RandomStream::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomStream::normal(double mean, double stddev) {
    if (stddev == 0.0) return mean;
    return std::normal_distribution<double>(mean, stddev)(engine_);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

}  // namespace wsnloc
