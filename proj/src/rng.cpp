#include "vsa/rng.hpp"

#include <cmath>

namespace vsa {

namespace {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

SeedSpec& SeedSpec::label(std::string_view s) {
    labels.push_back(fnv1a64(s));
    return *this;
}

SeedSpec& SeedSpec::label(std::uint64_t v) {
    // Tag integer labels so label(5) and label("5") stay distinct.
    labels.push_back(mix64(v ^ 0xA5A5A5A5A5A5A5A5ull));
    return *this;
}

Stream derive_stream(const SeedSpec& seed) {
    std::uint64_t state = mix64(seed.base_seed);
    for (std::uint64_t l : seed.labels) {
        state = mix64(state ^ mix64(l));
    }
    return Stream(state);
}

std::uint64_t Stream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Stream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform_pm1() {
    return 2.0 * uniform01() - 1.0;
}

double Stream::sign() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

double Stream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u, v, s;
    do {
        u = uniform_pm1();
        v = uniform_pm1();
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
}

std::uint64_t Stream::index(std::uint64_t n) {
    // Lemire's multiply-shift with rejection of the biased low range.
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        const std::uint64_t r = next_u64();
        const unsigned __int128 m = static_cast<unsigned __int128>(r) * n;
        const std::uint64_t low = static_cast<std::uint64_t>(m);
        if (low >= threshold) {
            return static_cast<std::uint64_t>(m >> 64);
        }
    }
}

}  // namespace vsa
