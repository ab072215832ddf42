#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace vsa {

// Deterministic, counter-based randomness. A stream is identified by a base
// seed plus an ordered list of labels (experiment name, model, dimension,
// trial, role). Distinct label lists give independent streams; the same list
// gives the same draws on every run and under any worker count, which is what
// makes parallel trials reproduce byte-identical output.
struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> labels;

    SeedSpec& label(std::string_view s);
    SeedSpec& label(std::uint64_t v);
};

std::uint64_t fnv1a64(std::string_view s);

// SplitMix64 generator. State advances by the golden-ratio increment and each
// output is the finalizer of the new state.
class Stream {
public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double uniform01();
    // Uniform on [-1,1).
    double uniform_pm1();
    // +1 or -1 with equal probability.
    double sign();
    // Standard normal via the Marsaglia polar method. std::normal_distribution
    // is implementation-defined, which would break cross-toolchain goldens.
    double normal();
    // Unbiased integer in [0, n) by multiply-shift rejection.
    std::uint64_t index(std::uint64_t n);

private:
    std::uint64_t state_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

// Folds the labels into the base seed: state starts at mix(base_seed) and each
// label L applies state = mix(state ^ mix(L)), where mix is the SplitMix64
// finalizer. The resulting state seeds the stream.
Stream derive_stream(const SeedSpec& seed);

}  // namespace vsa
