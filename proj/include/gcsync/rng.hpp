#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gcsync/types.hpp"

namespace gcsync {

// Splittable counter-style PRNG stream. A stream is fully determined by
// (seed, label); campaigns derive one stream per (point, trial, purpose) so
// serial and concurrent execution consume identical randomness.
//
// Core generator is SplitMix64 over a state derived by hashing the label
// into the seed (FNV-1a). Not cryptographic; statistical quality is ample
// for Monte-Carlo noise and payload draws.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::string_view label);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform integer on [0, bound); rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal via Box-Muller; second value of each pair is cached.
    double gaussian();

    // n i.i.d. circularly-symmetric complex Gaussians, total variance
    // sigma^2 per sample (sigma^2/2 per quadrature).
    cvec complex_gaussian(std::size_t n, double sigma);

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// FNV-1a 64-bit hash; exposed because stream identity is part of the
// determinism contract and tests pin it.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gcsync
