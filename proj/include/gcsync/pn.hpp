#pragma once

#include <cstdint>

#include "gcsync/types.hpp"

namespace gcsync {

// Bipolar pseudo-random weighting sequence from a 16-bit maximal-length
// Fibonacci LFSR (taps 16,14,13,11; right shift; output is the LSB before
// each shift, mapped 1 -> +1, 0 -> -1). Period 65535.
//
// The all-zero register state never occurs once seeded nonzero; a seed that
// reduces to zero in the low 16 bits is rejected.
rvec pn_generate(std::uint32_t seed, std::size_t length);

}  // namespace gcsync
