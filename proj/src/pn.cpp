#include "gcsync/pn.hpp"

#include "gcsync/errors.hpp"

namespace gcsync {

rvec pn_generate(std::uint32_t seed, std::size_t length) {
    std::uint32_t state = seed & 0xffffu;
    if (state == 0) {
        throw config_error("pn_generate: seed reduces to an all-zero register");
    }
    rvec out(length);
    for (std::size_t i = 0; i < length; ++i) {
        out[i] = (state & 1u) ? 1.0 : -1.0;
        // Feedback reads bits (16 - t) for taps t in {16, 14, 13, 11}.
        const std::uint32_t bit =
            ((state >> 0) ^ (state >> 2) ^ (state >> 3) ^ (state >> 5)) & 1u;
        state = ((state >> 1) | (bit << 15)) & 0xffffu;
    }
    return out;
}

}  // namespace gcsync
