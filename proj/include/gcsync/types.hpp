#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace gcsync {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

// Paired complex sample streams for the X and Y polarizations on a common
// time index. true_frame_start is ground truth carried for harness scoring;
// it survives every channel operator.
struct DualPolSignal {
    cvec x;
    cvec y;
    double sample_rate = 40e9;
    std::optional<std::int64_t> true_frame_start;

    std::size_t size() const { return x.size(); }
};

}  // namespace gcsync
