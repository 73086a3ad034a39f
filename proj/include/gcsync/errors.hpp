#pragma once

#include <stdexcept>
#include <string>

namespace gcsync {

// Base class for all contract violations raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad build-time or run-time configuration (zero PN seed, non-power-of-two
// FFT length, aliased CFO, malformed campaign config, ...). CLI exit code 2.
struct config_error : error {
    using error::error;
};

// An operation received data that violates its preconditions.
struct invalid_input_error : error {
    using error::error;
};

// A metric window or correlation index falls outside the received buffer.
struct window_error : error {
    using error::error;
};

// An estimator cannot produce a value (zero-magnitude correlation sum,
// all-zero spectrum).
struct degenerate_input_error : error {
    using error::error;
};

// File I/O failure. CLI exit code 3.
struct io_error : error {
    using error::error;
};

}  // namespace gcsync
