#pragma once

#include "gcsync/types.hpp"

namespace gcsync {

// Forward DFT, no scale factor: X(v) = sum_n x(n) exp(-i 2 pi v n / N).
// Length must be a power of two.
cvec fft(const cvec& x);

// Inverse DFT with 1/N scaling; exact inverse of fft.
cvec ifft(const cvec& X);

// DFT at arbitrary length: radix-2 directly for powers of two, chirp-z
// otherwise. Same conventions as fft/ifft (forward unscaled, inverse 1/N).
cvec dft_any(const cvec& x, bool inverse);

// In-place radix-2 transforms for callers that manage their own buffers.
void fft_inplace(cvec& x, bool inverse);

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

}  // namespace gcsync
