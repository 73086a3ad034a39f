#include "gcsync/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gcsync/errors.hpp"

namespace gcsync {

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(cvec& x, bool inverse) {
    const std::size_t n = x.size();
    if (!is_pow2(n)) {
        throw config_error("fft length must be a power of two, got " +
                           std::to_string(n));
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const cplx wlen{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : x) v *= inv;
    }
}

cvec fft(const cvec& x) {
    cvec out = x;
    fft_inplace(out, false);
    return out;
}

cvec dft_any(const cvec& x, bool inverse) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if (is_pow2(n)) {
        cvec out = x;
        fft_inplace(out, inverse);
        return out;
    }
    // Bluestein: X(k) = w(k) sum_m [x(m) w(m)] w*(k-m) with w(j) =
    // exp(sgn i pi j^2 / n). j^2 is reduced mod 2n in integers so the chirp
    // phase stays exact for large indices.
    const double sgn = inverse ? 1.0 : -1.0;
    auto chirp = [&](std::size_t j) {
        const std::uint64_t r =
            (static_cast<std::uint64_t>(j) * j) % (2 * static_cast<std::uint64_t>(n));
        const double ang =
            sgn * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        return cplx{std::cos(ang), std::sin(ang)};
    };
    const std::size_t m = next_pow2(2 * n - 1);
    cvec a(m, cplx{0.0, 0.0});
    cvec b(m, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        const cplx w = chirp(j);
        a[j] = x[j] * w;
        b[j] = std::conj(w);
        if (j != 0) b[m - j] = std::conj(w);
    }
    fft_inplace(a, false);
    fft_inplace(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_inplace(a, true);
    cvec out(n);
    const double scale = inverse ? 1.0 / static_cast<double>(n) : 1.0;
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp(k) * scale;
    return out;
}

cvec ifft(const cvec& X) {
    cvec out = X;
    fft_inplace(out, true);
    return out;
}

}  // namespace gcsync
