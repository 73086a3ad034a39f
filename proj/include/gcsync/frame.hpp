#pragma once

#include <cstdint>
#include <vector>

#include "gcsync/golay.hpp"
#include "gcsync/rng.hpp"
#include "gcsync/types.hpp"

namespace gcsync {

// OFDM dimensioning. Defaults: 512-point transform, 46-sample CP, 416 data
// subcarriers, 40 GSa/s.
struct FrameConfig {
    std::size_t n_fft = 512;       // N
    std::size_t n_cp = 46;         // N_cp
    std::size_t l_data = 416;      // L
    double f_s = 40e9;             // F_s, samples/s
    std::size_t n_data_symbols = 10;
    std::uint32_t pn_seed = 1;

    std::size_t n_s() const { return n_fft + n_cp; }          // 558
    std::size_t n_r() const { return n_s() + n_cp; }          // 604
    double delta_f() const { return f_s / static_cast<double>(n_fft); }
};

// Unshifted FFT bin indices carrying data, in ascending shifted frequency:
// bins N-213..N-6 (negative half) then 6..213. Excluded: DC, 5 guard bins
// each side of DC, and 85 edge bins (43 below, 42 above in shifted order).
std::vector<std::size_t> data_bins(const FrameConfig& cfg);

// Sample index ranges of the two training symbols and the payload.
struct FrameLabel {
    std::size_t ts1_begin = 0, ts1_end = 0;
    std::size_t ts2_begin = 0, ts2_end = 0;
    std::size_t data_begin = 0, data_end = 0;
};

// Scatter payload onto the data bins; all other bins zero.
cvec subcarrier_map(const cvec& payload, const FrameConfig& cfg);

// ifft + cyclic prefix (last N_cp time samples prepended). Length N_s.
cvec ofdm_modulate(const cvec& spectrum, const FrameConfig& cfg);

// Gray-mapped unit-mean-energy 16-QAM, 4 bits per symbol.
cvec qam16_map(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> qam16_demap(const cvec& symbols);

// The two Alamouti-arranged training symbols:
//   symbol 1: X = p(n) * ofdm(map(A)),      Y = p(n) * ofdm(map(B))
//   symbol 2: X = ofdm(map(-conj(B))),      Y = ofdm(map(conj(A)))
// p(n) multiplies all N_s time samples of symbol 1, CP included.
// pn_enabled=false leaves symbol 1 unweighted (metric plateau experiments).
DualPolSignal build_training_block(const GolayPair& gcs, const FrameConfig& cfg,
                                   FrameLabel* label = nullptr,
                                   bool pn_enabled = true);

// Training block followed by n_data_symbols 16-QAM payload symbols per
// polarization. Bits are consumed per data symbol, X polarization before Y,
// 4*L bits each; underrun throws. The whole frame is scaled to unit mean
// per-sample power (averaged over both polarizations) so OSNR bookkeeping is
// direct. true_frame_start is 0 until a channel pad shifts it.
DualPolSignal build_frame(const std::vector<std::uint8_t>& data_bits,
                          const GolayPair& gcs, const FrameConfig& cfg,
                          FrameLabel* label = nullptr, bool pn_enabled = true);

// Same, with the payload drawn from a seeded stream.
DualPolSignal build_frame(const GolayPair& gcs, const FrameConfig& cfg,
                          RngStream& payload_rng, FrameLabel* label = nullptr,
                          bool pn_enabled = true);

}  // namespace gcsync
