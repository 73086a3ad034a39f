#include "gcsync/frame.hpp"

#include <cmath>

#include "gcsync/errors.hpp"
#include "gcsync/fft.hpp"
#include "gcsync/pn.hpp"

namespace gcsync {

std::vector<std::size_t> data_bins(const FrameConfig& cfg) {
    const std::size_t N = cfg.n_fft;
    const std::size_t L = cfg.l_data;
    const std::size_t guard = 5;  // bins kept free on each side of DC
    if (L % 2 != 0 || L + 2 * guard + 1 > N) {
        throw config_error("data_bins: layout does not fit the FFT size");
    }
    std::vector<std::size_t> bins;
    bins.reserve(L);
    // Negative shifted frequencies first (ascending), then positive.
    for (std::size_t k = N - (guard + L / 2); k <= N - guard - 1; ++k) {
        bins.push_back(k);
    }
    for (std::size_t k = guard + 1; k <= guard + L / 2; ++k) {
        bins.push_back(k);
    }
    return bins;
}

cvec subcarrier_map(const cvec& payload, const FrameConfig& cfg) {
    if (payload.size() != cfg.l_data) {
        throw invalid_input_error("subcarrier_map: payload length != L");
    }
    cvec spec(cfg.n_fft, cplx{0.0, 0.0});
    const auto bins = data_bins(cfg);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        spec[bins[i]] = payload[i];
    }
    return spec;
}

cvec ofdm_modulate(const cvec& spectrum, const FrameConfig& cfg) {
    if (spectrum.size() != cfg.n_fft) {
        throw invalid_input_error("ofdm_modulate: spectrum length != N");
    }
    const cvec t = ifft(spectrum);
    cvec out;
    out.reserve(cfg.n_s());
    out.insert(out.end(), t.end() - static_cast<std::ptrdiff_t>(cfg.n_cp),
               t.end());
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

namespace {

// Gray code per axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
constexpr double kGrayLevel[4] = {-3.0, -1.0, 1.0, 3.0};

int gray_index(std::uint8_t b0, std::uint8_t b1) {
    const int g = (b0 << 1) | b1;
    switch (g) {
        case 0b00: return 0;
        case 0b01: return 1;
        case 0b11: return 2;
        default: return 3;  // 0b10
    }
}

void gray_bits(int index, std::uint8_t& b0, std::uint8_t& b1) {
    static constexpr std::uint8_t kBits[4][2] = {
        {0, 0}, {0, 1}, {1, 1}, {1, 0}};
    b0 = kBits[index][0];
    b1 = kBits[index][1];
}

const double kQamScale = 1.0 / std::sqrt(10.0);

}  // namespace

cvec qam16_map(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 4 != 0) {
        throw invalid_input_error("qam16_map: bit count not a multiple of 4");
    }
    cvec out(bits.size() / 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double re = kGrayLevel[gray_index(bits[4 * i], bits[4 * i + 1])];
        const double im =
            kGrayLevel[gray_index(bits[4 * i + 2], bits[4 * i + 3])];
        out[i] = cplx{re, im} * kQamScale;
    }
    return out;
}

std::vector<std::uint8_t> qam16_demap(const cvec& symbols) {
    std::vector<std::uint8_t> bits(symbols.size() * 4);
    auto nearest = [](double v) {
        int best = 0;
        double err = 1e300;
        for (int i = 0; i < 4; ++i) {
            const double e = std::abs(v - kGrayLevel[i]);
            if (e < err) {
                err = e;
                best = i;
            }
        }
        return best;
    };
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const cplx s = symbols[i] / kQamScale;
        gray_bits(nearest(s.real()), bits[4 * i], bits[4 * i + 1]);
        gray_bits(nearest(s.imag()), bits[4 * i + 2], bits[4 * i + 3]);
    }
    return bits;
}

DualPolSignal build_training_block(const GolayPair& gcs, const FrameConfig& cfg,
                                   FrameLabel* label, bool pn_enabled) {
    if (!verify_complementary(gcs).pass) {
        throw invalid_input_error(
            "build_training_block: training pair is not complementary");
    }
    if (gcs.length() != cfg.l_data) {
        throw invalid_input_error("build_training_block: pair length != L");
    }
    const std::size_t ns = cfg.n_s();
    const rvec pn = pn_generate(cfg.pn_seed, ns);

    cvec conj_a(gcs.length()), neg_conj_b(gcs.length());
    for (std::size_t m = 0; m < gcs.length(); ++m) {
        conj_a[m] = std::conj(gcs.a[m]);
        neg_conj_b[m] = -std::conj(gcs.b[m]);
    }
    cvec x1 = ofdm_modulate(subcarrier_map(gcs.a, cfg), cfg);
    cvec y1 = ofdm_modulate(subcarrier_map(gcs.b, cfg), cfg);
    if (pn_enabled) {
        for (std::size_t n = 0; n < ns; ++n) {
            x1[n] *= pn[n];
            y1[n] *= pn[n];
        }
    }
    const cvec x2 = ofdm_modulate(subcarrier_map(neg_conj_b, cfg), cfg);
    const cvec y2 = ofdm_modulate(subcarrier_map(conj_a, cfg), cfg);

    DualPolSignal sig;
    sig.sample_rate = cfg.f_s;
    sig.x.reserve(2 * ns);
    sig.y.reserve(2 * ns);
    sig.x.insert(sig.x.end(), x1.begin(), x1.end());
    sig.x.insert(sig.x.end(), x2.begin(), x2.end());
    sig.y.insert(sig.y.end(), y1.begin(), y1.end());
    sig.y.insert(sig.y.end(), y2.begin(), y2.end());
    if (label) {
        label->ts1_begin = 0;
        label->ts1_end = ns;
        label->ts2_begin = ns;
        label->ts2_end = 2 * ns;
        label->data_begin = 2 * ns;
        label->data_end = 2 * ns;
    }
    return sig;
}

DualPolSignal build_frame(const std::vector<std::uint8_t>& data_bits,
                          const GolayPair& gcs, const FrameConfig& cfg,
                          FrameLabel* label, bool pn_enabled) {
    const std::size_t per_symbol = 4 * cfg.l_data;
    if (data_bits.size() < 2 * cfg.n_data_symbols * per_symbol) {
        throw invalid_input_error("build_frame: payload bit underrun");
    }
    FrameLabel lab;
    DualPolSignal sig = build_training_block(gcs, cfg, &lab, pn_enabled);
    const std::size_t ns = cfg.n_s();

    std::size_t pos = 0;
    auto append_symbol = [&](cvec& pol) {
        const std::vector<std::uint8_t> bits(
            data_bits.begin() + static_cast<std::ptrdiff_t>(pos),
            data_bits.begin() + static_cast<std::ptrdiff_t>(pos + per_symbol));
        pos += per_symbol;
        const cvec t = ofdm_modulate(subcarrier_map(qam16_map(bits), cfg), cfg);
        pol.insert(pol.end(), t.begin(), t.end());
    };
    for (std::size_t s = 0; s < cfg.n_data_symbols; ++s) {
        append_symbol(sig.x);
        append_symbol(sig.y);
    }
    lab.data_end = lab.data_begin + cfg.n_data_symbols * ns;

    // Unit mean per-sample power averaged over both polarizations.
    double p = 0.0;
    for (const cplx& v : sig.x) p += std::norm(v);
    for (const cplx& v : sig.y) p += std::norm(v);
    p /= static_cast<double>(sig.x.size() + sig.y.size());
    const double scale = 1.0 / std::sqrt(p);
    for (cplx& v : sig.x) v *= scale;
    for (cplx& v : sig.y) v *= scale;

    sig.true_frame_start = 0;
    if (label) *label = lab;
    return sig;
}

DualPolSignal build_frame(const GolayPair& gcs, const FrameConfig& cfg,
                          RngStream& payload_rng, FrameLabel* label,
                          bool pn_enabled) {
    std::vector<std::uint8_t> bits(2 * cfg.n_data_symbols * 4 * cfg.l_data);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(payload_rng.next_u64() & 1u);
    }
    return build_frame(bits, gcs, cfg, label, pn_enabled);
}

}  // namespace gcsync
