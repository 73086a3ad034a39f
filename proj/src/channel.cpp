#include "gcsync/channel.hpp"

#include <cmath>
#include <numbers>

#include "gcsync/errors.hpp"
#include "gcsync/fft.hpp"

namespace gcsync {

namespace {

constexpr double kC0 = 299792458.0;  // m/s

// Applies a frequency response to both polarizations as an exact circular
// multiply on the signal's own length, so all-pass responses conserve energy
// to round-off. Dispersive tails running past the buffer end wrap to the
// front; at the walk-offs simulated here the wrapped samples are few and
// negligible against the correlation support. op(f_hz, X, Y) mutates the
// spectra in place.
template <typename Op>
DualPolSignal full_fft_op(const DualPolSignal& sig, Op&& op) {
    const std::size_t n = sig.size();
    cvec X = dft_any(sig.x, false);
    cvec Y = dft_any(sig.y, false);
    const double df = sig.sample_rate / static_cast<double>(n);
    for (std::size_t v = 0; v < n; ++v) {
        const double f =
            (v < (n + 1) / 2 ? static_cast<double>(v)
                             : static_cast<double>(v) - static_cast<double>(n)) *
            df;
        op(f, X[v], Y[v]);
    }
    DualPolSignal out = sig;
    out.x = dft_any(X, true);
    out.y = dft_any(Y, true);
    return out;
}

struct Rotation {
    double c, s;  // [[c, s], [-s, c]]
};

Rotation rotation(double theta_deg) {
    const double t = theta_deg * std::numbers::pi / 180.0;
    return {std::cos(t), std::sin(t)};
}

void rotate(const Rotation& r, cvec& x, cvec& y) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        const cplx u = r.c * x[k] + r.s * y[k];
        const cplx w = -r.s * x[k] + r.c * y[k];
        x[k] = u;
        y[k] = w;
    }
}

}  // namespace

DualPolSignal apply_timing_pad(const DualPolSignal& sig, std::int64_t pad) {
    if (pad < 0) throw invalid_input_error("apply_timing_pad: negative pad");
    DualPolSignal out;
    out.sample_rate = sig.sample_rate;
    out.x.resize(sig.x.size() + static_cast<std::size_t>(pad), cplx{0, 0});
    out.y.resize(sig.y.size() + static_cast<std::size_t>(pad), cplx{0, 0});
    std::copy(sig.x.begin(), sig.x.end(),
              out.x.begin() + static_cast<std::ptrdiff_t>(pad));
    std::copy(sig.y.begin(), sig.y.end(),
              out.y.begin() + static_cast<std::ptrdiff_t>(pad));
    out.true_frame_start = sig.true_frame_start.value_or(0) + pad;
    return out;
}

DualPolSignal apply_cfo(const DualPolSignal& sig, double nu_hz) {
    if (std::abs(nu_hz) > sig.sample_rate / 2.0) {
        throw config_error("apply_cfo: |nu| exceeds F_s/2 and would alias");
    }
    DualPolSignal out = sig;
    const double w = 2.0 * std::numbers::pi * nu_hz / sig.sample_rate;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const cplx ph{std::cos(w * static_cast<double>(k)),
                      std::sin(w * static_cast<double>(k))};
        out.x[k] *= ph;
        out.y[k] *= ph;
    }
    return out;
}

DualPolSignal apply_phase_noise(const DualPolSignal& sig, double linewidth_hz,
                                RngStream& rng) {
    if (linewidth_hz < 0) {
        throw invalid_input_error("apply_phase_noise: negative linewidth");
    }
    DualPolSignal out = sig;
    const double sd =
        std::sqrt(2.0 * std::numbers::pi * linewidth_hz / sig.sample_rate);
    double phi = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        phi += sd * rng.gaussian();
        const cplx ph{std::cos(phi), std::sin(phi)};
        out.x[k] *= ph;
        out.y[k] *= ph;
    }
    return out;
}

DualPolSignal apply_dgd(const DualPolSignal& sig, double dgd_ps,
                        double launch_deg) {
    if (dgd_ps < 0) throw invalid_input_error("apply_dgd: negative DGD");
    if (dgd_ps == 0.0) return sig;
    const double tau = dgd_ps * 1e-12;
    DualPolSignal work = sig;
    rotate(rotation(launch_deg), work.x, work.y);
    DualPolSignal delayed = full_fft_op(work, [&](double f, cplx& X, cplx& Y) {
        const double ang = std::numbers::pi * f * tau;
        X *= cplx{std::cos(ang), -std::sin(ang)};  // slow axis, +tau/2
        Y *= cplx{std::cos(ang), std::sin(ang)};   // fast axis, -tau/2
    });
    rotate(rotation(-launch_deg), delayed.x, delayed.y);
    return delayed;
}

DualPolSignal apply_pdl(const DualPolSignal& sig, double pdl_db,
                        double axis_deg) {
    if (pdl_db < 0) throw invalid_input_error("apply_pdl: negative PDL");
    DualPolSignal out = sig;
    rotate(rotation(axis_deg), out.x, out.y);
    const double g = std::pow(10.0, -pdl_db / 20.0);
    for (cplx& v : out.y) v *= g;
    rotate(rotation(-axis_deg), out.x, out.y);
    return out;
}

DualPolSignal apply_cd(const DualPolSignal& sig, double d_ps_per_nm,
                       double lambda_nm) {
    if (d_ps_per_nm == 0.0) return sig;
    const double d_si = d_ps_per_nm * 1e-12 / 1e-9;  // s/m
    const double lam = lambda_nm * 1e-9;
    const double k = std::numbers::pi * d_si * lam * lam / kC0;
    return full_fft_op(sig, [&](double f, cplx& X, cplx& Y) {
        const double ang = -k * f * f;
        const cplx h{std::cos(ang), std::sin(ang)};
        X *= h;
        Y *= h;
    });
}

DualPolSignal add_ase(const DualPolSignal& sig, double osnr_db,
                      const OsnrModel& model, RngStream& rng) {
    const std::size_t start = static_cast<std::size_t>(
        std::max<std::int64_t>(0, sig.true_frame_start.value_or(0)));
    if (start >= sig.size()) {
        throw invalid_input_error("add_ase: frame start beyond buffer");
    }
    double p_total = 0.0;
    for (std::size_t k = start; k < sig.size(); ++k) {
        p_total += std::norm(sig.x[k]) + std::norm(sig.y[k]);
    }
    p_total /= static_cast<double>(sig.size() - start);
    if (p_total <= 0.0) {
        throw invalid_input_error("add_ase: zero-power signal");
    }
    const double sigma2 = p_total * sig.sample_rate /
                          (2.0 * model.reference_bandwidth_hz *
                           std::pow(10.0, osnr_db / 10.0));
    const double sigma = std::sqrt(sigma2);
    DualPolSignal out = sig;
    // X noise first, then Y: the draw order is part of the determinism
    // contract.
    const cvec nx = rng.complex_gaussian(out.size(), sigma);
    const cvec ny = rng.complex_gaussian(out.size(), sigma);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.x[k] += nx[k];
        out.y[k] += ny[k];
    }
    return out;
}

DualPolSignal run_channel(const DualPolSignal& sig,
                          const ChannelProfile& profile,
                          const TrialStreams& streams, const OsnrModel& model) {
    std::int64_t pad = profile.timing_pad.min;
    if (!profile.timing_pad.is_fixed()) {
        if (profile.timing_pad.max < profile.timing_pad.min) {
            throw config_error("run_channel: timing_pad max < min");
        }
        RngStream pad_rng = streams.stream("pad");
        pad += static_cast<std::int64_t>(pad_rng.uniform_below(
            static_cast<std::uint64_t>(profile.timing_pad.max -
                                       profile.timing_pad.min + 1)));
    }
    DualPolSignal out = apply_timing_pad(sig, pad);
    if (profile.residual_cd_ps_per_nm != 0.0) {
        out = apply_cd(out, profile.residual_cd_ps_per_nm,
                       profile.center_wavelength_nm);
    }
    if (profile.dgd_ps != 0.0) {
        out = apply_dgd(out, profile.dgd_ps, profile.pmd_launch_deg);
    }
    if (profile.pdl_db != 0.0) {
        out = apply_pdl(out, profile.pdl_db, profile.pdl_axis_deg);
    }
    if (profile.cfo_hz != 0.0) {
        out = apply_cfo(out, profile.cfo_hz);
    }
    if (profile.linewidth_hz && *profile.linewidth_hz > 0.0) {
        RngStream pn_rng = streams.stream("pnoise");
        out = apply_phase_noise(out, *profile.linewidth_hz, pn_rng);
    }
    if (profile.osnr_db) {
        RngStream ase_rng = streams.stream("ase");
        out = add_ase(out, *profile.osnr_db, model, ase_rng);
    }
    return out;
}

}  // namespace gcsync
