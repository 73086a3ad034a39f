#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gcsync/rng.hpp"
#include "gcsync/types.hpp"

namespace gcsync {

// Timing pad length: fixed, or drawn uniformly from [min, max] per trial.
struct PadSpec {
    std::int64_t min = 0;
    std::int64_t max = 0;

    static PadSpec fixed(std::int64_t n) { return PadSpec{n, n}; }
    bool is_fixed() const { return min == max; }
};

// Impairment set for one trial. Unset OSNR means noiseless; unset linewidth
// means no phase noise.
struct ChannelProfile {
    double cfo_hz = 0.0;
    std::optional<double> osnr_db;
    double dgd_ps = 0.0;
    double pmd_launch_deg = 45.0;
    double pdl_db = 0.0;
    double pdl_axis_deg = 45.0;
    double residual_cd_ps_per_nm = 0.0;
    std::optional<double> linewidth_hz;
    PadSpec timing_pad;
    double center_wavelength_nm = 1550.0;
};

// OSNR reference bandwidth: 12.5 GHz (0.1 nm at 1550 nm). The OSNR is the
// ratio of total two-polarization signal power to total two-polarization
// ASE power falling in this bandwidth.
struct OsnrModel {
    double reference_bandwidth_hz = 12.5e9;
};

// Prepends pad zero samples to both polarizations (noise arrives later via
// add_ase); true_frame_start advances by pad.
DualPolSignal apply_timing_pad(const DualPolSignal& sig, std::int64_t pad);

// Multiplies both polarizations by exp(i 2 pi nu k / F_s), k the absolute
// sample index. |nu| above F_s/2 aliases and is rejected.
DualPolSignal apply_cfo(const DualPolSignal& sig, double nu_hz);

// Common multiplicative phase exp(i phi_k) on both polarizations, phi a
// Wiener walk with per-sample increment variance 2 pi linewidth / F_s,
// phi_0 = 0.
DualPolSignal apply_phase_noise(const DualPolSignal& sig, double linewidth_hz,
                                RngStream& rng);

// First-order PMD: rotate by the launch angle into the principal states,
// delay them by +DGD/2 and -DGD/2 (exact fractional delay on a zero-padded
// full-length transform), rotate back.
DualPolSignal apply_dgd(const DualPolSignal& sig, double dgd_ps,
                        double launch_deg);

// Rotate by the axis angle, attenuate the second axis by 10^(-pdl_db/20),
// rotate back.
DualPolSignal apply_pdl(const DualPolSignal& sig, double pdl_db,
                        double axis_deg);

// Residual chromatic dispersion, all-pass H(f) = exp(-i pi D lambda^2 f^2 / c)
// on both polarizations, f in [-F_s/2, F_s/2).
DualPolSignal apply_cd(const DualPolSignal& sig, double d_ps_per_nm,
                       double lambda_nm);

// Additive complex Gaussian noise per polarization with per-sample variance
//   sigma^2 = P_total * F_s / (2 * B_ref * 10^(osnr_db/10)),
// P_total the mean per-sample power summed over both polarizations, measured
// from true_frame_start (or the whole buffer when unset) so that zero pad
// samples do not dilute it.
DualPolSignal add_ase(const DualPolSignal& sig, double osnr_db,
                      const OsnrModel& model, RngStream& rng);

// Fixed impairment order: timing pad, CD, DGD, PDL, CFO, phase noise, ASE.
// The pad draw consumes profile.timing_pad via the "pad" purpose of rng;
// phase noise and ASE consume their own purposes. rng is the trial-scoped
// base stream factory: (seed, label_prefix).
struct TrialStreams {
    std::uint64_t seed;
    std::string prefix;

    RngStream stream(const std::string& purpose) const {
        return RngStream(seed, prefix + "/" + purpose);
    }
};

DualPolSignal run_channel(const DualPolSignal& sig,
                          const ChannelProfile& profile,
                          const TrialStreams& streams,
                          const OsnrModel& model = {});

}  // namespace gcsync
