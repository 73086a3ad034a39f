#pragma once

#include <cstdint>
#include <utility>

#include "gcsync/frame.hpp"
#include "gcsync/golay.hpp"
#include "gcsync/types.hpp"

namespace gcsync {

// Estimator configuration. beta is the maximum relative delay in samples the
// alpha search covers; it must be at least ceil(DGD * F_s) for the DGD the
// link can present. The search window is the candidate range for d.
struct SyncConfig {
    std::size_t beta = 8;
    FrameConfig frame;
    GolayPair gcs;
    rvec pn;  // length N_s
    std::int64_t search_begin = 0;
    std::int64_t search_end = 0;  // exclusive

    // Comparison switch: conjugate the second-symbol factor inside every
    // correlation product. The plain products are the reading that coheres;
    // this variant is kept to demonstrate that.
    bool conjugate_products = false;

    // Fractional-CFO calibration constant (frozen at 1 by the pre-build
    // sweep of known offsets against the estimate).
    double kappa = 1.0;

    // Denominator floor as a fraction of the window's maximum R(d): windows
    // that are mostly pad would otherwise send |P|^2/R^2 to 0/0 and the
    // trace must stay finite.
    double energy_floor = 0.1;

    static SyncConfig defaults(const FrameConfig& f);
};

struct SyncEstimate {
    std::int64_t d_hat_x = 0;
    std::int64_t d_hat_y = 0;
    int alpha_hat = 0;
    double eps_hat = 0.0;  // fractional CFO, subcarrier units
    int mu_hat = 0;        // integer CFO, subcarrier units
    double nu_hat_hz = 0.0;
};

// Per-d timing metrics and the integer-CFO correlation trace.
struct MetricTrace {
    std::int64_t d_begin = 0;  // d of index 0 in the vectors below
    rvec m_x;
    rvec m_y;
    std::vector<int> best_alpha_x;
    std::vector<int> best_alpha_y;
    int xi_mu_begin = 0;  // mu of index 0 in xi
    rvec xi;
};

struct FrameSyncResult {
    std::int64_t d_hat_x = 0;
    std::int64_t d_hat_y = 0;
    int alpha_hat = 0;  // maximizing alpha at d_hat_x
    MetricTrace trace;
};

// One correlation cell: (P_x(d; alpha), P_y(d; alpha)). Plain products of
// the first-symbol window (PN-weighted) against the time-reversed
// second-symbol window at offset N_r; the y metric places -alpha where the
// x metric places +alpha. Out-of-range access throws window_error.
std::pair<cplx, cplx> timing_correlation(const DualPolSignal& r,
                                         std::int64_t d, int alpha,
                                         const SyncConfig& cfg);

// (R_x(d), R_y(d)) = twice the windowed energy over N_s samples.
std::pair<double, double> timing_energy(const DualPolSignal& r, std::int64_t d,
                                        const SyncConfig& cfg);

// Timing search: M(d) = max over alpha in [-beta, beta] of |P|^2 / R^2 per
// polarization; d_hat = argmax. Ties break toward the smallest d, then the
// smallest |alpha|, then the negative alpha. Near the buffer edges the alpha
// range shrinks to the values whose windows fit.
FrameSyncResult frame_sync(const DualPolSignal& r, const SyncConfig& cfg);

// Fractional CFO in subcarrier units from the phase advance between the two
// index cohorts of the half-symbol correlation products at alpha = 0 (the
// guard-aligned cohort n <= N_cp and the body-aligned cohort beyond it whose
// pairing sits one FFT length later). Both polarization tracks are pooled.
// Result in [-0.5, 0.5] * kappa.
double frac_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                std::int64_t d_hat_y, const SyncConfig& cfg);

// Integer CFO from the cyclic cross-correlation of the PN-de-weighted,
// CP-stripped first training symbol's spectrum against the known A+B
// spectrum. r must already be fractionally compensated. mu in
// [-N/2, N/2 - 1]; ties toward smaller |mu|. Returns mu and the full trace.
std::pair<int, rvec> integer_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                                 const SyncConfig& cfg);

// frac_cfo, fractional compensation on a working copy, integer_cfo,
// nu = (eps + mu) * delta_f. Fills trace->xi when trace is given.
SyncEstimate estimate_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                          std::int64_t d_hat_y, const SyncConfig& cfg,
                          MetricTrace* trace = nullptr);

// frame_sync followed by estimate_cfo: the one-call front end.
std::pair<SyncEstimate, MetricTrace> synchronize(const DualPolSignal& r,
                                                 const SyncConfig& cfg);

// Multiplies by exp(-i 2 pi nu k / F_s); inverse of apply_cfo.
DualPolSignal compensate_cfo(const DualPolSignal& r, double nu_hz);

}  // namespace gcsync
