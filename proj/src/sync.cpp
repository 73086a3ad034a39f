#include "gcsync/sync.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "gcsync/errors.hpp"
#include "gcsync/fft.hpp"
#include "gcsync/pn.hpp"

namespace gcsync {

namespace {

// m(n) = (N_cp - n) mod N. Pairs sample n of the first training symbol with
// the time-reversed sample of the second one; n + m(n) is N_cp for
// n <= N_cp and N_cp + N beyond, which is what makes the products cohere
// through dispersion and splits the CFO phase into two clean cohorts.
std::vector<std::int64_t> reversal_index(const FrameConfig& f) {
    const auto n_s = static_cast<std::int64_t>(f.n_s());
    const auto n_cp = static_cast<std::int64_t>(f.n_cp);
    const auto n_fft = static_cast<std::int64_t>(f.n_fft);
    std::vector<std::int64_t> m(static_cast<std::size_t>(n_s));
    for (std::int64_t n = 0; n < n_s; ++n)
        m[static_cast<std::size_t>(n)] = n <= n_cp ? n_cp - n : n_cp - n + n_fft;
    return m;
}

void check_pn(const SyncConfig& cfg) {
    if (cfg.pn.size() != cfg.frame.n_s())
        throw config_error("pn weight length must equal N_s");
}

// True when (metric a, alpha a) beats (b): larger metric, then smaller
// |alpha|, then the negative alpha.
bool cell_better(double ma, int aa, double mb, int ab) {
    if (ma != mb) return ma > mb;
    if (std::abs(aa) != std::abs(ab)) return std::abs(aa) < std::abs(ab);
    return aa < ab;
}

struct CellPair {
    cplx px;
    cplx py;
};

// One (d, alpha) evaluation. Assumes indices in range; frame_sync clamps
// alpha and timing_correlation bounds-checks before calling.
CellPair correlate_cell(const cvec& x, const cvec& y, std::int64_t d,
                        int alpha, const rvec& pn,
                        const std::vector<std::int64_t>& m, std::int64_t n_r,
                        bool conj_products) {
    const auto n_s = static_cast<std::int64_t>(pn.size());
    cplx px_a = 0, px_b = 0, py_a = 0, py_b = 0;
    for (std::int64_t n = 0; n < n_s; ++n) {
        const auto nu = static_cast<std::size_t>(n);
        const double w = pn[nu];
        const std::int64_t rev = n_r + m[nu];
        cplx y2 = y[static_cast<std::size_t>(d + alpha + rev)];
        cplx x2 = x[static_cast<std::size_t>(d + rev)];
        cplx y2c = y[static_cast<std::size_t>(d + rev)];
        cplx x2c = x[static_cast<std::size_t>(d - alpha + rev)];
        if (conj_products) {
            y2 = std::conj(y2);
            x2 = std::conj(x2);
            y2c = std::conj(y2c);
            x2c = std::conj(x2c);
        }
        px_a += x[static_cast<std::size_t>(d + n)] * w * y2;
        px_b += y[static_cast<std::size_t>(d + alpha + n)] * w * x2;
        py_a += x[static_cast<std::size_t>(d - alpha + n)] * w * y2c;
        py_b += y[static_cast<std::size_t>(d + n)] * w * x2c;
    }
    return {px_a - px_b, py_a - py_b};
}

}  // namespace

SyncConfig SyncConfig::defaults(const FrameConfig& f) {
    SyncConfig cfg;
    cfg.frame = f;
    cfg.gcs = training_pair_416();
    cfg.pn = pn_generate(f.pn_seed, f.n_s());
    return cfg;
}

std::pair<cplx, cplx> timing_correlation(const DualPolSignal& r,
                                         std::int64_t d, int alpha,
                                         const SyncConfig& cfg) {
    check_pn(cfg);
    const auto n_r = static_cast<std::int64_t>(cfg.frame.n_r());
    const auto n_fft = static_cast<std::int64_t>(cfg.frame.n_fft);
    const auto size = static_cast<std::int64_t>(r.size());
    const std::int64_t lo = d - std::abs(alpha);
    const std::int64_t hi = d + std::abs(alpha) + n_r + n_fft - 1;
    if (lo < 0 || hi >= size)
        throw window_error("timing correlation window out of range");
    const auto m = reversal_index(cfg.frame);
    const auto c = correlate_cell(r.x, r.y, d, alpha, cfg.pn, m, n_r,
                                  cfg.conjugate_products);
    return {c.px, c.py};
}

std::pair<double, double> timing_energy(const DualPolSignal& r, std::int64_t d,
                                        const SyncConfig& cfg) {
    const auto n_s = static_cast<std::int64_t>(cfg.frame.n_s());
    if (d < 0 || d + n_s > static_cast<std::int64_t>(r.size()))
        throw window_error("energy window out of range");
    double ex = 0, ey = 0;
    for (std::int64_t n = 0; n < n_s; ++n) {
        ex += std::norm(r.x[static_cast<std::size_t>(d + n)]);
        ey += std::norm(r.y[static_cast<std::size_t>(d + n)]);
    }
    return {2 * ex, 2 * ey};
}

FrameSyncResult frame_sync(const DualPolSignal& r, const SyncConfig& cfg) {
    check_pn(cfg);
    if (cfg.search_end <= cfg.search_begin)
        throw config_error("empty search window");
    const auto n_s = static_cast<std::int64_t>(cfg.frame.n_s());
    const auto n_r = static_cast<std::int64_t>(cfg.frame.n_r());
    const auto n_fft = static_cast<std::int64_t>(cfg.frame.n_fft);
    const auto size = static_cast<std::int64_t>(r.size());
    const std::int64_t d0 = cfg.search_begin;
    const std::int64_t d1 = cfg.search_end;
    if (d0 < 0 || d1 - 1 + n_r + n_s > size)
        throw window_error("search window exceeds received buffer");

    const auto nd = static_cast<std::size_t>(d1 - d0);
    const auto m = reversal_index(cfg.frame);
    const auto beta = static_cast<std::int64_t>(cfg.beta);

    // Denominators first: the floor needs the window-wide maximum.
    rvec r_x(nd), r_y(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        auto [ex, ey] = timing_energy(r, d0 + static_cast<std::int64_t>(i), cfg);
        r_x[i] = ex;
        r_y[i] = ey;
    }
    const double floor_x =
        cfg.energy_floor * *std::max_element(r_x.begin(), r_x.end());
    const double floor_y =
        cfg.energy_floor * *std::max_element(r_y.begin(), r_y.end());
    if (floor_x <= 0.0 || floor_y <= 0.0)
        throw degenerate_input_error("search window contains no signal");

    MetricTrace trace;
    trace.d_begin = d0;
    trace.m_x.assign(nd, 0.0);
    trace.m_y.assign(nd, 0.0);
    trace.best_alpha_x.assign(nd, 0);
    trace.best_alpha_y.assign(nd, 0);

    for (std::size_t i = 0; i < nd; ++i) {
        const std::int64_t d = d0 + static_cast<std::int64_t>(i);
        // Shrink the alpha range where a shifted window would leave the
        // buffer; both signs hit the same limits through the two tracks.
        const std::int64_t a_max =
            std::min({beta, d, size - (d + n_r + n_fft)});
        const double dx2 = std::max(r_x[i], floor_x);
        const double dy2 = std::max(r_y[i], floor_y);
        double best_mx = -1.0, best_my = -1.0;
        int best_ax = 0, best_ay = 0;
        for (std::int64_t a = -a_max; a <= a_max; ++a) {
            const int alpha = static_cast<int>(a);
            const auto c = correlate_cell(r.x, r.y, d, alpha, cfg.pn, m, n_r,
                                          cfg.conjugate_products);
            const double mx = std::norm(c.px) / (dx2 * dx2);
            const double my = std::norm(c.py) / (dy2 * dy2);
            if (cell_better(mx, alpha, best_mx, best_ax)) {
                best_mx = mx;
                best_ax = alpha;
            }
            if (cell_better(my, alpha, best_my, best_ay)) {
                best_my = my;
                best_ay = alpha;
            }
        }
        trace.m_x[i] = best_mx;
        trace.m_y[i] = best_my;
        trace.best_alpha_x[i] = best_ax;
        trace.best_alpha_y[i] = best_ay;
    }

    FrameSyncResult out;
    std::size_t ix = 0, iy = 0;
    for (std::size_t i = 1; i < nd; ++i) {
        if (trace.m_x[i] > trace.m_x[ix]) ix = i;  // ties keep the smaller d
        if (trace.m_y[i] > trace.m_y[iy]) iy = i;
    }
    out.d_hat_x = d0 + static_cast<std::int64_t>(ix);
    out.d_hat_y = d0 + static_cast<std::int64_t>(iy);
    out.alpha_hat = trace.best_alpha_x[ix];
    out.trace = std::move(trace);
    return out;
}

double frac_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                std::int64_t d_hat_y, const SyncConfig& cfg) {
    check_pn(cfg);
    const auto n_cp = static_cast<std::int64_t>(cfg.frame.n_cp);
    const auto n_r = static_cast<std::int64_t>(cfg.frame.n_r());
    const auto n_fft = static_cast<std::int64_t>(cfg.frame.n_fft);
    const auto half = static_cast<std::int64_t>(cfg.frame.n_s() / 2);
    const auto size = static_cast<std::int64_t>(r.size());
    const auto m = reversal_index(cfg.frame);

    cplx z = 0;
    for (std::int64_t d : {d_hat_x, d_hat_y}) {
        if (d < 0 || d + n_r + n_fft > size)
            throw window_error("cfo window out of range");
        // The guard cohort (n <= N_cp) and the body cohort pair samples one
        // FFT length apart, so their partial sums differ in phase by one
        // full FFT length of CFO rotation: arg = 2 pi eps.
        cplx s_cp = 0, s_body = 0;
        for (std::int64_t n = 0; n < half; ++n) {
            const auto nu = static_cast<std::size_t>(n);
            const double w = cfg.pn[nu];
            cplx y2 = r.y[static_cast<std::size_t>(d + n_r + m[nu])];
            cplx x2 = r.x[static_cast<std::size_t>(d + n_r + m[nu])];
            if (cfg.conjugate_products) {
                y2 = std::conj(y2);
                x2 = std::conj(x2);
            }
            const cplx t = r.x[static_cast<std::size_t>(d + n)] * w * y2 -
                           r.y[static_cast<std::size_t>(d + n)] * w * x2;
            (n <= n_cp ? s_cp : s_body) += t;
        }
        z += s_body * std::conj(s_cp);
    }
    if (std::abs(z) == 0.0)
        throw degenerate_input_error("zero-magnitude cfo correlation");
    return cfg.kappa * std::arg(z) / (2 * std::numbers::pi);
}

std::pair<int, rvec> integer_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                                 const SyncConfig& cfg) {
    check_pn(cfg);
    const auto& f = cfg.frame;
    const auto n_fft = static_cast<std::int64_t>(f.n_fft);
    const auto n_cp = static_cast<std::int64_t>(f.n_cp);
    if (d_hat_x < 0 ||
        d_hat_x + n_cp + n_fft > static_cast<std::int64_t>(r.size()))
        throw window_error("integer cfo window out of range");

    cvec w(static_cast<std::size_t>(n_fft));
    for (std::int64_t k = 0; k < n_fft; ++k)
        w[static_cast<std::size_t>(k)] =
            r.x[static_cast<std::size_t>(d_hat_x + n_cp + k)] *
            cfg.pn[static_cast<std::size_t>(n_cp + k)];
    const cvec rf = fft(w);

    double energy = 0;
    for (const auto& v : rf) energy += std::norm(v);
    if (energy == 0.0) throw degenerate_input_error("all-zero spectrum");
    const double den = energy * energy;

    const auto bins = data_bins(f);
    cvec ref(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i)
        ref[i] = cfg.gcs.a[i] + cfg.gcs.b[i];

    const int half = static_cast<int>(n_fft / 2);
    rvec xi(static_cast<std::size_t>(n_fft));
    int best_mu = -half;
    double best_xi = -1.0;
    for (int mu = -half; mu < half; ++mu) {
        cplx acc = 0;
        for (std::size_t i = 0; i < bins.size(); ++i) {
            std::int64_t v = static_cast<std::int64_t>(bins[i]) + mu;
            v %= n_fft;
            if (v < 0) v += n_fft;
            acc += std::conj(ref[i]) * rf[static_cast<std::size_t>(v)];
        }
        const double val = std::norm(acc) / den;
        xi[static_cast<std::size_t>(mu + half)] = val;
        if (val > best_xi ||
            (val == best_xi && std::abs(mu) < std::abs(best_mu))) {
            best_xi = val;
            best_mu = mu;
        }
    }
    return {best_mu, std::move(xi)};
}

SyncEstimate estimate_cfo(const DualPolSignal& r, std::int64_t d_hat_x,
                          std::int64_t d_hat_y, const SyncConfig& cfg,
                          MetricTrace* trace) {
    SyncEstimate est;
    est.d_hat_x = d_hat_x;
    est.d_hat_y = d_hat_y;
    est.eps_hat = frac_cfo(r, d_hat_x, d_hat_y, cfg);
    const double delta_f = cfg.frame.delta_f();
    const DualPolSignal comp = compensate_cfo(r, est.eps_hat * delta_f);
    auto [mu, xi] = integer_cfo(comp, d_hat_x, cfg);
    est.mu_hat = mu;
    est.nu_hat_hz = (est.eps_hat + mu) * delta_f;
    if (trace) {
        trace->xi_mu_begin = -static_cast<int>(cfg.frame.n_fft / 2);
        trace->xi = std::move(xi);
    }
    return est;
}

std::pair<SyncEstimate, MetricTrace> synchronize(const DualPolSignal& r,
                                                 const SyncConfig& cfg) {
    FrameSyncResult fs = frame_sync(r, cfg);
    SyncEstimate est =
        estimate_cfo(r, fs.d_hat_x, fs.d_hat_y, cfg, &fs.trace);
    est.alpha_hat = fs.alpha_hat;
    return {est, std::move(fs.trace)};
}

DualPolSignal compensate_cfo(const DualPolSignal& r, double nu_hz) {
    DualPolSignal out = r;
    const double step = -2 * std::numbers::pi * nu_hz / r.sample_rate;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const cplx ph = std::polar(1.0, step * static_cast<double>(k));
        out.x[k] *= ph;
        out.y[k] *= ph;
    }
    return out;
}

}  // namespace gcsync
