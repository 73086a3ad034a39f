#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gcsync/channel.hpp"
#include "gcsync/errors.hpp"
#include "gcsync/frame.hpp"
#include "gcsync/golay.hpp"
#include "gcsync/pn.hpp"
#include "gcsync/rng.hpp"
#include "gcsync/sync.hpp"

namespace py = pybind11;
using namespace gcsync;

namespace {

py::dict verify_dict(const GolayPair& pair) {
    const ComplementarityReport rep = verify_complementary(pair);
    py::dict out;
    out["peak"] = rep.peak;
    out["max_sidelobe"] = rep.max_sidelobe;
    out["ok"] = rep.pass;
    return out;
}

py::dict simulate_and_sync(std::uint64_t seed, std::int64_t pad, double cfo_hz,
                           std::optional<double> osnr_db, double dgd_ps,
                           double launch_deg, double pdl_db, double cd_ps_nm,
                           std::optional<double> linewidth_hz,
                           std::size_t beta) {
    const FrameConfig cfg;
    const TrialStreams streams{seed, "py"};
    RngStream payload = streams.stream("payload");
    const DualPolSignal tx = build_frame(training_pair_416(), cfg, payload);

    ChannelProfile profile;
    profile.timing_pad = PadSpec::fixed(pad);
    profile.cfo_hz = cfo_hz;
    profile.osnr_db = osnr_db;
    profile.dgd_ps = dgd_ps;
    profile.pmd_launch_deg = launch_deg;
    profile.pdl_db = pdl_db;
    profile.residual_cd_ps_per_nm = cd_ps_nm;
    profile.linewidth_hz = linewidth_hz;
    const DualPolSignal rx = run_channel(tx, profile, streams);

    SyncConfig sc = SyncConfig::defaults(cfg);
    sc.beta = beta;
    sc.search_begin = 0;
    sc.search_end = pad + static_cast<std::int64_t>(beta) + 17;
    const auto [est, trace] = synchronize(rx, sc);

    py::dict out;
    out["d_hat_x"] = est.d_hat_x;
    out["d_hat_y"] = est.d_hat_y;
    out["alpha_hat"] = est.alpha_hat;
    out["eps_hat"] = est.eps_hat;
    out["mu_hat"] = est.mu_hat;
    out["nu_hat_hz"] = est.nu_hat_hz;
    out["true_start"] = rx.true_frame_start.value_or(0);
    return out;
}

}  // namespace

PYBIND11_MODULE(_gcsync, m) {
    m.doc() = "Golay-assisted frame and frequency synchronization core";

    py::register_exception<error>(m, "GcsyncError");

    m.def(
        "training_pair",
        [] {
            const GolayPair p = training_pair_416();
            return py::make_tuple(p.a, p.b);
        },
        "The frozen 16-QAM length-416 complementary pair (a, b).");

    m.def(
        "pn_sequence",
        [](std::uint32_t seed, std::size_t n) { return pn_generate(seed, n); },
        py::arg("seed"), py::arg("n"),
        "Bipolar LFSR weight sequence of length n.");

    m.def(
        "golay_verify",
        [](const cvec& a, const cvec& b) {
            GolayPair p;
            p.a = a;
            p.b = b;
            p.alphabet = Alphabet::qam16;
            return verify_dict(p);
        },
        py::arg("a"), py::arg("b"),
        "Aperiodic autocorrelation-sum check: dict(peak, max_sidelobe, ok).");

    m.def(
        "build_frame",
        [](std::uint64_t seed, std::size_t n_data_symbols, bool pn_enabled) {
            FrameConfig cfg;
            cfg.n_data_symbols = n_data_symbols;
            RngStream payload(seed, "py/payload");
            const DualPolSignal sig = build_frame(
                training_pair_416(), cfg, payload, nullptr, pn_enabled);
            return py::make_tuple(sig.x, sig.y);
        },
        py::arg("seed"), py::arg("n_data_symbols") = 10,
        py::arg("pn_enabled") = true,
        "Training block plus seeded payload, unit mean power; returns (x, y).");

    m.def("simulate_and_sync", &simulate_and_sync, py::arg("seed"),
          py::arg("pad"), py::arg("cfo_hz") = 0.0,
          py::arg("osnr_db") = std::nullopt, py::arg("dgd_ps") = 0.0,
          py::arg("launch_deg") = 45.0, py::arg("pdl_db") = 0.0,
          py::arg("cd_ps_nm") = 0.0, py::arg("linewidth_hz") = std::nullopt,
          py::arg("beta") = 8,
          "One seeded frame through the channel and both estimators; returns "
          "dict(d_hat_x, d_hat_y, alpha_hat, eps_hat, mu_hat, nu_hat_hz, "
          "true_start).");
}
