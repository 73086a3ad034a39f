#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gcsync/errors.hpp"
#include "gcsync/frame.hpp"
#include "gcsync/golay.hpp"
#include "gcsync/harness.hpp"
#include "gcsync/signal_io.hpp"
#include "gcsync/sync.hpp"

namespace {

using namespace gcsync;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void cmd_seq_dump(const std::string& stage, const std::string& out_path) {
    GolayPair pair;
    if (stage == "seed26") {
        pair = golay_seed_26();
    } else if (stage == "qpsk26") {
        pair = to_qpsk(golay_seed_26());
    } else if (stage == "qam16") {
        pair = training_pair_416();
    } else {
        throw config_error("unknown stage: " + stage);
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::trunc);
        if (!file) throw io_error("cannot open for write: " + out_path);
        os = &file;
    }
    *os << "index,re_a,im_a,re_b,im_b\n";
    for (std::size_t i = 0; i < pair.length(); ++i)
        *os << i << ',' << g17(pair.a[i].real()) << ',' << g17(pair.a[i].imag())
            << ',' << g17(pair.b[i].real()) << ',' << g17(pair.b[i].imag())
            << "\n";
    if (!*os) throw io_error("write failed");
}

void cmd_frame_dump(const std::string& out_path, std::uint64_t seed,
                    std::size_t data_symbols, std::uint32_t pn_seed,
                    bool no_pn) {
    FrameConfig cfg;
    cfg.n_data_symbols = data_symbols;
    cfg.pn_seed = pn_seed;
    TrialStreams streams{seed, "frame"};
    RngStream payload = streams.stream("payload");
    FrameLabel label;
    const DualPolSignal sig =
        build_frame(training_pair_416(), cfg, payload, &label, !no_pn);
    write_signal(out_path, sig, cfg, &label);
    std::cout << "wrote " << sig.size() << " samples to " << out_path
              << " (+.hdr)\n";
}

void cmd_sync_trace(const std::string& in_path, const std::string& out_dir,
                    std::size_t beta, std::int64_t search_begin,
                    std::int64_t search_end, bool no_pn) {
    const SignalFile file = read_signal(in_path);
    SyncConfig cfg = SyncConfig::defaults(file.frame);
    cfg.beta = beta;
    if (no_pn) cfg.pn.assign(file.frame.n_s(), 1.0);
    const auto feasible =
        static_cast<std::int64_t>(file.signal.size()) -
        static_cast<std::int64_t>(file.frame.n_r() + file.frame.n_s());
    cfg.search_begin = search_begin;
    cfg.search_end = search_end > 0 ? search_end : feasible + 1;

    const auto [est, trace] = synchronize(file.signal, cfg);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output dir: " + out_dir);
    {
        const auto path = std::filesystem::path(out_dir) / "metric.csv";
        std::ofstream os(path, std::ios::trunc);
        if (!os) throw io_error("cannot open for write: " + path.string());
        os << "d,m_x,m_y,best_alpha_x,best_alpha_y\n";
        for (std::size_t i = 0; i < trace.m_x.size(); ++i)
            os << trace.d_begin + static_cast<std::int64_t>(i) << ','
               << g17(trace.m_x[i]) << ',' << g17(trace.m_y[i]) << ','
               << trace.best_alpha_x[i] << ',' << trace.best_alpha_y[i]
               << "\n";
        if (!os) throw io_error("write failed: " + path.string());
    }
    {
        const auto path = std::filesystem::path(out_dir) / "xi.csv";
        std::ofstream os(path, std::ios::trunc);
        if (!os) throw io_error("cannot open for write: " + path.string());
        os << "mu,xi\n";
        for (std::size_t i = 0; i < trace.xi.size(); ++i)
            os << trace.xi_mu_begin + static_cast<int>(i) << ','
               << g17(trace.xi[i]) << "\n";
        if (!os) throw io_error("write failed: " + path.string());
    }
    std::cout << "d_hat_x=" << est.d_hat_x << " d_hat_y=" << est.d_hat_y
              << " alpha_hat=" << est.alpha_hat << " eps_hat="
              << g17(est.eps_hat) << " mu_hat=" << est.mu_hat
              << " nu_hat_hz=" << g17(est.nu_hat_hz) << "\n";
}

void cmd_sim_run(const std::string& config_path, const std::string& out_dir,
                 std::size_t trials, std::uint64_t seed, bool seed_set,
                 unsigned threads) {
    CampaignSpec spec = load_campaign(config_path);
    if (trials > 0) spec.trials_per_point = trials;
    if (seed_set) spec.master_seed = seed;
    const SweepSummary summary = run_campaign(spec, out_dir, threads);
    for (const PointSummary& p : summary.points)
        std::cout << to_string(spec.sweep_variable) << "=" << g17(p.point_value)
                  << " sync_error_rate=" << g17(p.sync_error_rate)
                  << " cfo_err_max_hz=" << g17(p.cfo_err_max_hz)
                  << " n_failed=" << p.n_failed << "\n";
    std::cout << "wrote " << out_dir << "/" << spec.outputs.summary_json
              << " and " << out_dir << "/" << spec.outputs.trials_csv << "\n";
}

void cmd_sim_trace(const std::string& scenario, const std::string& out_dir,
                   std::uint64_t seed) {
    CampaignSpec spec;
    spec.master_seed = seed;
    spec.sweep_grid = {0.0};
    emit_traces(spec, scenario, out_dir);
    std::cout << "wrote traces for scenario '" << scenario << "' to "
              << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Frame and frequency synchronization for polarization-multiplexed "
        "OFDM: sequence, frame, estimator, and campaign front end"};
    app.require_subcommand(1);

    auto* seq = app.add_subcommand("seq", "Training sequence utilities");
    seq->require_subcommand(1);
    std::string seq_stage = "qam16";
    std::string seq_out;
    auto* seq_dump = seq->add_subcommand("dump", "Write the pair as CSV");
    seq_dump->add_option("--stage", seq_stage,
                         "seed26 | qpsk26 | qam16 (default qam16)");
    seq_dump->add_option("--out", seq_out, "Output file (default stdout)");
    seq_dump->callback([&] { cmd_seq_dump(seq_stage, seq_out); });

    auto* frame = app.add_subcommand("frame", "Frame builder utilities");
    frame->require_subcommand(1);
    std::string frame_out;
    std::uint64_t frame_seed = 1;
    std::size_t frame_nd = 10;
    std::uint32_t frame_pn_seed = 1;
    bool frame_no_pn = false;
    auto* frame_dump =
        frame->add_subcommand("dump", "Build a frame and write it");
    frame_dump->add_option("--out", frame_out, "Output signal path")
        ->required();
    frame_dump->add_option("--seed", frame_seed, "Payload seed (default 1)");
    frame_dump->add_option("--data-symbols", frame_nd,
                           "Payload symbols per polarization (default 10)");
    frame_dump->add_option("--pn-seed", frame_pn_seed,
                           "PN generator seed (default 1)");
    frame_dump->add_flag("--no-pn", frame_no_pn,
                         "Leave training symbol 1 unweighted");
    frame_dump->callback([&] {
        cmd_frame_dump(frame_out, frame_seed, frame_nd, frame_pn_seed,
                       frame_no_pn);
    });

    auto* sync = app.add_subcommand("sync", "Estimator utilities");
    sync->require_subcommand(1);
    std::string sync_in, sync_out;
    std::size_t sync_beta = 8;
    std::int64_t sync_b = 0, sync_e = 0;
    bool sync_no_pn = false;
    auto* sync_trace = sync->add_subcommand(
        "trace", "Run the estimator over a signal file, write traces");
    sync_trace->add_option("--in", sync_in, "Input signal path")->required();
    sync_trace->add_option("--out", sync_out, "Output directory")->required();
    sync_trace->add_option("--beta", sync_beta, "Alpha range (default 8)");
    sync_trace->add_option("--search-begin", sync_b,
                           "First candidate d (default 0)");
    sync_trace->add_option("--search-end", sync_e,
                           "One past last candidate d (default: feasible)");
    sync_trace->add_flag("--no-pn", sync_no_pn, "All-ones metric weights");
    sync_trace->callback([&] {
        cmd_sync_trace(sync_in, sync_out, sync_beta, sync_b, sync_e,
                       sync_no_pn);
    });

    auto* sim = app.add_subcommand("sim", "Monte-Carlo campaigns");
    sim->require_subcommand(1);
    std::string sim_config, sim_out;
    std::size_t sim_trials = 0;
    std::uint64_t sim_seed = 0;
    unsigned sim_threads = 1;
    auto* sim_run =
        sim->add_subcommand("run", "Run a campaign from a JSON config");
    sim_run->add_option("--config", sim_config, "Campaign JSON path")
        ->required();
    sim_run->add_option("--out", sim_out, "Output directory")->required();
    sim_run->add_option("--trials", sim_trials,
                        "Override trials per point");
    auto* seed_opt =
        sim_run->add_option("--seed", sim_seed, "Override master seed");
    sim_run->add_option("--threads", sim_threads, "Worker count (default 1)");
    sim_run->callback([&] {
        cmd_sim_run(sim_config, sim_out, sim_trials, sim_seed,
                    seed_opt->count() > 0, sim_threads);
    });

    std::string trace_scenario, trace_out;
    std::uint64_t trace_seed = 1;
    auto* sim_trace =
        sim->add_subcommand("trace", "Write scenario metric/Xi traces");
    sim_trace->add_option("--scenario", trace_scenario, "plateau | neutral")
        ->required();
    sim_trace->add_option("--out", trace_out, "Output directory")->required();
    sim_trace->add_option("--seed", trace_seed, "Master seed (default 1)");
    sim_trace->callback(
        [&] { cmd_sim_trace(trace_scenario, trace_out, trace_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
