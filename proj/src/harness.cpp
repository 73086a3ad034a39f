#include "gcsync/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "gcsync/errors.hpp"
#include "gcsync/pn.hpp"
#include "gcsync/sync.hpp"

namespace gcsync {

namespace {

using ordered_json = nlohmann::ordered_json;

// Offsets within the edge-subcarrier walk-off of this much dispersion count
// as on-time: the residual-CD budget the receiver is dimensioned for.
// Beyond it the walk-off allowance stops growing and the scored error
// exposes the degradation.
constexpr double kResidualCdBudgetPsNm = 800.0;

// Estimate fields of a failed trial carry this sentinel.
constexpr std::int64_t kFailSentinel = 1 << 20;

// Search extends this far past the largest possible pad: room for the
// late-arrival offsets that heavy dispersion produces while keeping
// pure-pad candidates (whose structural sidelobes can rival a dispersed
// peak) out of the window.
constexpr std::int64_t kSearchSlack = 17;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double speed_of_light() { return 299792458.0; }

}  // namespace

std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::osnr_db: return "osnr_db";
        case SweepVariable::pdl_db: return "pdl_db";
        case SweepVariable::residual_cd: return "residual_cd";
        case SweepVariable::dgd_ps: return "dgd_ps";
        case SweepVariable::cfo_hz: return "cfo_hz";
    }
    throw config_error("unreachable sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    if (name == "osnr_db") return SweepVariable::osnr_db;
    if (name == "pdl_db") return SweepVariable::pdl_db;
    if (name == "residual_cd") return SweepVariable::residual_cd;
    if (name == "dgd_ps") return SweepVariable::dgd_ps;
    if (name == "cfo_hz") return SweepVariable::cfo_hz;
    throw config_error("unknown sweep variable: " + name);
}

void CampaignSpec::validate() {
    if (sweep_grid.empty()) throw config_error("sweep grid is empty");
    if (trials_per_point == 0) throw config_error("trials_per_point must be >= 1");
    if (base_profile.timing_pad.min < 0 ||
        base_profile.timing_pad.max < base_profile.timing_pad.min)
        throw config_error("timing_pad range malformed");
    frame_cfg.n_data_symbols = n_data_symbols;
    data_bins(frame_cfg);  // rejects impossible layouts
}

std::int64_t cd_walkoff_samples(double cd_ps_per_nm,
                                const ChannelProfile& profile,
                                const FrameConfig& cfg) {
    if (cd_ps_per_nm == 0.0) return 0;
    const double lambda = profile.center_wavelength_nm * 1e-9;
    const auto n = static_cast<std::int64_t>(cfg.n_fft);
    std::int64_t edge_bin = 0;
    for (std::size_t b : data_bins(cfg)) {
        auto s = static_cast<std::int64_t>(b);
        if (s >= n / 2) s -= n;
        edge_bin = std::max(edge_bin, std::abs(s));
    }
    const double f_edge = static_cast<double>(edge_bin) * cfg.delta_f();
    const double d_s_per_m = std::abs(cd_ps_per_nm) * 1e-3;
    const double tau = d_s_per_m * lambda * lambda / speed_of_light() * f_edge;
    return static_cast<std::int64_t>(std::ceil(tau * cfg.f_s));
}

std::vector<std::int64_t> timing_branches(std::int64_t true_start,
                                          const ChannelProfile& profile,
                                          const FrameConfig& cfg, char pol) {
    const double split = profile.dgd_ps * 1e-12 * cfg.f_s;
    if (split == 0.0) return {true_start};
    const std::int64_t slow = true_start + std::llround(split / 2);
    const std::int64_t fast = true_start - std::llround(split / 2);
    const double t = profile.pmd_launch_deg * std::numbers::pi / 180.0;
    const double c2 = std::cos(t) * std::cos(t);
    const double s2 = std::sin(t) * std::sin(t);
    const double w_slow = pol == 'x' ? c2 : s2;
    const double w_fast = pol == 'x' ? s2 : c2;
    std::vector<std::int64_t> out;
    if (w_slow > 1e-9) out.push_back(slow);
    if (w_fast > 1e-9) out.push_back(fast);
    return out;
}

std::int64_t score_timing(std::int64_t d_hat, std::int64_t true_start,
                          const ChannelProfile& profile,
                          const FrameConfig& cfg, char pol) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t b : timing_branches(true_start, profile, cfg, pol)) {
        const std::int64_t diff = d_hat - b;
        if (std::abs(diff) < std::abs(best)) best = diff;
    }
    const std::int64_t w =
        std::min(cd_walkoff_samples(profile.residual_cd_ps_per_nm, profile, cfg),
                 cd_walkoff_samples(kResidualCdBudgetPsNm, profile, cfg));
    const std::int64_t mag = std::abs(best) - w;
    if (mag <= 0) return 0;
    return best > 0 ? mag : -mag;
}

ChannelProfile point_profile(const CampaignSpec& spec, double point_value) {
    ChannelProfile p = spec.base_profile;
    switch (spec.sweep_variable) {
        case SweepVariable::osnr_db: p.osnr_db = point_value; break;
        case SweepVariable::pdl_db: p.pdl_db = point_value; break;
        case SweepVariable::residual_cd: p.residual_cd_ps_per_nm = point_value; break;
        case SweepVariable::dgd_ps: p.dgd_ps = point_value; break;
        case SweepVariable::cfo_hz: p.cfo_hz = point_value; break;
    }
    return p;
}

TrialReport run_trial(const CampaignSpec& spec, std::size_t point_index,
                      std::size_t trial_index) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialReport rep;
    rep.point_index = point_index;
    rep.point_value = spec.sweep_grid.at(point_index);
    rep.trial_index = trial_index;
    const std::string prefix =
        "p" + std::to_string(point_index) + "/t" + std::to_string(trial_index);
    rep.trial_seed = spec.master_seed ^ fnv1a64(prefix);  // stream fingerprint

    FrameConfig f = spec.frame_cfg;
    f.n_data_symbols = spec.n_data_symbols;
    const ChannelProfile profile = point_profile(spec, rep.point_value);
    rep.true_nu_hz = profile.cfo_hz;

    try {
        const TrialStreams streams{spec.master_seed, prefix};
        RngStream payload = streams.stream("payload");
        const DualPolSignal tx =
            build_frame(training_pair_416(), f, payload);
        const DualPolSignal rx = run_channel(tx, profile, streams);
        rep.true_start = rx.true_frame_start.value_or(0);

        SyncConfig sc = SyncConfig::defaults(f);
        sc.beta = spec.beta;
        sc.search_begin = 0;
        sc.search_end = profile.timing_pad.max + kSearchSlack;
        const auto [est, trace] = synchronize(rx, sc);

        rep.d_hat_x = est.d_hat_x;
        rep.d_hat_y = est.d_hat_y;
        rep.alpha_hat = est.alpha_hat;
        rep.eps_hat = est.eps_hat;
        rep.mu_hat = est.mu_hat;
        rep.nu_hat_hz = est.nu_hat_hz;
        rep.d_raw_x = est.d_hat_x - rep.true_start;
        rep.d_raw_y = est.d_hat_y - rep.true_start;
        rep.d_err_x = score_timing(est.d_hat_x, rep.true_start, profile, f, 'x');
        rep.d_err_y = score_timing(est.d_hat_y, rep.true_start, profile, f, 'y');
        rep.alpha_err = std::abs(static_cast<std::int64_t>(rep.alpha_hat)) -
                        std::llround(std::abs(profile.dgd_ps) * 1e-12 * f.f_s);
        rep.cfo_err_hz = est.nu_hat_hz - profile.cfo_hz;
        rep.sync_success = rep.d_err_x == 0 && rep.d_err_y == 0;
    } catch (const error& e) {
        rep.failed = true;
        rep.error = e.what();
        rep.d_hat_x = rep.d_hat_y = kFailSentinel;
        rep.d_raw_x = rep.d_raw_y = kFailSentinel;
        rep.d_err_x = rep.d_err_y = kFailSentinel;
        rep.alpha_err = kFailSentinel;
        rep.cfo_err_hz = std::numeric_limits<double>::quiet_NaN();
        rep.sync_success = false;
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

SweepSummary aggregate(const CampaignSpec& spec,
                       const std::vector<TrialReport>& reports) {
    const std::size_t trials = spec.trials_per_point;
    SweepSummary sum;
    for (std::size_t p = 0; p < spec.sweep_grid.size(); ++p) {
        PointSummary ps;
        ps.point_value = spec.sweep_grid[p];
        ps.trials = trials;
        std::vector<double> errs;
        double raw_acc = 0.0;
        std::size_t n_err = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const TrialReport& r = reports[p * trials + t];
            if (!r.sync_success) ++n_err;
            if (r.failed) {
                ++ps.n_failed;
                continue;
            }
            errs.push_back(std::abs(r.cfo_err_hz));
            raw_acc += (std::abs(static_cast<double>(r.d_raw_x)) +
                        std::abs(static_cast<double>(r.d_raw_y))) /
                       2.0;
            ++ps.timing_err_hist[r.d_err_x];
            ++ps.timing_err_hist[r.d_err_y];
        }
        ps.sync_error_rate =
            static_cast<double>(n_err) / static_cast<double>(trials);
        const std::size_t n = errs.size();
        if (n > 0) {
            double acc = 0.0;
            double mx = 0.0;
            for (double e : errs) {
                acc += e;
                mx = std::max(mx, e);
            }
            ps.cfo_err_mean_hz = acc / static_cast<double>(n);
            ps.cfo_err_max_hz = mx;
            std::vector<double> sorted = errs;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t rank = (99 * n + 99) / 100;  // ceil(0.99 n)
            ps.cfo_err_p99_hz = sorted[rank - 1];
            ps.mean_abs_d_raw = raw_acc / static_cast<double>(n);
        }
        sum.points.push_back(std::move(ps));
    }
    return sum;
}

namespace {

ordered_json campaign_to_json(const CampaignSpec& spec) {
    ordered_json j;
    j["frame_cfg"] = {{"n_fft", spec.frame_cfg.n_fft},
                      {"n_cp", spec.frame_cfg.n_cp},
                      {"l_data", spec.frame_cfg.l_data},
                      {"f_s", spec.frame_cfg.f_s},
                      {"pn_seed", spec.frame_cfg.pn_seed}};
    ordered_json prof;
    prof["cfo_hz"] = spec.base_profile.cfo_hz;
    if (spec.base_profile.osnr_db)
        prof["osnr_db"] = *spec.base_profile.osnr_db;
    else
        prof["osnr_db"] = nullptr;
    prof["dgd_ps"] = spec.base_profile.dgd_ps;
    prof["pmd_launch_deg"] = spec.base_profile.pmd_launch_deg;
    prof["pdl_db"] = spec.base_profile.pdl_db;
    prof["pdl_axis_deg"] = spec.base_profile.pdl_axis_deg;
    prof["residual_cd_ps_per_nm"] = spec.base_profile.residual_cd_ps_per_nm;
    if (spec.base_profile.linewidth_hz)
        prof["linewidth_hz"] = *spec.base_profile.linewidth_hz;
    else
        prof["linewidth_hz"] = nullptr;
    prof["timing_pad"] = {{"min", spec.base_profile.timing_pad.min},
                          {"max", spec.base_profile.timing_pad.max}};
    prof["center_wavelength_nm"] = spec.base_profile.center_wavelength_nm;
    j["base_profile"] = std::move(prof);
    j["sweep"] = {{"variable", to_string(spec.sweep_variable)},
                  {"grid", spec.sweep_grid}};
    j["trials_per_point"] = spec.trials_per_point;
    j["master_seed"] = spec.master_seed;
    j["n_data_symbols"] = spec.n_data_symbols;
    j["sync"] = {{"beta", spec.beta}};
    j["outputs"] = {{"summary_json", spec.outputs.summary_json},
                    {"trials_csv", spec.outputs.trials_csv}};
    return j;
}

}  // namespace

std::string summary_to_json(const CampaignSpec& spec,
                            const SweepSummary& summary) {
    ordered_json j;
    j["schema"] = summary.schema;
    j["config"] = campaign_to_json(spec);
    ordered_json pts = ordered_json::array();
    for (const PointSummary& p : summary.points) {
        ordered_json jp;
        jp["point_value"] = p.point_value;
        jp["trials"] = p.trials;
        jp["n_failed"] = p.n_failed;
        jp["sync_error_rate"] = p.sync_error_rate;
        jp["cfo_err_mean_hz"] = p.cfo_err_mean_hz;
        jp["cfo_err_max_hz"] = p.cfo_err_max_hz;
        jp["cfo_err_p99_hz"] = p.cfo_err_p99_hz;
        jp["mean_abs_d_raw"] = p.mean_abs_d_raw;
        ordered_json hist = ordered_json::object();
        for (const auto& [k, v] : p.timing_err_hist)
            hist[std::to_string(k)] = v;
        jp["timing_err_hist"] = std::move(hist);
        pts.push_back(std::move(jp));
    }
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

namespace {

const char* kCsvHeader =
    "point_index,point_value,trial_index,trial_seed,failed,error,"
    "true_start,true_nu_hz,d_hat_x,d_hat_y,alpha_hat,eps_hat,mu_hat,"
    "nu_hat_hz,d_raw_x,d_raw_y,d_err_x,d_err_y,alpha_err,cfo_err_hz,"
    "sync_success,wall_ms";

std::string csv_row(const TrialReport& r) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::ostringstream os;
    os << r.point_index << ',' << fmt17(r.point_value) << ',' << r.trial_index
       << ',' << r.trial_seed << ',' << (r.failed ? 1 : 0) << ',' << err << ','
       << r.true_start << ',' << fmt17(r.true_nu_hz) << ',' << r.d_hat_x << ','
       << r.d_hat_y << ',' << r.alpha_hat << ',' << fmt17(r.eps_hat) << ','
       << r.mu_hat << ',' << fmt17(r.nu_hat_hz) << ',' << r.d_raw_x << ','
       << r.d_raw_y << ',' << r.d_err_x << ',' << r.d_err_y << ','
       << r.alpha_err << ',' << fmt17(r.cfo_err_hz) << ','
       << (r.sync_success ? 1 : 0) << ',' << fmt17(r.wall_ms);
    return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

SweepSummary run_campaign(const CampaignSpec& spec_in,
                          const std::string& out_dir, unsigned threads) {
    CampaignSpec spec = spec_in;
    spec.validate();
    const std::size_t total = spec.sweep_grid.size() * spec.trials_per_point;
    std::vector<TrialReport> reports(total);

    if (threads <= 1) {
        for (std::size_t k = 0; k < total; ++k)
            reports[k] = run_trial(spec, k / spec.trials_per_point,
                                   k % spec.trials_per_point);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= total) return;
                reports[k] = run_trial(spec, k / spec.trials_per_point,
                                       k % spec.trials_per_point);
            }
        };
        std::vector<std::thread> pool;
        const unsigned n =
            std::min<unsigned>(threads, static_cast<unsigned>(total));
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary summary = aggregate(spec, reports);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output dir: " + out_dir);
    const auto jpath =
        std::filesystem::path(out_dir) / spec.outputs.summary_json;
    const auto cpath = std::filesystem::path(out_dir) / spec.outputs.trials_csv;
    {
        std::ofstream js(jpath, std::ios::trunc);
        if (!js) throw io_error("cannot open for write: " + jpath.string());
        js << summary_to_json(spec, summary);
        if (!js) throw io_error("write failed: " + jpath.string());
    }
    {
        std::ofstream cs(cpath, std::ios::trunc);
        if (!cs) throw io_error("cannot open for write: " + cpath.string());
        cs << kCsvHeader << "\n";
        for (const TrialReport& r : reports) cs << csv_row(r) << "\n";
        if (!cs) throw io_error("write failed: " + cpath.string());
    }
    return summary;
}

std::vector<TrialReport> read_trials_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw io_error("unexpected trials header in " + path);
    std::vector<TrialReport> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 22) throw io_error("malformed trials row in " + path);
        TrialReport r;
        r.point_index = std::stoull(f[0]);
        r.point_value = std::stod(f[1]);
        r.trial_index = std::stoull(f[2]);
        r.trial_seed = std::stoull(f[3]);
        r.failed = f[4] == "1";
        r.error = f[5];
        r.true_start = std::stoll(f[6]);
        r.true_nu_hz = std::stod(f[7]);
        r.d_hat_x = std::stoll(f[8]);
        r.d_hat_y = std::stoll(f[9]);
        r.alpha_hat = std::stoi(f[10]);
        r.eps_hat = std::stod(f[11]);
        r.mu_hat = std::stoi(f[12]);
        r.nu_hat_hz = std::stod(f[13]);
        r.d_raw_x = std::stoll(f[14]);
        r.d_raw_y = std::stoll(f[15]);
        r.d_err_x = std::stoll(f[16]);
        r.d_err_y = std::stoll(f[17]);
        r.alpha_err = std::stoll(f[18]);
        r.cfo_err_hz = std::stod(f[19]);
        r.sync_success = f[20] == "1";
        r.wall_ms = std::stod(f[21]);
        out.push_back(std::move(r));
    }
    return out;
}

void emit_traces(const CampaignSpec& spec_in, const std::string& scenario,
                 const std::string& out_dir) {
    CampaignSpec spec = spec_in;
    spec.sweep_grid = {0.0};
    spec.validate();
    FrameConfig f = spec.frame_cfg;

    ChannelProfile profile;
    profile.timing_pad = PadSpec::fixed(100);
    std::size_t beta = spec.beta;
    if (scenario == "plateau") {
        // 500 ps at launch 0 is a pure 20-sample relative delay between the
        // polarizations; beta must cover it.
        profile.dgd_ps = 500.0;
        profile.pmd_launch_deg = 0.0;
        profile.cfo_hz = 5e9;
        profile.osnr_db = 4.0;
        beta = 20;
    } else if (scenario != "neutral") {
        throw config_error("unknown trace scenario: " + scenario);
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output dir: " + out_dir);

    const auto provenance = [&](std::ofstream& os) {
        os << "# scenario=" << scenario << "\n";
        os << "# master_seed=" << spec.master_seed << "\n";
        os << "# dgd_ps=" << fmt17(profile.dgd_ps)
           << " launch_deg=" << fmt17(profile.pmd_launch_deg)
           << " cfo_hz=" << fmt17(profile.cfo_hz) << " osnr_db="
           << (profile.osnr_db ? fmt17(*profile.osnr_db) : "none")
           << " pad=" << profile.timing_pad.min << "\n";
        os << "# beta=" << beta << "\n";
    };

    // Same streams for both runs: the weight is the only difference.
    for (const bool pn_on : {true, false}) {
        const TrialStreams streams{spec.master_seed, "trace"};
        RngStream payload = streams.stream("payload");
        const DualPolSignal tx =
            build_frame(training_pair_416(), f, payload, nullptr, pn_on);
        const DualPolSignal rx = run_channel(tx, profile, streams);

        SyncConfig sc = SyncConfig::defaults(f);
        if (!pn_on) sc.pn.assign(f.n_s(), 1.0);
        sc.beta = beta;
        sc.search_begin = 0;
        sc.search_end = profile.timing_pad.max + beta + kSearchSlack;
        const FrameSyncResult fs = frame_sync(rx, sc);

        const auto path = std::filesystem::path(out_dir) /
                          (pn_on ? "metric_pn.csv" : "metric_nopn.csv");
        std::ofstream os(path, std::ios::trunc);
        if (!os) throw io_error("cannot open for write: " + path.string());
        provenance(os);
        os << "d,m_x,m_y,best_alpha_x,best_alpha_y\n";
        for (std::size_t i = 0; i < fs.trace.m_x.size(); ++i)
            os << fs.trace.d_begin + static_cast<std::int64_t>(i) << ','
               << fmt17(fs.trace.m_x[i]) << ',' << fmt17(fs.trace.m_y[i])
               << ',' << fs.trace.best_alpha_x[i] << ','
               << fs.trace.best_alpha_y[i] << "\n";
        if (!os) throw io_error("write failed: " + path.string());
    }

    for (const double nu : {5e9, -5e9}) {
        ChannelProfile clean;
        clean.timing_pad = PadSpec::fixed(100);
        clean.cfo_hz = nu;
        const TrialStreams streams{spec.master_seed,
                                   nu > 0 ? "trace/xi+" : "trace/xi-"};
        RngStream payload = streams.stream("payload");
        const DualPolSignal tx = build_frame(training_pair_416(), f, payload);
        const DualPolSignal rx = run_channel(tx, clean, streams);

        SyncConfig sc = SyncConfig::defaults(f);
        sc.search_begin = 0;
        sc.search_end = clean.timing_pad.max + kSearchSlack;
        const auto [est, trace] = synchronize(rx, sc);

        const auto path = std::filesystem::path(out_dir) /
                          (nu > 0 ? "xi_plus5g.csv" : "xi_minus5g.csv");
        std::ofstream os(path, std::ios::trunc);
        if (!os) throw io_error("cannot open for write: " + path.string());
        os << "# scenario=" << scenario << " cfo_hz=" << fmt17(nu)
           << " mu_hat=" << est.mu_hat << "\n";
        os << "mu,xi\n";
        for (std::size_t i = 0; i < trace.xi.size(); ++i)
            os << trace.xi_mu_begin + static_cast<int>(i) << ','
               << fmt17(trace.xi[i]) << "\n";
        if (!os) throw io_error("write failed: " + path.string());
    }
}

namespace {

using njson = nlohmann::json;

void check_keys(const njson& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw config_error("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_num(const njson& j, const char* key, T fallback,
          const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number())
        throw config_error(std::string("key '") + key + "' in " + where +
                           " must be a number");
    return v.get<T>();
}

}  // namespace

CampaignSpec parse_campaign(const std::string& json_text) {
    njson j;
    try {
        j = njson::parse(json_text);
    } catch (const njson::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be an object");
    check_keys(j,
               {"frame_cfg", "base_profile", "sweep", "trials_per_point",
                "master_seed", "n_data_symbols", "sync", "outputs"},
               "config");

    CampaignSpec spec;

    if (j.contains("frame_cfg")) {
        const auto& fj = j.at("frame_cfg");
        check_keys(fj, {"n_fft", "n_cp", "l_data", "f_s", "pn_seed"},
                   "frame_cfg");
        spec.frame_cfg.n_fft =
            get_num<std::size_t>(fj, "n_fft", spec.frame_cfg.n_fft, "frame_cfg");
        spec.frame_cfg.n_cp =
            get_num<std::size_t>(fj, "n_cp", spec.frame_cfg.n_cp, "frame_cfg");
        spec.frame_cfg.l_data = get_num<std::size_t>(
            fj, "l_data", spec.frame_cfg.l_data, "frame_cfg");
        spec.frame_cfg.f_s =
            get_num<double>(fj, "f_s", spec.frame_cfg.f_s, "frame_cfg");
        spec.frame_cfg.pn_seed = get_num<std::uint32_t>(
            fj, "pn_seed", spec.frame_cfg.pn_seed, "frame_cfg");
    }

    if (j.contains("base_profile")) {
        const auto& pj = j.at("base_profile");
        check_keys(pj,
                   {"cfo_hz", "osnr_db", "dgd_ps", "pmd_launch_deg", "pdl_db",
                    "pdl_axis_deg", "residual_cd_ps_per_nm", "linewidth_hz",
                    "timing_pad", "center_wavelength_nm"},
                   "base_profile");
        ChannelProfile& p = spec.base_profile;
        p.cfo_hz = get_num<double>(pj, "cfo_hz", 0.0, "base_profile");
        if (pj.contains("osnr_db") && !pj.at("osnr_db").is_null())
            p.osnr_db = get_num<double>(pj, "osnr_db", 0.0, "base_profile");
        p.dgd_ps = get_num<double>(pj, "dgd_ps", 0.0, "base_profile");
        p.pmd_launch_deg =
            get_num<double>(pj, "pmd_launch_deg", 45.0, "base_profile");
        p.pdl_db = get_num<double>(pj, "pdl_db", 0.0, "base_profile");
        p.pdl_axis_deg =
            get_num<double>(pj, "pdl_axis_deg", 45.0, "base_profile");
        p.residual_cd_ps_per_nm =
            get_num<double>(pj, "residual_cd_ps_per_nm", 0.0, "base_profile");
        if (pj.contains("linewidth_hz") && !pj.at("linewidth_hz").is_null())
            p.linewidth_hz =
                get_num<double>(pj, "linewidth_hz", 0.0, "base_profile");
        if (pj.contains("timing_pad")) {
            const auto& tj = pj.at("timing_pad");
            if (tj.is_number()) {
                p.timing_pad = PadSpec::fixed(tj.get<std::int64_t>());
            } else if (tj.is_object()) {
                check_keys(tj, {"min", "max"}, "timing_pad");
                p.timing_pad.min =
                    get_num<std::int64_t>(tj, "min", 0, "timing_pad");
                p.timing_pad.max =
                    get_num<std::int64_t>(tj, "max", 0, "timing_pad");
            } else {
                throw config_error(
                    "timing_pad must be a number or {min, max}");
            }
        }
        p.center_wavelength_nm =
            get_num<double>(pj, "center_wavelength_nm", 1550.0, "base_profile");
    }

    if (!j.contains("sweep")) throw config_error("config needs a sweep section");
    {
        const auto& sj = j.at("sweep");
        check_keys(sj, {"variable", "grid"}, "sweep");
        if (!sj.contains("variable") || !sj.at("variable").is_string())
            throw config_error("sweep.variable must be a string");
        spec.sweep_variable =
            sweep_variable_from_string(sj.at("variable").get<std::string>());
        if (!sj.contains("grid") || !sj.at("grid").is_array())
            throw config_error("sweep.grid must be an array");
        for (const auto& v : sj.at("grid")) {
            if (!v.is_number())
                throw config_error("sweep.grid entries must be numbers");
            spec.sweep_grid.push_back(v.get<double>());
        }
    }

    spec.trials_per_point = get_num<std::size_t>(j, "trials_per_point",
                                                 spec.trials_per_point, "config");
    spec.master_seed =
        get_num<std::uint64_t>(j, "master_seed", spec.master_seed, "config");
    spec.n_data_symbols = get_num<std::size_t>(j, "n_data_symbols",
                                               spec.n_data_symbols, "config");
    if (j.contains("sync")) {
        const auto& yj = j.at("sync");
        check_keys(yj, {"beta"}, "sync");
        spec.beta = get_num<std::size_t>(yj, "beta", spec.beta, "sync");
    }
    if (j.contains("outputs")) {
        const auto& oj = j.at("outputs");
        check_keys(oj, {"summary_json", "trials_csv"}, "outputs");
        if (oj.contains("summary_json"))
            spec.outputs.summary_json = oj.at("summary_json").get<std::string>();
        if (oj.contains("trials_csv"))
            spec.outputs.trials_csv = oj.at("trials_csv").get<std::string>();
    }

    spec.validate();
    return spec;
}

CampaignSpec load_campaign(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_campaign(ss.str());
}

}  // namespace gcsync
