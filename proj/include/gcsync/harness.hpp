#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcsync/channel.hpp"
#include "gcsync/frame.hpp"
#include "gcsync/types.hpp"

namespace gcsync {

enum class SweepVariable { osnr_db, pdl_db, residual_cd, dgd_ps, cfo_hz };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

struct OutputPaths {
    std::string summary_json = "summary.json";
    std::string trials_csv = "trials.csv";
};

struct CampaignSpec {
    FrameConfig frame_cfg;
    ChannelProfile base_profile;
    SweepVariable sweep_variable = SweepVariable::osnr_db;
    std::vector<double> sweep_grid;
    std::size_t trials_per_point = 200;
    std::uint64_t master_seed = 1;
    std::size_t n_data_symbols = 10;  // copied into frame_cfg by validate()
    std::size_t beta = 8;
    OutputPaths outputs;

    // Normalizes (n_data_symbols into frame_cfg) and rejects empty grids,
    // zero trial counts, and malformed pads or profiles.
    void validate();
};

// One trial's records. d_raw is the plain offset d_hat - true_start; d_err
// is the scored error: distance to the nearest acceptable arrival position
// (the DGD branch starts), less the residual-CD walk-off allowance, clamped
// at zero. failed marks trials whose component threw; their estimate fields
// hold sentinels and they are excluded from error aggregates.
struct TrialReport {
    std::size_t point_index = 0;
    double point_value = 0.0;
    std::size_t trial_index = 0;
    std::uint64_t trial_seed = 0;
    bool failed = false;
    std::string error;

    std::int64_t true_start = 0;
    double true_nu_hz = 0.0;

    std::int64_t d_hat_x = 0;
    std::int64_t d_hat_y = 0;
    int alpha_hat = 0;
    double eps_hat = 0.0;
    int mu_hat = 0;
    double nu_hat_hz = 0.0;

    std::int64_t d_raw_x = 0;
    std::int64_t d_raw_y = 0;
    std::int64_t d_err_x = 0;
    std::int64_t d_err_y = 0;
    std::int64_t alpha_err = 0;
    double cfo_err_hz = 0.0;
    bool sync_success = false;
    double wall_ms = 0.0;
};

struct PointSummary {
    double point_value = 0.0;
    std::size_t trials = 0;
    std::size_t n_failed = 0;
    double sync_error_rate = 0.0;
    double cfo_err_mean_hz = 0.0;
    double cfo_err_max_hz = 0.0;
    double cfo_err_p99_hz = 0.0;
    double mean_abs_d_raw = 0.0;
    // d_err values pooled over both polarizations, non-failed trials.
    std::map<std::int64_t, std::size_t> timing_err_hist;
};

struct SweepSummary {
    std::string schema = "gcsync-summary/1";
    std::vector<PointSummary> points;
};

// Scoring. Acceptable arrival positions are the frame start shifted by the
// DGD branch delays the launch angle excites on that polarization; the
// allowance is the dispersion walk-off of the edge subcarrier, capped at
// the walk-off of the 800 ps/nm design budget.
std::vector<std::int64_t> timing_branches(std::int64_t true_start,
                                          const ChannelProfile& profile,
                                          const FrameConfig& cfg, char pol);
std::int64_t cd_walkoff_samples(double cd_ps_per_nm,
                                const ChannelProfile& profile,
                                const FrameConfig& cfg);
std::int64_t score_timing(std::int64_t d_hat, std::int64_t true_start,
                          const ChannelProfile& profile,
                          const FrameConfig& cfg, char pol);

// The sweep point's resolved channel profile.
ChannelProfile point_profile(const CampaignSpec& spec, double point_value);

TrialReport run_trial(const CampaignSpec& spec, std::size_t point_index,
                      std::size_t trial_index);

// Executes grid x trials (threads > 1 uses a fixed pool over a shared
// index; aggregation always runs in trial order, so the outputs are
// byte-identical to a serial run), writes outputs.summary_json and
// outputs.trials_csv under out_dir, returns the summary.
SweepSummary run_campaign(const CampaignSpec& spec, const std::string& out_dir,
                          unsigned threads = 1);

// Aggregation used by run_campaign, exposed so the CSV can be re-reduced.
SweepSummary aggregate(const CampaignSpec& spec,
                       const std::vector<TrialReport>& reports);

std::string summary_to_json(const CampaignSpec& spec,
                            const SweepSummary& summary);

// Reads back what run_campaign wrote; the aggregate of the result
// reproduces the summary exactly.
std::vector<TrialReport> read_trials_csv(const std::string& path);

// Scenario trace emission: one seeded trial with and without the PN weight,
// M_x/M_y/alpha CSVs for both, plus integer-CFO traces at +5 and -5 GHz.
// Scenarios: "plateau" (500 ps DGD at launch 0, a 20-sample relative
// delay), "neutral" (pad only).
void emit_traces(const CampaignSpec& spec, const std::string& scenario,
                 const std::string& out_dir);

// JSON config mirroring the field names above; unknown keys are rejected.
CampaignSpec parse_campaign(const std::string& json_text);
CampaignSpec load_campaign(const std::string& path);

}  // namespace gcsync
