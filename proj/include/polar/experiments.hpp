#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "polar/channels.hpp"
#include "polar/codec.hpp"
#include "polar/decoder.hpp"
#include "polar/encoder.hpp"
#include "polar/polarization.hpp"

namespace polar {

/// Parameters of one Monte Carlo sweep: a code, a payload, a channel family and
/// the list of noise parameters to visit, `trials` repetitions per point.
struct SweepConfig {
    unsigned stages = 8;
    FrozenPolicy frozen_policy = FrozenPolicy::first_half;
    double design_epsilon = 0.5;  // profile parameter for lowest_capacity selection
    bool bit_reversed = false;
    int frozen_value = 0;
    ChannelKind channel = ChannelKind::bec;
    std::vector<double> params;
    unsigned trials = 100;
    std::uint64_t seed = 0;
    std::string payload_text;
    SamplingMode sampling = SamplingMode::with_replacement;
    unsigned jobs = 1;  // 0 = all available cores

    std::size_t block_length() const { return std::size_t{1} << stages; }
};

enum class FailKind { none, ambiguous, inconsistent };

/// One decode outcome. success means the decode was unique and the recovered
/// payload matched; fail_kind records the decoder tag.
struct TrialRecord {
    std::size_t block_length = 0;
    ChannelKind noise_kind = ChannelKind::bec;
    double noise_param = 0.0;
    unsigned attempts = 1;
    double run_time_s = 0.0;
    double solve_time_s = 0.0;
    bool success = false;
    FailKind fail_kind = FailKind::none;
    std::size_t affected_count = 0;
    std::string decoded_text;
    std::uint64_t seed = 0;
    std::string timestamp;  // ISO 8601 UTC
};

struct SweepSummary {
    double noise_param = 0.0;
    unsigned trials = 0;
    unsigned fails = 0;
    double fail_fraction = 0.0;
    double mean_solve_s = 0.0;
    double stddev_solve_s = 0.0;
    double mean_affected = 0.0;
};

struct SweepResult {
    std::vector<TrialRecord> trials;
    std::vector<SweepSummary> summaries;
};

/// Code described by a sweep config: block length 2^stages, message length
/// half the block, frozen set chosen by the configured policy.
PolarCode make_sweep_code(const SweepConfig& config);

/// Single transmission: encode the payload, apply one noise realization, decode
/// (flip positions are dropped via the receiver's side information), verify.
TrialRecord run_trial(const CodePlan& plan, const BitWord& payload, const ChannelModel& model,
                      std::uint64_t seed, SamplingMode mode = SamplingMode::with_replacement);

/// Convenience overload; builds the code and plan from the config.
TrialRecord run_trial(const SweepConfig& config, double noise_param, std::uint64_t seed);

/// Full sweep; per-trial seeds derive from (seed, parameter index, trial index),
/// so results are independent of the worker count.
SweepResult run_sweep(const SweepConfig& config);

/// Expected number of transmissions until success: 1 / (1 - fail_fraction).
double expected_transmissions(double fail_fraction);

struct TimingPoint {
    std::size_t block_length = 0;
    double mean_s = 0.0;
    double stddev_s = 0.0;
    unsigned samples = 0;
};

/// Mean and standard deviation of the elimination time over successful decodes,
/// one point per block length. Runs single-threaded.
std::vector<TimingPoint> timing_profile(const std::vector<std::size_t>& n_list,
                                        const ChannelModel& model, unsigned trials,
                                        std::uint64_t seed);

struct PowerLawFit {
    double coefficient = 0.0;
    double exponent = 0.0;
    double exponent_stderr = 0.0;
    double r_squared = 0.0;
};

/// Least-squares line in log-log space: time ~ coefficient * N^exponent.
/// Requires at least 4 points with positive means.
PowerLawFit fit_power_law(const std::vector<TimingPoint>& profile);

/// Monte Carlo mean of the realized flipped-position count per sigma.
std::vector<std::pair<double, double>> flip_count_curve(std::size_t N,
                                                        const std::vector<double>& sigmas,
                                                        unsigned trials, std::uint64_t seed);

struct RetryResult {
    double mean_attempts = 0.0;
    /// Failure fraction of first attempts only; an estimate of the single-trial
    /// failure probability that is independent of the retry mechanics.
    double first_attempt_fail_fraction = 0.0;
    std::vector<TrialRecord> episodes;
};

/// Repeat each transmission with fresh noise until it decodes, up to
/// max_attempts. episodes records the final attempt of each episode with its
/// attempt count.
RetryResult run_retry(const SweepConfig& config, double noise_param, unsigned episodes,
                      unsigned max_attempts);

/// CSV/plot emission. Field order is fixed; text fields are double-quoted.
void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summaries);
/// Space-separated variants with a '#' header line.
void write_trials_dat(std::ostream& os, const std::vector<TrialRecord>& records);
void write_summary_dat(std::ostream& os, const std::vector<SweepSummary>& summaries);

const char* to_string(ChannelKind kind);
const char* to_string(FailKind kind);

}  // namespace polar
