#include "polar/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polar {

namespace {

unsigned resolve_jobs(unsigned jobs) {
#ifdef _OPENMP
    if (jobs == 0) return static_cast<unsigned>(omp_get_max_threads());
    return jobs;
#else
    (void)jobs;
    return 1;
#endif
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::string fmt_g(double v, int precision = 10) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void summarize(const std::vector<TrialRecord>& recs, std::size_t begin, std::size_t count,
               SweepSummary& s) {
    s.trials = static_cast<unsigned>(count);
    double solve_sum = 0.0, affected_sum = 0.0;
    for (std::size_t i = begin; i < begin + count; ++i) {
        if (!recs[i].success) ++s.fails;
        solve_sum += recs[i].solve_time_s;
        affected_sum += static_cast<double>(recs[i].affected_count);
    }
    s.fail_fraction = count ? static_cast<double>(s.fails) / static_cast<double>(count) : 0.0;
    s.mean_solve_s = count ? solve_sum / static_cast<double>(count) : 0.0;
    s.mean_affected = count ? affected_sum / static_cast<double>(count) : 0.0;
    if (count >= 2) {
        double ss = 0.0;
        for (std::size_t i = begin; i < begin + count; ++i) {
            const double d = recs[i].solve_time_s - s.mean_solve_s;
            ss += d * d;
        }
        s.stddev_solve_s = std::sqrt(ss / static_cast<double>(count - 1));
    }
}

}  // namespace

PolarCode make_sweep_code(const SweepConfig& config) {
    const std::size_t frozen_count = config.block_length() / 2;
    if (config.frozen_policy == FrozenPolicy::first_half)
        return first_half_frozen(config.stages, frozen_count, config.frozen_value,
                                 config.bit_reversed);
    PolarCode code;
    code.stages = config.stages;
    code.bit_reversed = config.bit_reversed;
    code.frozen_value = config.frozen_value;
    const CapacityProfile profile = polarize(config.design_epsilon, config.stages);
    code.frozen = select_frozen(profile, frozen_count, FrozenPolicy::lowest_capacity);
    code.validate();
    return code;
}

TrialRecord run_trial(const CodePlan& plan, const BitWord& payload, const ChannelModel& model,
                      std::uint64_t seed, SamplingMode mode) {
    const auto t0 = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.block_length = plan.code().block_length();
    rec.noise_kind = model.kind;
    rec.noise_param = model.param;
    rec.seed = seed;

    const BitWord u = assemble_input(payload, plan.code());
    const BitWord x = plan.butterfly(u);

    Rng rng(seed);
    const NoiseRealization noise = sample_noise(rec.block_length, model, rng, mode);
    rec.affected_count = noise.positions.size();
    const ReceivedWord received = transmit(x, noise);

    const DecodeResult result = noise.kind == NoiseKind::flip ? decode_flip(received, plan)
                                                              : decode(received, plan);
    rec.solve_time_s = result.solve_time_s;
    switch (result.tag) {
        case DecodeTag::success: rec.fail_kind = FailKind::none; break;
        case DecodeTag::ambiguous: rec.fail_kind = FailKind::ambiguous; break;
        case DecodeTag::inconsistent: rec.fail_kind = FailKind::inconsistent; break;
    }
    if (result.tag == DecodeTag::success) {
        rec.success = verify(result, payload);
        rec.decoded_text = result.message.size() % 8 == 0 ? bits_to_text(result.message)
                                                          : result.message.to_string();
    }

    rec.run_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.timestamp = utc_timestamp();
    return rec;
}

TrialRecord run_trial(const SweepConfig& config, double noise_param, std::uint64_t seed) {
    const CodePlan plan(make_sweep_code(config));
    const BitWord payload = text_to_bits(config.payload_text);
    if (payload.size() != plan.code().message_length())
        throw std::invalid_argument("run_trial: payload does not fill the message positions");
    const ChannelModel model = config.channel == ChannelKind::bec
                                   ? ChannelModel::bec(noise_param)
                                   : ChannelModel::gaussian_flip(noise_param);
    return run_trial(plan, payload, model, seed, config.sampling);
}

SweepResult run_sweep(const SweepConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    if (config.params.empty()) throw std::invalid_argument("run_sweep: empty parameter list");

    const CodePlan plan(make_sweep_code(config));
    const BitWord payload = text_to_bits(config.payload_text);
    if (payload.size() != plan.code().message_length())
        throw std::invalid_argument("run_sweep: payload does not fill the message positions");

    SweepResult out;
    out.trials.resize(config.params.size() * config.trials);
    const unsigned jobs = resolve_jobs(config.jobs);

    for (std::size_t p = 0; p < config.params.size(); ++p) {
        const ChannelModel model = config.channel == ChannelKind::bec
                                       ? ChannelModel::bec(config.params[p])
                                       : ChannelModel::gaussian_flip(config.params[p]);
        const std::size_t base = p * config.trials;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(jobs) if (jobs > 1)
#endif
        for (long t = 0; t < static_cast<long>(config.trials); ++t) {
            out.trials[base + static_cast<std::size_t>(t)] =
                run_trial(plan, payload, model,
                          derive_seed(config.seed, p, static_cast<std::uint64_t>(t)),
                          config.sampling);
        }
        SweepSummary s;
        s.noise_param = config.params[p];
        summarize(out.trials, base, config.trials, s);
        out.summaries.push_back(s);
    }
    return out;
}

double expected_transmissions(double fail_fraction) {
    if (!(fail_fraction >= 0.0 && fail_fraction < 1.0))
        throw std::invalid_argument("expected_transmissions: fail fraction must be in [0,1)");
    return 1.0 / (1.0 - fail_fraction);
}

std::vector<TimingPoint> timing_profile(const std::vector<std::size_t>& n_list,
                                        const ChannelModel& model, unsigned trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("timing_profile: trials must be >= 1");
    std::vector<TimingPoint> out;
    out.reserve(n_list.size());
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const std::size_t N = n_list[idx];
        if (N < 2 || (N & (N - 1)) != 0)
            throw std::invalid_argument("timing_profile: block lengths must be powers of two");
        const unsigned stages = static_cast<unsigned>(std::countr_zero(N));
        const CodePlan plan(first_half_frozen(stages, N / 2));
        const BitWord payload(N / 2);

        std::vector<double> times;
        times.reserve(trials);
        for (unsigned t = 0; t < trials; ++t) {
            const TrialRecord rec =
                run_trial(plan, payload, model, derive_seed(seed, idx, t));
            if (rec.success) times.push_back(rec.solve_time_s);
        }
        TimingPoint pt;
        pt.block_length = N;
        pt.samples = static_cast<unsigned>(times.size());
        if (!times.empty()) {
            double sum = 0.0;
            for (double v : times) sum += v;
            pt.mean_s = sum / static_cast<double>(times.size());
            if (times.size() >= 2) {
                double ss = 0.0;
                for (double v : times) ss += (v - pt.mean_s) * (v - pt.mean_s);
                pt.stddev_s = std::sqrt(ss / static_cast<double>(times.size() - 1));
            }
        }
        out.push_back(pt);
    }
    return out;
}

PowerLawFit fit_power_law(const std::vector<TimingPoint>& profile) {
    if (profile.size() < 4)
        throw std::invalid_argument("fit_power_law: need at least 4 points");
    const std::size_t n = profile.size();
    double sx = 0, sy = 0;
    for (const auto& p : profile) {
        if (!(p.mean_s > 0.0))
            throw std::invalid_argument("fit_power_law: nonpositive mean time");
        sx += std::log(static_cast<double>(p.block_length));
        sy += std::log(p.mean_s);
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (const auto& p : profile) {
        const double dx = std::log(static_cast<double>(p.block_length)) - mx;
        const double dy = std::log(p.mean_s) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: all block lengths equal");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.coefficient = std::exp(my - fit.exponent * mx);

    double sse = 0, sst = 0;
    for (const auto& p : profile) {
        const double x = std::log(static_cast<double>(p.block_length));
        const double y = std::log(p.mean_s);
        const double e = y - (my + fit.exponent * (x - mx));
        sse += e * e;
        sst += (y - my) * (y - my);
    }
    fit.exponent_stderr =
        n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
    fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    return fit;
}

std::vector<std::pair<double, double>> flip_count_curve(std::size_t N,
                                                        const std::vector<double>& sigmas,
                                                        unsigned trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("flip_count_curve: trials must be >= 1");
    std::vector<std::pair<double, double>> out;
    out.reserve(sigmas.size());
    for (std::size_t idx = 0; idx < sigmas.size(); ++idx) {
        const ChannelModel model = ChannelModel::gaussian_flip(sigmas[idx]);
        double sum = 0.0;
        for (unsigned t = 0; t < trials; ++t) {
            Rng rng(derive_seed(seed, idx, t));
            sum += static_cast<double>(sample_noise(N, model, rng).positions.size());
        }
        out.emplace_back(sigmas[idx], sum / static_cast<double>(trials));
    }
    return out;
}

RetryResult run_retry(const SweepConfig& config, double noise_param, unsigned episodes,
                      unsigned max_attempts) {
    if (episodes < 1) throw std::invalid_argument("run_retry: episodes must be >= 1");
    if (max_attempts < 1) throw std::invalid_argument("run_retry: max_attempts must be >= 1");

    const CodePlan plan(make_sweep_code(config));
    const BitWord payload = text_to_bits(config.payload_text);
    if (payload.size() != plan.code().message_length())
        throw std::invalid_argument("run_retry: payload does not fill the message positions");
    const ChannelModel model = config.channel == ChannelKind::bec
                                   ? ChannelModel::bec(noise_param)
                                   : ChannelModel::gaussian_flip(noise_param);

    RetryResult out;
    out.episodes.resize(episodes);
    std::vector<std::uint8_t> first_fail(episodes, 0);
    const unsigned jobs = resolve_jobs(config.jobs);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(jobs) if (jobs > 1)
#endif
    for (long e = 0; e < static_cast<long>(episodes); ++e) {
        TrialRecord rec;
        for (unsigned a = 0; a < max_attempts; ++a) {
            rec = run_trial(plan, payload, model,
                            derive_seed(config.seed, static_cast<std::uint64_t>(e), a),
                            config.sampling);
            rec.attempts = a + 1;
            if (a == 0 && !rec.success) first_fail[e] = 1;
            if (rec.success) break;
        }
        out.episodes[e] = std::move(rec);
    }

    double attempts_sum = 0.0;
    std::size_t ff = 0;
    for (std::size_t e = 0; e < episodes; ++e) {
        attempts_sum += static_cast<double>(out.episodes[e].attempts);
        ff += first_fail[e];
    }
    out.mean_attempts = attempts_sum / static_cast<double>(episodes);
    out.first_attempt_fail_fraction = static_cast<double>(ff) / static_cast<double>(episodes);
    return out;
}

const char* to_string(ChannelKind kind) {
    return kind == ChannelKind::bec ? "bec" : "gflip";
}

const char* to_string(FailKind kind) {
    switch (kind) {
        case FailKind::none: return "none";
        case FailKind::ambiguous: return "ambiguous";
        default: return "inconsistent";
    }
}

namespace {

void write_trial_row(std::ostream& os, const TrialRecord& r, char sep) {
    os << r.block_length << sep << to_string(r.noise_kind) << sep << fmt_g(r.noise_param) << sep
       << r.attempts << sep << fmt_g(r.run_time_s, 6) << sep << fmt_g(r.solve_time_s, 6) << sep
       << (r.success ? "true" : "false") << sep << to_string(r.fail_kind) << sep
       << r.affected_count << sep << csv_quote(r.decoded_text) << sep << r.seed << sep
       << r.timestamp << '\n';
}

void write_summary_row(std::ostream& os, const SweepSummary& s, char sep) {
    os << fmt_g(s.noise_param) << sep << s.trials << sep << s.fails << sep
       << fmt_g(s.fail_fraction) << sep << fmt_g(s.mean_solve_s, 6) << sep
       << fmt_g(s.stddev_solve_s, 6) << sep << fmt_g(s.mean_affected) << '\n';
}

constexpr const char* kTrialHeader =
    "N,noise_kind,noise_param,attempts,run_time_s,solve_time_s,success,fail_kind,"
    "affected_count,decoded_text,seed,timestamp_iso8601";
constexpr const char* kSummaryHeader =
    "noise_param,trials,fails,fail_fraction,mean_solve_s,stddev_solve_s,mean_affected";

std::string spaced(const char* csv_header) {
    std::string s(csv_header);
    std::replace(s.begin(), s.end(), ',', ' ');
    return s;
}

}  // namespace

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << kTrialHeader << '\n';
    for (const auto& r : records) write_trial_row(os, r, ',');
}

void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summaries) {
    os << kSummaryHeader << '\n';
    for (const auto& s : summaries) write_summary_row(os, s, ',');
}

void write_trials_dat(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "# " << spaced(kTrialHeader) << '\n';
    for (const auto& r : records) write_trial_row(os, r, ' ');
}

void write_summary_dat(std::ostream& os, const std::vector<SweepSummary>& summaries) {
    os << "# " << spaced(kSummaryHeader) << '\n';
    for (const auto& s : summaries) write_summary_row(os, s, ' ');
}

}  // namespace polar
