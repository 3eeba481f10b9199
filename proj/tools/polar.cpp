// Command-line front end: encoding, linear decoding, channel polarization
// analysis, Monte Carlo sweeps and decode-time benchmarks, with CSV output.

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polar/channels.hpp"
#include "polar/codec.hpp"
#include "polar/decoder.hpp"
#include "polar/encoder.hpp"
#include "polar/experiments.hpp"
#include "polar/polarization.hpp"

namespace {

using namespace polar;

unsigned stages_for(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("block length must be a power of two, at least 2");
    return static_cast<unsigned>(std::countr_zero(n));
}

// "a:b[:s]" arithmetic range (s defaults to (b-a)/10) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::istringstream is(text);
        std::string part;
        std::vector<double> f;
        while (std::getline(is, part, ':')) f.push_back(std::stod(part));
        if (f.size() < 2 || f.size() > 3)
            throw std::invalid_argument("range must be start:stop or start:stop:step");
        const double start = f[0], stop = f[1];
        const double step = f.size() == 3 ? f[2] : (stop - start) / 10.0;
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("range needs stop >= start and positive step");
        for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(stop)); v += step)
            out.push_back(v);
    } else {
        std::istringstream is(text);
        std::string part;
        while (std::getline(is, part, ',')) out.push_back(std::stod(part));
    }
    if (out.empty()) throw std::invalid_argument("empty parameter grid");
    return out;
}

// "lo:hi" doubling range of block lengths, or a comma list.
std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> out;
    if (text.find(':') != std::string::npos) {
        std::istringstream is(text);
        std::string part;
        std::vector<std::size_t> f;
        while (std::getline(is, part, ':')) f.push_back(std::stoull(part));
        if (f.size() != 2) throw std::invalid_argument("block-length range must be lo:hi");
        for (std::size_t n = f[0]; n <= f[1]; n *= 2) out.push_back(n);
    } else {
        std::istringstream is(text);
        std::string part;
        while (std::getline(is, part, ',')) out.push_back(std::stoull(part));
    }
    if (out.empty()) throw std::invalid_argument("empty block-length list");
    for (std::size_t n : out) stages_for(n);
    return out;
}

std::string cycled_payload(std::size_t k_bits) {
    static const std::string kBase = "Write A Write BC";
    if (k_bits % 8 != 0)
        throw std::invalid_argument("message length is not byte-aligned; pass --payload");
    std::string out;
    out.reserve(k_bits / 8);
    for (std::size_t i = 0; i < k_bits / 8; ++i) out.push_back(kBase[i % kBase.size()]);
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // LF line endings everywhere
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::string fmt_g(double v, int precision = 12) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

struct CodeOpts {
    std::size_t n = 256;
    std::string frozen_policy = "first-half";  // first-half | lowcap | none
    double design_eps = 0.5;
    int frozen_value = 0;
    bool bit_reversed = false;
};

PolarCode code_from(const CodeOpts& o, std::size_t message_bits) {
    const unsigned stages = stages_for(o.n);
    if (message_bits > o.n) throw std::invalid_argument("message longer than the block");
    const std::size_t frozen_count = o.n - message_bits;
    if (o.frozen_policy == "first-half")
        return first_half_frozen(stages, frozen_count, o.frozen_value, o.bit_reversed);
    if (o.frozen_policy == "lowcap") {
        PolarCode code;
        code.stages = stages;
        code.bit_reversed = o.bit_reversed;
        code.frozen_value = o.frozen_value;
        code.frozen = select_frozen(polarize(o.design_eps, stages), frozen_count,
                                    FrozenPolicy::lowest_capacity);
        code.validate();
        return code;
    }
    if (o.frozen_policy == "none") {
        if (frozen_count != 0)
            throw std::invalid_argument("--frozen none requires a full-length message");
        PolarCode code;
        code.stages = stages;
        code.bit_reversed = o.bit_reversed;
        code.frozen_value = o.frozen_value;
        code.validate();
        return code;
    }
    throw std::invalid_argument("unknown frozen policy: " + o.frozen_policy);
}

void add_code_opts(CLI::App* cmd, CodeOpts& o) {
    cmd->add_option("--n", o.n, "block length (power of two)");
    cmd->add_option("--frozen", o.frozen_policy, "frozen placement: first-half|lowcap|none")
        ->default_val("first-half");
    cmd->add_option("--design-eps", o.design_eps, "erasure rate for lowcap selection")
        ->default_val(0.5);
    cmd->add_option("--frozen-value", o.frozen_value, "value of frozen bits (0 or 1)")
        ->default_val(0);
    cmd->add_flag("--bit-reversed", o.bit_reversed,
                  "use the bit-reversal generator form instead of the default");
}

// ---------------------------------------------------------------- encode ----

struct EncodeOpts {
    CodeOpts code;
    std::string text, bits, out_path;
};

void run_encode(const EncodeOpts& o) {
    if (o.text.empty() == o.bits.empty())
        throw std::invalid_argument("encode needs exactly one of --text or --bits");
    const BitWord message = o.text.empty() ? BitWord::from_string(o.bits) : text_to_bits(o.text);
    const PolarCode code = code_from(o.code, message.size());
    const BitWord x = encode(assemble_input(message, code), code);
    if (o.out_path.empty()) {
        std::cout << x.to_string() << '\n';
    } else {
        auto os = open_out(o.out_path);
        os << x.to_string() << '\n';
    }
}

// ---------------------------------------------------------------- decode ----

struct DecodeOpts {
    CodeOpts code;
    std::string received, drop;
    std::size_t frozen_count = std::size_t(-1);  // default: half the block
};

void run_decode(const DecodeOpts& o) {
    CodeOpts co = o.code;
    co.n = o.received.size();
    const std::size_t frozen_count = o.frozen_count == std::size_t(-1) ? co.n / 2 : o.frozen_count;
    if (frozen_count > co.n) throw std::invalid_argument("frozen count exceeds block length");
    const PolarCode code = code_from(co, co.n - frozen_count);

    ReceivedWord received;
    received.symbols.reserve(co.n);
    for (char c : o.received) {
        if (c == '0')
            received.symbols.push_back(Symbol::zero);
        else if (c == '1')
            received.symbols.push_back(Symbol::one);
        else if (c == 'e' || c == 'E')
            received.symbols.push_back(Symbol::erased);
        else
            throw std::invalid_argument("received word must use symbols 0, 1, e");
    }

    SideInformation side;
    if (!o.drop.empty()) {
        std::istringstream is(o.drop);
        std::string part;
        while (std::getline(is, part, ','))
            side.dropped_positions.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    }

    const CodePlan plan(code);
    const DecodeResult result = decode(received, plan, side);
    switch (result.tag) {
        case DecodeTag::success: {
            std::cout << "status success\n";
            std::cout << "bits " << result.message.to_string() << '\n';
            if (result.message.size() % 8 == 0)
                std::cout << "text \"" << bits_to_text(result.message) << "\"\n";
            break;
        }
        case DecodeTag::ambiguous:
            std::cout << "status ambiguous\nrank_deficit " << result.rank_deficit << '\n';
            break;
        case DecodeTag::inconsistent:
            std::cout << "status inconsistent\n";
            break;
    }
    std::cout << "equations_used " << result.equations_used << '\n';
    if (result.tag != DecodeTag::success) std::exit(1);
}

// -------------------------------------------------------------- simulate ----

struct SimulateOpts {
    CodeOpts code;
    std::string model = "bec";
    std::string eps, sigma, payload;
    unsigned trials = 100;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    bool exact_count = false;
    std::string out_prefix = "simulate";
};

SweepConfig sweep_config_from(const SimulateOpts& o, std::vector<double> params) {
    SweepConfig cfg;
    cfg.stages = stages_for(o.code.n);
    cfg.frozen_policy = o.code.frozen_policy == "lowcap" ? FrozenPolicy::lowest_capacity
                                                         : FrozenPolicy::first_half;
    cfg.design_epsilon = o.code.design_eps;
    cfg.bit_reversed = o.code.bit_reversed;
    cfg.frozen_value = o.code.frozen_value;
    cfg.channel = o.model == "bec" ? ChannelKind::bec : ChannelKind::gaussian_flip;
    cfg.params = std::move(params);
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.payload_text = o.payload.empty() ? cycled_payload(o.code.n / 2) : o.payload;
    cfg.sampling = o.exact_count ? SamplingMode::exact_count : SamplingMode::with_replacement;
    cfg.jobs = o.jobs;
    return cfg;
}

void run_simulate(const SimulateOpts& o) {
    if (o.model != "bec" && o.model != "gflip")
        throw std::invalid_argument("--model must be bec or gflip");
    const bool is_bec = o.model == "bec";
    if (is_bec == o.eps.empty())
        throw std::invalid_argument(is_bec ? "bec model needs --eps" : "gflip model needs --sigma");
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");

    const SweepConfig cfg = sweep_config_from(o, parse_grid(is_bec ? o.eps : o.sigma));
    const SweepResult res = run_sweep(cfg);

    {
        auto os = open_out(o.out_prefix + "_trials.csv");
        write_trials_csv(os, res.trials);
    }
    {
        auto os = open_out(o.out_prefix + "_summary.csv");
        write_summary_csv(os, res.summaries);
    }
    {
        auto os = open_out(o.out_prefix + "_summary.dat");
        write_summary_dat(os, res.summaries);
    }

    std::cout << "param\ttrials\tfails\tfail_fraction\tmean_solve_s\n";
    for (const auto& s : res.summaries)
        std::cout << fmt_g(s.noise_param, 6) << '\t' << s.trials << '\t' << s.fails << '\t'
                  << fmt_g(s.fail_fraction, 6) << '\t' << fmt_g(s.mean_solve_s, 6) << '\n';
}

// -------------------------------------------------------------- polarize ----

struct PolarizeOpts {
    double eps = 0.5;
    unsigned stages = 10;
    std::size_t bins = 10;
    std::size_t density_samples = 256;
    std::string out_prefix = "polarize";
};

void run_polarize(const PolarizeOpts& o) {
    const CapacityProfile profile = polarize(o.eps, o.stages);
    const std::size_t N = profile.block_length();

    {
        auto os = open_out(o.out_prefix + "_profile.csv");
        os << "channel,capacity\n";
        for (std::size_t i = 0; i < N; ++i)
            os << i + 1 << ',' << fmt_g(profile.capacities[i]) << '\n';
    }
    {
        auto os = open_out(o.out_prefix + "_sorted.csv");
        os << "rank,channel,capacity\n";
        for (std::size_t r = 0; r < N; ++r) {
            const std::uint32_t ch = profile.sorted_order[r];
            os << r + 1 << ',' << ch << ',' << fmt_g(profile.capacities[ch - 1]) << '\n';
        }
    }
    {
        auto os = open_out(o.out_prefix + "_histogram.csv");
        os << "bin_lo,bin_hi,count\n";
        for (const auto& b : capacity_histogram(profile, o.bins))
            os << fmt_g(b.lo, 6) << ',' << fmt_g(b.hi, 6) << ',' << b.count << '\n';
    }

    double conservation = 0.0;
    for (double c : profile.capacities) conservation += c;
    std::cout << "N " << N << "\nsum_capacity " << fmt_g(conservation) << " (expected "
              << fmt_g(static_cast<double>(N) * (1.0 - o.eps)) << ")\n";

    if (N >= 8) {
        try {
            const SigmoidFit fit = fit_sigmoid(profile);
            auto os = open_out(o.out_prefix + "_fit.csv");
            os << "mu,beta,residual_rms\n";
            os << fmt_g(fit.mu) << ',' << fmt_g(fit.beta) << ',' << fmt_g(fit.residual) << '\n';
            std::cout << "fit mu " << fmt_g(fit.mu, 6) << "\nfit beta " << fmt_g(fit.beta, 6)
                      << " (% of N)\nfit residual_rms " << fmt_g(fit.residual, 6) << '\n';

            auto dos = open_out(o.out_prefix + "_density.csv");
            dos << "n,density\n";
            for (std::size_t i = 0; i <= o.density_samples; ++i) {
                const double n = static_cast<double>(N) * static_cast<double>(i) /
                                 static_cast<double>(o.density_samples);
                dos << fmt_g(n, 8) << ',' << fmt_g(channel_density(n, fit, N)) << '\n';
            }
        } catch (const std::invalid_argument& e) {
            std::cout << "fit skipped: " << e.what() << '\n';
        }
    }

    // gnuplot-friendly variant of the sorted profile
    auto os = open_out(o.out_prefix + "_sorted.dat");
    os << "# rank channel capacity\n";
    for (std::size_t r = 0; r < N; ++r) {
        const std::uint32_t ch = profile.sorted_order[r];
        os << r + 1 << ' ' << ch << ' ' << fmt_g(profile.capacities[ch - 1]) << '\n';
    }
}

// ----------------------------------------------------------------- bench ----

struct BenchOpts {
    std::string n_list = "64:4096";
    std::string model = "bec";
    double eps = 0.01;
    double sigma = 0.1;
    unsigned trials = 8;
    std::uint64_t seed = 0;
    std::string out_prefix = "bench";
};

void run_bench(const BenchOpts& o) {
    if (o.model != "bec" && o.model != "gflip")
        throw std::invalid_argument("--model must be bec or gflip");
    const ChannelModel model =
        o.model == "bec" ? ChannelModel::bec(o.eps) : ChannelModel::gaussian_flip(o.sigma);
    const std::vector<std::size_t> ns = parse_n_list(o.n_list);
    const std::vector<TimingPoint> profile = timing_profile(ns, model, o.trials, o.seed);

    {
        auto os = open_out(o.out_prefix + "_times.csv");
        os << "N,mean_s,stddev_s,samples\n";
        for (const auto& p : profile)
            os << p.block_length << ',' << fmt_g(p.mean_s, 6) << ',' << fmt_g(p.stddev_s, 6) << ','
               << p.samples << '\n';
    }
    {
        auto os = open_out(o.out_prefix + "_times.dat");
        os << "# N mean_s stddev_s samples\n";
        for (const auto& p : profile)
            os << p.block_length << ' ' << fmt_g(p.mean_s, 6) << ' ' << fmt_g(p.stddev_s, 6) << ' '
               << p.samples << '\n';
    }

    std::cout << "N\tmean_s\tstddev_s\tsamples\n";
    for (const auto& p : profile)
        std::cout << p.block_length << '\t' << fmt_g(p.mean_s, 6) << '\t' << fmt_g(p.stddev_s, 6)
                  << '\t' << p.samples << '\n';

    if (profile.size() < 4) {
        std::cout << "fit refused: need at least 4 block lengths\n";
        return;
    }
    const PowerLawFit fit = fit_power_law(profile);
    auto os = open_out(o.out_prefix + "_fit.csv");
    os << "coefficient,exponent,exponent_stderr,r_squared\n";
    os << fmt_g(fit.coefficient) << ',' << fmt_g(fit.exponent) << ',' << fmt_g(fit.exponent_stderr)
       << ',' << fmt_g(fit.r_squared) << '\n';
    std::cout << "fit time ~ " << fmt_g(fit.coefficient, 4) << " * N^" << fmt_g(fit.exponent, 4)
              << "  (exponent +- " << fmt_g(fit.exponent_stderr, 3) << ", R^2 "
              << fmt_g(fit.r_squared, 4) << ")\n";
}

// -------------------------------------------------------- transmit-retry ----

struct RetryOpts {
    SimulateOpts sim;
    double param = 0.5;
    unsigned episodes = 10000;
    unsigned max_attempts = 10000;
};

void run_transmit_retry(const RetryOpts& o) {
    if (o.sim.model != "bec" && o.sim.model != "gflip")
        throw std::invalid_argument("--model must be bec or gflip");
    const SweepConfig cfg = sweep_config_from(o.sim, {o.param});
    const RetryResult res = run_retry(cfg, o.param, o.episodes, o.max_attempts);

    {
        auto os = open_out(o.sim.out_prefix + "_episodes.csv");
        write_trials_csv(os, res.episodes);
    }

    const double expected = expected_transmissions(res.first_attempt_fail_fraction);
    std::cout << "episodes " << o.episodes << "\nmean_attempts " << fmt_g(res.mean_attempts, 6)
              << "\nfirst_attempt_fail_fraction " << fmt_g(res.first_attempt_fail_fraction, 6)
              << "\nexpected_transmissions " << fmt_g(expected, 6) << "\nrelative_gap "
              << fmt_g(std::abs(res.mean_attempts - expected) / expected, 4) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar coding with linear decoding: encoder, channel simulator, analyzer"};
    app.require_subcommand(1);

    EncodeOpts enc;
    auto* cmd_encode = app.add_subcommand("encode", "encode a message into a codeword");
    add_code_opts(cmd_encode, enc.code);
    cmd_encode->add_option("--text", enc.text, "payload text (8 bits per character)");
    cmd_encode->add_option("--bits", enc.bits, "payload bits as a 0/1 string");
    cmd_encode->add_option("-o,--out", enc.out_path, "write the codeword here instead of stdout");
    cmd_encode->callback([&] { run_encode(enc); });

    DecodeOpts dec;
    auto* cmd_decode = app.add_subcommand("decode", "linear-decode a received word");
    add_code_opts(cmd_decode, dec.code);
    cmd_decode->add_option("--received", dec.received, "received symbols: 0, 1, or e (erased)")
        ->required();
    cmd_decode->add_option("--drop", dec.drop, "comma list of 1-based positions to discard");
    cmd_decode->add_option("--frozen-count", dec.frozen_count,
                           "number of frozen positions (default: half the block)");
    cmd_decode->callback([&] { run_decode(dec); });

    SimulateOpts sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo decode sweep with CSV output");
    add_code_opts(cmd_sim, sim.code);
    cmd_sim->add_option("--model", sim.model, "channel model: bec|gflip")->default_val("bec");
    cmd_sim->add_option("--eps", sim.eps, "erasure rates: a:b[:s] or comma list");
    cmd_sim->add_option("--sigma", sim.sigma, "noise sigmas: a:b[:s] or comma list");
    cmd_sim->add_option("--trials", sim.trials, "repetitions per grid point")->default_val(100);
    cmd_sim->add_option("--seed", sim.seed, "base RNG seed")->envname("POLAR_SEED");
    cmd_sim->add_option("--jobs", sim.jobs, "worker threads (0 = all cores)")->default_val(0);
    cmd_sim->add_option("--payload", sim.payload, "payload text (default fills half the block)");
    cmd_sim->add_flag("--exact-count", sim.exact_count,
                      "sample exactly the nominal noise count instead of drawing with replacement");
    cmd_sim->add_option("--out", sim.out_prefix, "output file prefix")->default_val("simulate");
    cmd_sim->callback([&] { run_simulate(sim); });

    PolarizeOpts pol;
    auto* cmd_pol = app.add_subcommand("polarize", "capacity-splitting analysis and sigmoid fit");
    cmd_pol->add_option("--eps", pol.eps, "erasure probability")->required();
    cmd_pol->add_option("--stages", pol.stages, "number of splitting stages")->required();
    cmd_pol->add_option("--bins", pol.bins, "histogram bins")->default_val(10);
    cmd_pol->add_option("--density-samples", pol.density_samples, "density sample count")
        ->default_val(256);
    cmd_pol->add_option("--out", pol.out_prefix, "output file prefix")->default_val("polarize");
    cmd_pol->callback([&] { run_polarize(pol); });

    BenchOpts ben;
    auto* cmd_bench = app.add_subcommand("bench", "decode-time scaling profile and power-law fit");
    cmd_bench->add_option("--n-list", ben.n_list, "block lengths: lo:hi (doubling) or comma list")
        ->default_val("64:4096");
    cmd_bench->add_option("--model", ben.model, "channel model: bec|gflip")->default_val("bec");
    cmd_bench->add_option("--eps", ben.eps, "erasure rate for bec")->default_val(0.01);
    cmd_bench->add_option("--sigma", ben.sigma, "sigma for gflip")->default_val(0.1);
    cmd_bench->add_option("--trials", ben.trials, "decodes per block length")->default_val(8);
    cmd_bench->add_option("--seed", ben.seed, "base RNG seed")->envname("POLAR_SEED");
    cmd_bench->add_option("--out", ben.out_prefix, "output file prefix")->default_val("bench");
    cmd_bench->callback([&] { run_bench(ben); });

    RetryOpts ret;
    auto* cmd_retry =
        app.add_subcommand("transmit-retry", "repeat transmissions until decoding succeeds");
    add_code_opts(cmd_retry, ret.sim.code);
    cmd_retry->add_option("--model", ret.sim.model, "channel model: bec|gflip")
        ->default_val("gflip");
    cmd_retry->add_option("--param", ret.param, "noise parameter (epsilon or sigma)")->required();
    cmd_retry->add_option("--episodes", ret.episodes, "number of episodes")->default_val(10000);
    cmd_retry->add_option("--max-attempts", ret.max_attempts, "attempt cap per episode")
        ->default_val(10000);
    cmd_retry->add_option("--seed", ret.sim.seed, "base RNG seed")->envname("POLAR_SEED");
    cmd_retry->add_option("--jobs", ret.sim.jobs, "worker threads (0 = all cores)")->default_val(0);
    cmd_retry->add_option("--payload", ret.sim.payload, "payload text");
    cmd_retry->add_option("--out", ret.sim.out_prefix, "output file prefix")->default_val("retry");
    cmd_retry->callback([&] { run_transmit_retry(ret); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
