// Compares the serial reference kernels against their OpenMP variants:
// GF(2) elimination (serial vs parallel row updates) and the two encoder
// routes (dense generator multiply vs butterfly network), plus sweep
// throughput at 1 worker vs all cores.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polar/decoder.hpp"
#include "polar/encoder.hpp"
#include "polar/experiments.hpp"
#include "polar/gf2.hpp"
#include "polar/rng.hpp"

using namespace polar;
using clock_t_ = std::chrono::steady_clock;

namespace {

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

Gf2System random_system(std::size_t unknowns, std::size_t equations, Rng& rng) {
    Gf2System sys;
    sys.unknown_ids.resize(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) sys.unknown_ids[i] = static_cast<std::uint32_t>(i + 1);
    for (std::size_t e = 0; e < equations; ++e) {
        BitWord row(unknowns);
        for (std::size_t w = 0; w < row.word_count(); ++w) row.words()[w] = rng.next();
        if (unknowns % 64) row.words()[row.word_count() - 1] &= (std::uint64_t{1} << (unknowns % 64)) - 1;
        sys.add_equation(std::move(row), rng.uniform_below(2));
    }
    return sys;
}

void bench_solver() {
    std::printf("GF(2) solve, random dense systems (N equations, N/2 unknowns)\n");
    std::printf("%8s %14s %14s %10s\n", "N", "serial_ms", "parallel_ms", "speedup");
    for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
        Rng rng(derive_seed(7, n, 0));
        Gf2System sys = random_system(n / 2, n, rng);
        const int reps = n <= 1024 ? 20 : 5;

        auto t0 = clock_t_::now();
        SolveOutcome a;
        for (int r = 0; r < reps; ++r) a = solve_gf2(sys, Exec::serial);
        const double ts = seconds_since(t0) / reps;

        t0 = clock_t_::now();
        SolveOutcome b;
        for (int r = 0; r < reps; ++r) b = solve_gf2(sys, Exec::parallel);
        const double tp = seconds_since(t0) / reps;

        if (a.tag != b.tag || a.rank != b.rank) std::printf("  MISMATCH serial vs parallel!\n");
        std::printf("%8zu %14.3f %14.3f %9.2fx\n", n, ts * 1e3, tp * 1e3, ts / tp);
    }
}

void bench_encode() {
    std::printf("\nencode routes (matrix multiply vs butterfly network)\n");
    std::printf("%8s %14s %14s\n", "N", "matrix_us", "butterfly_us");
    for (unsigned stages : {10u, 12u, 14u}) {
        const std::size_t n = std::size_t{1} << stages;
        CodePlan plan(first_half_frozen(stages, n / 2));
        Rng rng(derive_seed(11, stages, 0));
        BitWord u(n);
        for (std::size_t w = 0; w < u.word_count(); ++w) u.words()[w] = rng.next();

        const int reps = 200;
        auto t0 = clock_t_::now();
        BitWord x1(n);
        for (int r = 0; r < reps; ++r) x1 = plan.encode(u);
        const double tm = seconds_since(t0) / reps;

        t0 = clock_t_::now();
        BitWord x2(n);
        for (int r = 0; r < reps; ++r) x2 = plan.butterfly(u);
        const double tb = seconds_since(t0) / reps;

        if (!(x1 == x2)) std::printf("  MISMATCH matrix vs butterfly!\n");
        std::printf("%8zu %14.2f %14.2f\n", n, tm * 1e6, tb * 1e6);
    }
}

void bench_sweep() {
    SweepConfig cfg;
    cfg.stages = 10;
    cfg.channel = ChannelKind::gaussian_flip;
    cfg.params = {0.5};
    cfg.trials = 200;
    cfg.seed = 99;
    std::string payload;
    for (int i = 0; i < 4; ++i) payload += "Write A Write BC";
    cfg.payload_text = payload;

    std::printf("\nsweep throughput, N=1024 gflip sigma=0.5, %u trials\n", cfg.trials);
    cfg.jobs = 1;
    auto t0 = clock_t_::now();
    const SweepResult serial = run_sweep(cfg);
    const double ts = seconds_since(t0);

    cfg.jobs = 0;
    t0 = clock_t_::now();
    const SweepResult parallel = run_sweep(cfg);
    const double tp = seconds_since(t0);

    bool same = serial.summaries[0].fails == parallel.summaries[0].fails;
    for (std::size_t i = 0; i < serial.trials.size() && same; ++i)
        same = serial.trials[i].success == parallel.trials[i].success &&
               serial.trials[i].seed == parallel.trials[i].seed;
    std::printf("%8s %14.1f trials/s\n", "1 job", cfg.trials / ts);
#ifdef _OPENMP
    std::printf("%7dj %14.1f trials/s   identical results: %s\n", omp_get_max_threads(),
                cfg.trials / tp, same ? "yes" : "NO");
#else
    std::printf("  (built without OpenMP; parallel run identical: %s)\n", same ? "yes" : "NO");
#endif
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel variants fall back to serial\n\n");
#endif
    bench_solver();
    bench_encode();
    bench_sweep();
    return 0;
}
