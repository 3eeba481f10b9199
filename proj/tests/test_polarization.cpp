#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polar/polarization.hpp"

using namespace polar;

TEST_CASE("capacity_split") {
    CHECK(capacity_split(1.0) == std::pair{1.0, 1.0});
    CHECK(capacity_split(0.0) == std::pair{0.0, 0.0});
    CHECK(capacity_split(0.5) == std::pair{0.75, 0.25});

    const double eps = 0.3;
    const auto [hi, lo] = capacity_split(1.0 - eps);
    CHECK(hi == doctest::Approx(1.0 - eps * eps).epsilon(1e-15));
    CHECK(lo == doctest::Approx((1.0 - eps) * (1.0 - eps)).epsilon(1e-15));

    for (double i = 0.0; i <= 1.0; i += 1.0 / 64) {
        const auto [a, b] = capacity_split(i);
        CHECK(a >= b);
        CHECK(a + b == doctest::Approx(2 * i).epsilon(1e-15));
    }
    CHECK_THROWS_AS(capacity_split(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(capacity_split(1.1), std::invalid_argument);
}

TEST_CASE("polarize worked values") {
    const CapacityProfile p1 = polarize(0.5, 1);
    REQUIRE(p1.capacities.size() == 2);
    CHECK(p1.capacities[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p1.capacities[1] == doctest::Approx(0.25).epsilon(1e-15));

    const CapacityProfile p2 = polarize(0.5, 2);
    REQUIRE(p2.capacities.size() == 4);
    const double expect[4] = {0.9375, 0.5625, 0.4375, 0.0625};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(p2.capacities[i] - expect[i]) < 1e-12);

    CHECK_THROWS_AS(polarize(-0.01, 3), std::invalid_argument);
    CHECK_THROWS_AS(polarize(1.01, 3), std::invalid_argument);
    CHECK_THROWS_AS(polarize(0.5, 0), std::invalid_argument);
}

TEST_CASE("mean capacity is conserved") {
    for (double eps : {0.1, 0.3, 0.5, 0.9}) {
        for (unsigned n = 1; n <= 10; ++n) {
            const CapacityProfile p = polarize(eps, n);
            double sum = 0.0;
            for (double c : p.capacities) sum += c;
            const double expect = static_cast<double>(p.block_length()) * (1.0 - eps);
            CHECK(std::abs(sum - expect) < 1e-9);
        }
    }
}

TEST_CASE("each split is ordered high then low") {
    const CapacityProfile p = polarize(0.37, 6);
    for (std::size_t k = 0; k + 1 < p.capacities.size(); k += 2)
        CHECK(p.capacities[k] >= p.capacities[k + 1]);
}

TEST_CASE("polarization fraction outside the middle band grows with the stage count") {
    // the fraction oscillates for the first two stages (0, 0.5, 0.25, ...) and
    // is monotone from stage 3 on
    auto outside_fraction = [](unsigned n) {
        const CapacityProfile p = polarize(0.5, n);
        std::size_t outside = 0;
        for (double c : p.capacities)
            if (c <= 0.1 || c >= 0.9) ++outside;
        return static_cast<double>(outside) / static_cast<double>(p.block_length());
    };
    double prev = -1.0;
    for (unsigned n = 3; n <= 10; ++n) {
        const double frac = outside_fraction(n);
        CHECK(frac >= prev - 1e-12);
        prev = frac;
    }
    CHECK(prev > 0.5);
    CHECK(outside_fraction(10) > outside_fraction(1));
}

TEST_CASE("select_frozen") {
    const CapacityProfile p2 = polarize(0.5, 2);
    CHECK(select_frozen(p2, 0, FrozenPolicy::lowest_capacity).empty());
    CHECK(select_frozen(p2, 2, FrozenPolicy::lowest_capacity) ==
          std::vector<std::uint32_t>{3, 4});

    const CapacityProfile p8 = polarize(0.5, 8);
    const auto fh = select_frozen(p8, 128, FrozenPolicy::first_half);
    REQUIRE(fh.size() == 128);
    for (std::uint32_t i = 0; i < 128; ++i) CHECK(fh[i] == i + 1);

    CHECK_THROWS_AS(select_frozen(p2, 5, FrozenPolicy::first_half), std::invalid_argument);
}

TEST_CASE("sorted order is ascending with ties to the lower channel id") {
    const CapacityProfile p = polarize(0.5, 6);
    for (std::size_t k = 0; k + 1 < p.sorted_order.size(); ++k) {
        const double a = p.capacities[p.sorted_order[k] - 1];
        const double b = p.capacities[p.sorted_order[k + 1] - 1];
        CHECK(a <= b);
        if (a == b) CHECK(p.sorted_order[k] < p.sorted_order[k + 1]);
    }
}

namespace {

CapacityProfile synthetic_sigmoid(std::size_t N, double mu, double beta_pct) {
    CapacityProfile p;
    p.epsilon = 0.5;
    p.stages = 1;
    const double b = beta_pct * static_cast<double>(N) / 100.0;
    p.capacities.resize(N);
    p.sorted_order.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        p.capacities[k] = 1.0 / (1.0 + std::exp(-(static_cast<double>(k + 1) - mu) / b));
        p.sorted_order[k] = static_cast<std::uint32_t>(k + 1);
    }
    return p;
}

}  // namespace

TEST_CASE("fit_sigmoid recovers planted parameters") {
    for (auto [mu, beta] : {std::pair{300.25, 2.5}, std::pair{512.5, 3.2}, std::pair{100.0, 8.0}}) {
        const CapacityProfile p = synthetic_sigmoid(1024, mu, beta);
        const SigmoidFit fit = fit_sigmoid(p);
        CHECK(std::abs(fit.mu - mu) / mu < 1e-6);
        CHECK(std::abs(fit.beta - beta) / beta < 1e-6);
        CHECK(fit.residual < 1e-6);
    }
}

TEST_CASE("fit_sigmoid on the half-rate profile") {
    const CapacityProfile p = polarize(0.5, 10);
    const SigmoidFit fit = fit_sigmoid(p);
    CHECK(std::abs(fit.mu - 512.0) <= 1.0);
    CHECK(std::abs(fit.beta - 3.14) <= 0.2);
    CHECK(fit.residual < 0.01);

    // complementary-pair symmetry of the sorted profile pins the center
    std::vector<double> sorted(p.block_length());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        sorted[k] = p.capacities[p.sorted_order[k] - 1];
    for (std::size_t k = 0; k < sorted.size(); ++k)
        CHECK(std::abs(sorted[k] + sorted[sorted.size() - 1 - k] - 1.0) < 1e-9);
    CHECK(fit.mu == doctest::Approx(512.5).epsilon(1e-4));
}

TEST_CASE("fit_sigmoid rejects degenerate input") {
    CHECK_THROWS_AS(fit_sigmoid(polarize(0.0, 4)), std::invalid_argument);  // all capacities 1
    CHECK_THROWS_AS(fit_sigmoid(polarize(0.5, 2)), std::invalid_argument);  // too few channels
}

TEST_CASE("channel_density") {
    const CapacityProfile p = polarize(0.5, 10);
    const SigmoidFit fit = fit_sigmoid(p);
    const std::size_t N = p.block_length();

    // minimum at the fitted center
    const double at_mu = channel_density(fit.mu, fit, N);
    for (double d : {1.0, 10.0, 100.0, 400.0}) {
        CHECK(channel_density(fit.mu - d, fit, N) > at_mu);
        CHECK(channel_density(fit.mu + d, fit, N) > at_mu);
    }
    // symmetric around the center
    for (double d : {5.0, 50.0, 200.0, 350.0}) {
        const double lo = channel_density(fit.mu - d, fit, N);
        const double hi = channel_density(fit.mu + d, fit, N);
        CHECK(std::abs(lo - hi) / hi < 1e-9);
    }
    // trapezoid quadrature of the density over [0, N] returns the channel count
    const std::size_t steps = 10000;
    double integral = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double a = static_cast<double>(N) * static_cast<double>(i) / steps;
        const double b = static_cast<double>(N) * static_cast<double>(i + 1) / steps;
        integral += 0.5 * (channel_density(a, fit, N) + channel_density(b, fit, N)) * (b - a);
    }
    CHECK(std::abs(integral - static_cast<double>(N)) / static_cast<double>(N) < 1e-3);
}

TEST_CASE("capacity_histogram") {
    const CapacityProfile p = polarize(0.5, 10);
    const auto bins = capacity_histogram(p, 10);
    REQUIRE(bins.size() == 10);
    std::size_t total = 0;
    for (const auto& b : bins) total += b.count;
    CHECK(total == p.block_length());
    // mass concentrates at the extreme bins
    CHECK(bins.front().count + bins.back().count > p.block_length() / 2);

    const CapacityProfile tiny = polarize(0.5, 1);
    const auto tb = capacity_histogram(tiny, 10);
    CHECK(tb[7].count == 1);  // 0.75
    CHECK(tb[2].count == 1);  // 0.25
    std::size_t tc = 0;
    for (const auto& b : tb) tc += b.count;
    CHECK(tc == 2);

    CHECK_THROWS_AS(capacity_histogram(p, 1), std::invalid_argument);
}
