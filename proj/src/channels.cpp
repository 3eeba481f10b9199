#include "polar/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polar {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Power series of erf, accurate for |x| < 1.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 80; ++k) {
        term *= -x2 / static_cast<double>(k);
        const double add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum * (2.0 / kSqrtPi);
}

// Continued fraction for erfc(x)*exp(x^2)*sqrt(pi), evaluated with the
// modified Lentz scheme; converges quickly for x >= 1.
double erfc_cf_scaled(double x) {
    const double tiny = 1e-300;
    double f = x, C = x, D = 0.0;
    for (int k = 1; k <= 500; ++k) {
        const double a = 0.5 * static_cast<double>(k);
        D = x + a * D;
        if (std::abs(D) < tiny) D = tiny;
        D = 1.0 / D;
        C = x + a / C;
        if (std::abs(C) < tiny) C = tiny;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / (f * kSqrtPi);
}

}  // namespace

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < 1.0) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;  // exp(-x^2) underflows double
    return std::exp(-x * x) * erfc_cf_scaled(x);
}

double flip_probability(double sigma, ErfcConvention conv) {
    if (!(sigma > 0.0)) throw std::invalid_argument("flip_probability: sigma must be positive");
    const double p = erfc(1.0 / (sigma * std::sqrt(2.0)));
    return conv == ErfcConvention::full ? p : 0.5 * p;
}

double sigma_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("sigma_for_epsilon: epsilon outside (0,1)");
    double lo = 1e-4, hi = 1.0;
    while (flip_probability(hi) < epsilon) {
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("sigma_for_epsilon: bracket failed");
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double res = flip_probability(mid) - epsilon;
        if (std::abs(res) < 1e-10) return mid;
        if (res < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

std::size_t erased_count(std::size_t N, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("erased_count: epsilon outside [0,1]");
    // nearbyint under the default rounding mode rounds half to even
    return static_cast<std::size_t>(std::nearbyint(static_cast<double>(N) * epsilon));
}

std::size_t flipped_count(std::size_t N, double sigma) {
    return static_cast<std::size_t>(
        std::nearbyint(static_cast<double>(N) * flip_probability(sigma)));
}

ChannelModel ChannelModel::bec(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("ChannelModel: epsilon outside [0,1]");
    return {ChannelKind::bec, epsilon};
}

ChannelModel ChannelModel::gaussian_flip(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("ChannelModel: sigma must be positive");
    return {ChannelKind::gaussian_flip, sigma};
}

NoiseRealization sample_noise(std::size_t N, const ChannelModel& model, Rng& rng,
                              SamplingMode mode) {
    const std::size_t count = model.kind == ChannelKind::bec ? erased_count(N, model.param)
                                                             : flipped_count(N, model.param);
    NoiseRealization out;
    out.kind = model.kind == ChannelKind::bec ? NoiseKind::erase : NoiseKind::flip;
    if (count == 0 || N == 0) return out;

    if (mode == SamplingMode::with_replacement) {
        out.positions.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.positions.push_back(static_cast<std::uint32_t>(rng.uniform_range(1, N)));
        std::sort(out.positions.begin(), out.positions.end());
        out.positions.erase(std::unique(out.positions.begin(), out.positions.end()),
                            out.positions.end());
    } else {
        // Floyd's sampling: exactly count distinct positions.
        const std::size_t c = std::min(count, N);
        for (std::size_t j = N - c + 1; j <= N; ++j) {
            const std::uint32_t t = static_cast<std::uint32_t>(rng.uniform_range(1, j));
            if (std::find(out.positions.begin(), out.positions.end(), t) == out.positions.end())
                out.positions.push_back(t);
            else
                out.positions.push_back(static_cast<std::uint32_t>(j));
        }
        std::sort(out.positions.begin(), out.positions.end());
    }
    return out;
}

ReceivedWord transmit(const BitWord& x, const NoiseRealization& noise) {
    ReceivedWord out;
    out.symbols.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.symbols[i] = x.get(i) ? Symbol::one : Symbol::zero;
    for (std::uint32_t pos : noise.positions) {
        if (pos < 1 || pos > x.size()) throw std::invalid_argument("transmit: position out of range");
        if (noise.kind == NoiseKind::erase) {
            out.symbols[pos - 1] = Symbol::erased;
        } else {
            out.symbols[pos - 1] =
                out.symbols[pos - 1] == Symbol::one ? Symbol::zero : Symbol::one;
        }
    }
    if (noise.kind == NoiseKind::flip) out.flagged_flips = noise.positions;
    return out;
}

namespace {

double xlog2x(double x) { return x == 0.0 ? 0.0 : x * std::log2(x); }

}  // namespace

double bsc_mutual_information(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bsc_mutual_information: p outside [0,1]");
    return 1.0 + xlog2x(p) + xlog2x(1.0 - p);
}

double bec_mutual_information(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("bec_mutual_information: epsilon outside [0,1]");
    return 1.0 - epsilon;
}

}  // namespace polar
