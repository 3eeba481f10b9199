#include "polar/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polar {

std::pair<double, double> capacity_split(double i) {
    if (!(i >= 0.0 && i <= 1.0))
        throw std::invalid_argument("capacity_split: capacity outside [0,1]");
    return {2.0 * i - i * i, i * i};
}

CapacityProfile polarize(double epsilon, unsigned stages) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("polarize: epsilon outside [0,1]");
    if (stages < 1) throw std::invalid_argument("polarize: need at least one stage");

    std::vector<double> cur{1.0 - epsilon};
    for (unsigned s = 0; s < stages; ++s) {
        std::vector<double> next;
        next.reserve(cur.size() * 2);
        for (double c : cur) {
            auto [hi, lo] = capacity_split(c);
            next.push_back(hi);
            next.push_back(lo);
        }
        cur = std::move(next);
    }

    CapacityProfile p;
    p.epsilon = epsilon;
    p.stages = stages;
    p.capacities = std::move(cur);
    p.sorted_order.resize(p.capacities.size());
    std::iota(p.sorted_order.begin(), p.sorted_order.end(), 1u);
    std::stable_sort(p.sorted_order.begin(), p.sorted_order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return p.capacities[a - 1] < p.capacities[b - 1];
                     });
    return p;
}

std::vector<std::uint32_t> select_frozen(const CapacityProfile& profile, std::size_t count,
                                         FrozenPolicy policy) {
    const std::size_t N = profile.block_length();
    if (count > N) throw std::invalid_argument("select_frozen: count exceeds block length");
    std::vector<std::uint32_t> out;
    out.reserve(count);
    if (policy == FrozenPolicy::first_half) {
        for (std::size_t i = 1; i <= count; ++i) out.push_back(static_cast<std::uint32_t>(i));
    } else {
        out.assign(profile.sorted_order.begin(), profile.sorted_order.begin() + count);
        std::sort(out.begin(), out.end());
    }
    return out;
}

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

SigmoidFit fit_sigmoid(const CapacityProfile& profile) {
    const std::size_t N = profile.block_length();
    if (N < 8) throw std::invalid_argument("fit_sigmoid: need at least 8 channels");

    std::vector<double> c(N);
    for (std::size_t k = 0; k < N; ++k) c[k] = profile.capacities[profile.sorted_order[k] - 1];
    if (c.front() == c.back())
        throw std::invalid_argument("fit_sigmoid: degenerate profile, all capacities equal");

    // Width is fitted in index units for conditioning and reported as % of N.
    double mu = 0.0;
    double best = 2.0;
    for (std::size_t k = 0; k < N; ++k) {
        const double d = std::abs(c[k] - 0.5);
        if (d < best) {
            best = d;
            mu = static_cast<double>(k + 1);
        }
    }
    double b = static_cast<double>(N) / 100.0;

    auto sse_at = [&](double m, double w, std::vector<double>& r) {
        double sse = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            r[k] = logistic((static_cast<double>(k + 1) - m) / w) - c[k];
            sse += r[k] * r[k];
        }
        return sse;
    };

    std::vector<double> r(N), rt(N);
    double sse = sse_at(mu, b, r);
    double lambda = 1e-3;
    double gnorm = 0.0;
    const int max_iter = 500;

    for (int iter = 0; iter < max_iter; ++iter) {
        double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
        for (std::size_t k = 0; k < N; ++k) {
            const double f = logistic((static_cast<double>(k + 1) - mu) / b);
            const double w = f * (1.0 - f);
            const double jmu = -w / b;
            const double jb = -w * (static_cast<double>(k + 1) - mu) / (b * b);
            g0 += jmu * r[k];
            g1 += jb * r[k];
            h00 += jmu * jmu;
            h01 += jmu * jb;
            h11 += jb * jb;
        }
        gnorm = std::hypot(g0, g1);
        if (gnorm < 1e-8) {
            SigmoidFit fit;
            fit.mu = mu;
            fit.beta = b * 100.0 / static_cast<double>(N);
            fit.residual = std::sqrt(sse / static_cast<double>(N));
            return fit;
        }
        bool stepped = false;
        for (int tries = 0; tries < 60 && !stepped; ++tries) {
            const double a00 = h00 * (1.0 + lambda), a11 = h11 * (1.0 + lambda);
            const double det = a00 * a11 - h01 * h01;
            if (det != 0.0 && std::isfinite(det)) {
                const double dmu = (-g0 * a11 + g1 * h01) / det;
                const double db = (-g1 * a00 + g0 * h01) / det;
                const double nmu = mu + dmu, nb = b + db;
                if (nb > 0.0) {
                    const double nsse = sse_at(nmu, nb, rt);
                    if (nsse < sse) {
                        mu = nmu;
                        b = nb;
                        sse = nsse;
                        std::swap(r, rt);
                        lambda = std::max(lambda / 3.0, 1e-12);
                        stepped = true;
                        break;
                    }
                }
            }
            lambda *= 10.0;
        }
        if (!stepped) break;  // no improving damped step; report via the check below
    }

    if (gnorm >= 1e-8) {
        std::ostringstream os;
        os << "fit_sigmoid: no convergence, gradient norm " << gnorm << " after " << max_iter
           << " iterations (mu=" << mu << ", width=" << b << ")";
        throw std::runtime_error(os.str());
    }
    SigmoidFit fit;
    fit.mu = mu;
    fit.beta = b * 100.0 / static_cast<double>(N);
    fit.residual = std::sqrt(sse / static_cast<double>(N));
    return fit;
}

double channel_density(double n, const SigmoidFit& fit, std::size_t N) {
    const double nn = static_cast<double>(N);
    const double b = fit.beta * nn / 100.0;
    const double num = nn * (1.0 + std::cosh((n - fit.mu) / b));
    const double den = nn + b * (std::sinh((nn - fit.mu) / b) + std::sinh(fit.mu / b));
    return num / den;
}

std::vector<HistogramBin> capacity_histogram(const CapacityProfile& profile, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("capacity_histogram: need at least 2 bins");
    std::vector<HistogramBin> out(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        out[i].lo = static_cast<double>(i) / static_cast<double>(bins);
        out[i].hi = static_cast<double>(i + 1) / static_cast<double>(bins);
    }
    for (double c : profile.capacities) {
        std::size_t idx = static_cast<std::size_t>(c * static_cast<double>(bins));
        if (idx >= bins) idx = bins - 1;
        ++out[idx].count;
    }
    return out;
}

}  // namespace polar
