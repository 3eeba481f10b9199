#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace polar {

/// Per-channel mutual information after `stages` capacity splits of an erasure
/// channel. capacities is in coding-channel order (each parent expands in place
/// to its high/low pair); sorted_order lists 1-based channel ids by ascending
/// capacity, ties broken by lower id.
struct CapacityProfile {
    double epsilon = 0.0;
    unsigned stages = 0;
    std::vector<double> capacities;
    std::vector<std::uint32_t> sorted_order;

    std::size_t block_length() const { return capacities.size(); }
};

/// One split step: i -> (2i - i^2, i^2). First component >= second, sum = 2i.
std::pair<double, double> capacity_split(double i);

/// Apply capacity_split recursively `stages` times starting from 1 - epsilon.
CapacityProfile polarize(double epsilon, unsigned stages);

enum class FrozenPolicy { first_half, lowest_capacity };

/// Choose `count` frozen positions: first_half takes 1..count, lowest_capacity
/// takes the count channels of smallest capacity (ties to the lower id).
/// Returned sorted ascending.
std::vector<std::uint32_t> select_frozen(const CapacityProfile& profile, std::size_t count,
                                         FrozenPolicy policy);

/// Logistic fit of the ascending-sorted capacities. mu is the transition center
/// in channel-index units; beta is the transition width expressed as a
/// percentage of the block length (the model evaluated at sorted index k is
/// 1 / (1 + exp(-(k - mu) / (beta * N / 100)))). residual is the fit RMS.
struct SigmoidFit {
    double mu = 0.0;
    double beta = 0.0;
    double residual = 0.0;
};

/// Damped Gauss-Newton least squares of the logistic model against the sorted
/// profile, indices 1..N. Requires N >= 8 and a non-constant profile; throws on
/// non-convergence.
SigmoidFit fit_sigmoid(const CapacityProfile& profile);

/// Channel density implied by the logistic fit, normalized so the integral over
/// [0, N] equals N: N*(1 + cosh((n-mu)/b)) / (N + b*(sinh((N-mu)/b) + sinh(mu/b)))
/// with b the fit width in index units.
double channel_density(double n, const SigmoidFit& fit, std::size_t N);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

/// Histogram of capacities over `bins` uniform bins of [0, 1]; counts sum to N.
std::vector<HistogramBin> capacity_histogram(const CapacityProfile& profile, std::size_t bins);

}  // namespace polar
