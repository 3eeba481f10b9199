#pragma once

#include <cstdint>
#include <vector>

#include "polar/bitword.hpp"
#include "polar/rng.hpp"

namespace polar {

/// Complementary error function, relative error below 1e-12 on the normal range.
double erfc(double x);

/// Bit-flip probability convention for the Gaussian channel: `full` uses
/// P_e = erfc(1/(sigma*sqrt(2))); `half` uses the 0.5*erfc variant for
/// sensitivity studies.
enum class ErfcConvention { full, half };

/// Flip probability of the Gaussian channel at noise level sigma > 0.
double flip_probability(double sigma, ErfcConvention conv = ErfcConvention::full);

/// The sigma whose flip probability equals epsilon in (0,1); bracketed
/// bisection with residual below 1e-10.
double sigma_for_epsilon(double epsilon);

/// Nominal erased-position count Round(N * epsilon), round-half-to-even.
std::size_t erased_count(std::size_t N, double epsilon);

/// Nominal flipped-position count Round(N * flip_probability(sigma)).
std::size_t flipped_count(std::size_t N, double sigma);

enum class ChannelKind { bec, gaussian_flip };

struct ChannelModel {
    ChannelKind kind = ChannelKind::bec;
    double param = 0.0;  // epsilon for bec, sigma for gaussian_flip

    static ChannelModel bec(double epsilon);
    static ChannelModel gaussian_flip(double sigma);
};

enum class NoiseKind { erase, flip };

/// Distinct 1-based positions hit by one channel realization.
struct NoiseRealization {
    NoiseKind kind = NoiseKind::erase;
    std::vector<std::uint32_t> positions;  // sorted, distinct
};

/// with_replacement draws the nominal count uniformly in 1..N and deduplicates,
/// so the realized count may fall short; exact_count samples distinct positions.
enum class SamplingMode { with_replacement, exact_count };

NoiseRealization sample_noise(std::size_t N, const ChannelModel& model, Rng& rng,
                              SamplingMode mode = SamplingMode::with_replacement);

enum class Symbol : std::uint8_t { zero, one, erased };

/// Channel output: one symbol per position, plus the flip positions the
/// receiver is assumed to know (empty for erasure noise).
struct ReceivedWord {
    std::vector<Symbol> symbols;
    std::vector<std::uint32_t> flagged_flips;  // sorted, 1-based

    std::size_t size() const { return symbols.size(); }
};

/// Apply a noise realization to a codeword. Erasures blank the symbol; flips
/// complement the bit and are recorded in flagged_flips.
ReceivedWord transmit(const BitWord& x, const NoiseRealization& noise);

/// Mutual information of a binary symmetric channel with crossover p and
/// equiprobable inputs: 1 - H2(p).
double bsc_mutual_information(double p);

/// Mutual information of a binary erasure channel: 1 - epsilon.
double bec_mutual_information(double epsilon);

}  // namespace polar
