#pragma once

#include <cstdint>
#include <vector>

#include "polar/channels.hpp"
#include "polar/encoder.hpp"
#include "polar/gf2.hpp"

namespace polar {

/// Receiver-side knowledge of positions whose equations must be discarded
/// (e.g. known flip locations). 1-based, sorted, distinct.
struct SideInformation {
    std::vector<std::uint32_t> dropped_positions;
};

enum class DecodeTag { success, ambiguous, inconsistent };

struct DecodeResult {
    DecodeTag tag = DecodeTag::ambiguous;
    /// Recovered message bits in message-position order; meaningful on success.
    BitWord message;
    /// unknowns - rank; meaningful when ambiguous.
    std::size_t rank_deficit = 0;
    std::size_t equations_used = 0;
    /// Wall time of the elimination step only.
    double solve_time_s = 0.0;
};

/// Build the GF(2) system relating the surviving received symbols to the
/// message unknowns. Every position that is neither erased nor dropped yields
/// one equation; frozen-bit contributions are folded into the right-hand side.
Gf2System assemble_system(const ReceivedWord& received, const CodePlan& plan,
                          const SideInformation& side = {});

/// Linear decode: solve the assembled system. Success iff the solution is
/// unique. Flagged flip positions in `received` are ignored here; pass them as
/// dropped_positions (or use decode_flip) to discard corrupted equations, or
/// leave them in place to probe inconsistent outcomes.
DecodeResult decode(const ReceivedWord& received, const CodePlan& plan,
                    const SideInformation& side = {});

/// Decode with the received word's flagged flip positions dropped; the flip
/// locations are assumed known to the receiver, turning flips into erasures.
DecodeResult decode_flip(const ReceivedWord& received, const CodePlan& plan);

/// True iff a successful result recovered `original` bit-for-bit. Throws if the
/// result is not a success.
bool verify(const DecodeResult& result, const BitWord& original);

}  // namespace polar
