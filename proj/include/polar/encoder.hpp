#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polar/gf2.hpp"

namespace polar {

/// Index permutation, stored as a gather table: apply() writes out[k] = in[src(k)].
class Permutation {
public:
    static Permutation identity(std::size_t n);
    static Permutation from_sources(std::vector<std::uint32_t> src);

    std::size_t size() const { return src_.size(); }
    std::uint32_t source_of(std::size_t k) const { return src_[k]; }

    /// 1-based image list, the (s_1,...,s_N) -> (s_i1,...,s_iN) description.
    std::vector<std::uint32_t> one_based() const;

    Permutation inverse() const;
    bool is_identity() const;

    BitWord apply(const BitWord& in) const;
    /// Permutation matrix P with P[k, src(k)] = 1, so P*v gathers like apply().
    GenMatrix to_matrix() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> src_;
};

/// Odd-index entries first, then even-index entries, order kept inside each
/// group: (s1,s2,s3,s4) -> (s1,s3,s2,s4). N must be even.
Permutation reverse_shuffle(std::size_t N);

/// Bit-reversal permutation: entry k comes from the index whose binary digits
/// are reversed. Satisfies B[N] = R[N]*(I2 (x) B[N/2]) with B[2] = identity.
/// N must be a power of two.
Permutation bit_reversal(std::size_t N);

/// Block code parameters. Positions are 1-based throughout.
///
/// The generator comes from the n-fold Kronecker power of the XOR kernel with a
/// row permutation applied: the default gathers odd-index rows first (the form
/// whose per-position XOR combinations match the classic encoder network), and
/// bit_reversed = true applies the bit-reversal permutation instead.
struct PolarCode {
    unsigned stages = 1;                  // N = 2^stages
    bool bit_reversed = false;
    std::vector<std::uint32_t> frozen;    // sorted, distinct, 1-based
    int frozen_value = 0;

    std::size_t block_length() const { return std::size_t{1} << stages; }
    std::size_t message_length() const { return block_length() - frozen.size(); }
    std::vector<std::uint32_t> message_positions() const;

    /// Throws unless stages >= 1, frozen positions are sorted, distinct and in
    /// range, and frozen_value is a bit.
    void validate() const;
};

/// Code with the first count positions frozen to `value`.
PolarCode first_half_frozen(unsigned stages, std::size_t count, int value = 0,
                            bool bit_reversed = false);

/// Largest block length for which generator / decode tables are materialized.
inline constexpr unsigned kMaterializeMaxStages = 14;

/// Dense generator matrix for the code. Throws above kMaterializeMaxStages.
GenMatrix build_generator(const PolarCode& code);

/// x = u * G over GF(2). Uses the dense generator when materializable, the
/// butterfly network beyond that; both compute the same map.
BitWord encode(const BitWord& u, const PolarCode& code);

/// Same map as encode(), evaluated in O(N log N) XOR stages without a matrix.
BitWord butterfly_encode(const BitWord& u, const PolarCode& code);

/// Full block input: frozen_value at frozen positions, message bits in order at
/// the remaining positions. message.size() must equal message_length().
BitWord assemble_input(const BitWord& message, const PolarCode& code);

/// Precomputed per-code tables shared by encode and linear decode. Immutable
/// after construction; safe to share across threads.
class CodePlan {
public:
    explicit CodePlan(PolarCode code);

    const PolarCode& code() const { return code_; }
    const std::vector<std::uint32_t>& message_positions() const { return msg_; }

    BitWord encode(const BitWord& u) const;
    BitWord butterfly(const BitWord& u) const;

    /// Dense generator, or nullptr above the materialization cap.
    const GenMatrix* generator() const { return gen_ ? &*gen_ : nullptr; }

    bool has_decode_tables() const { return !eq_rows_.empty(); }
    /// Coefficients of the message unknowns in the equation of position pos.
    const BitWord& equation_row(std::uint32_t pos) const { return eq_rows_[pos - 1]; }
    /// Frozen-bit contribution folded into the rhs of the equation of position pos.
    bool frozen_rhs(std::uint32_t pos) const { return frozen_rhs_.get(pos - 1); }

private:
    PolarCode code_;
    std::vector<std::uint32_t> msg_;
    std::optional<GenMatrix> gen_;
    std::vector<BitWord> eq_rows_;
    BitWord frozen_rhs_;
};

}  // namespace polar
