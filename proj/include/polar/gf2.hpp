#pragma once

#include <cstdint>
#include <vector>

#include "polar/bitword.hpp"

namespace polar {

/// Dense binary matrix stored as bit-packed rows.
class GenMatrix {
public:
    GenMatrix() = default;
    GenMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitWord(cols)) {}

    static GenMatrix identity(std::size_t n);
    /// The 2x2 XOR kernel ((1,0),(1,1)).
    static GenMatrix xor_kernel();

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { r_[i].set(j, v); }

    BitWord& row(std::size_t i) { return r_[i]; }
    const BitWord& row(std::size_t i) const { return r_[i]; }

    std::size_t ones() const;
    bool is_lower_triangular() const;

    bool operator==(const GenMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitWord> r_;
};

/// Matrix product over GF(2). Throws on dimension mismatch.
GenMatrix gf2_matmul(const GenMatrix& a, const GenMatrix& b);

/// Row vector times matrix over GF(2): result[j] = parity of sum_i u[i]*g[i][j].
BitWord vec_matmul(const BitWord& u, const GenMatrix& g);

/// n-fold Kronecker power of a 2x2 kernel; dimension 2^n x 2^n. Requires n >= 1.
GenMatrix kron_power(const GenMatrix& f, unsigned n);

/// GF(2) row rank.
std::size_t rank_gf2(const GenMatrix& m);

/// Linear system over GF(2): one coefficient row per equation, one rhs bit each.
/// unknown_ids are caller-chosen 1-based identifiers; coefficient rows index them
/// in order, so every row must have length unknown_ids.size().
struct Gf2System {
    std::vector<std::uint32_t> unknown_ids;
    std::vector<BitWord> coeff;
    std::vector<std::uint8_t> rhs;

    std::size_t unknowns() const { return unknown_ids.size(); }
    std::size_t equations() const { return coeff.size(); }
    void add_equation(BitWord row, bool rhs_bit) {
        coeff.push_back(std::move(row));
        rhs.push_back(rhs_bit ? 1 : 0);
    }
};

enum class SolveTag { unique, underdetermined, inconsistent };

struct SolveOutcome {
    SolveTag tag = SolveTag::underdetermined;
    /// Satisfying assignment in unknown_ids order; meaningful only when unique.
    BitWord assignment;
    /// unknowns - rank; meaningful only when underdetermined.
    std::size_t rank_deficit = 0;
    std::size_t rank = 0;
};

enum class Exec { serial, parallel };

/// Gaussian elimination over GF(2). Pivot choice is the first nonzero entry in
/// column order, so results are deterministic. A contradictory equation wins
/// over rank deficiency: any zero row with rhs 1 makes the outcome inconsistent.
/// Exec::parallel runs the row-elimination loop with OpenMP and produces the
/// same outcome as the serial reference.
SolveOutcome solve_gf2(const Gf2System& sys, Exec exec = Exec::serial);

}  // namespace polar
