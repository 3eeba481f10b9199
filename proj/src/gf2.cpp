#include "polar/gf2.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace polar {

GenMatrix GenMatrix::identity(std::size_t n) {
    GenMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

GenMatrix GenMatrix::xor_kernel() {
    GenMatrix f(2, 2);
    f.set(0, 0, true);
    f.set(1, 0, true);
    f.set(1, 1, true);
    return f;
}

std::size_t GenMatrix::ones() const {
    std::size_t c = 0;
    for (const auto& r : r_) c += r.popcount();
    return c;
}

bool GenMatrix::is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (r_[i].get(j)) return false;
    return true;
}

GenMatrix gf2_matmul(const GenMatrix& a, const GenMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("gf2_matmul: dimension mismatch");
    GenMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitWord& dst = out.row(i);
        const BitWord& src = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (src.get(k)) dst ^= b.row(k);
    }
    return out;
}

BitWord vec_matmul(const BitWord& u, const GenMatrix& g) {
    if (u.size() != g.rows()) throw std::invalid_argument("vec_matmul: dimension mismatch");
    BitWord out(g.cols());
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.get(i)) out ^= g.row(i);
    return out;
}

namespace {

GenMatrix kron(const GenMatrix& a, const GenMatrix& b) {
    GenMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            if (!a.get(ar, ac)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    if (b.get(br, bc)) out.set(ar * b.rows() + br, ac * b.cols() + bc, true);
        }
    return out;
}

}  // namespace

GenMatrix kron_power(const GenMatrix& f, unsigned n) {
    if (f.rows() != 2 || f.cols() != 2)
        throw std::invalid_argument("kron_power: kernel must be 2x2");
    if (n == 0) throw std::invalid_argument("kron_power: need at least one factor");
    GenMatrix acc = f;
    for (unsigned s = 1; s < n; ++s) acc = kron(acc, f);
    return acc;
}

std::size_t rank_gf2(const GenMatrix& m) {
    std::vector<BitWord> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i)
            if (rows[i].get(col)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

namespace {

// Flat row-major scratch for elimination: coefficient bits 0..k-1, rhs at bit k.
struct AugmentedRows {
    std::size_t nrows, k, words;
    std::vector<std::uint64_t> a;

    AugmentedRows(const Gf2System& sys)
        : nrows(sys.equations()), k(sys.unknowns()), words((k + 1 + 63) / 64), a(nrows * words, 0) {
        for (std::size_t i = 0; i < nrows; ++i) {
            const BitWord& row = sys.coeff[i];
            if (row.size() != k) throw std::invalid_argument("solve_gf2: malformed coefficient row");
            std::copy(row.words(), row.words() + row.word_count(), a.begin() + i * words);
            if (sys.rhs[i]) set_bit(i, k);
        }
    }

    std::uint64_t* row(std::size_t i) { return a.data() + i * words; }
    bool get_bit(std::size_t i, std::size_t b) const {
        return (a[i * words + (b >> 6)] >> (b & 63)) & 1u;
    }
    void set_bit(std::size_t i, std::size_t b) { a[i * words + (b >> 6)] |= std::uint64_t{1} << (b & 63); }
    void xor_into(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (std::size_t w = 0; w < words; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i != j) std::swap_ranges(row(i), row(i) + words, row(j));
    }
};

void eliminate_serial(AugmentedRows& m, std::vector<std::uint32_t>& pivot_col, std::size_t& rank) {
    for (std::size_t col = 0; col < m.k && rank < m.nrows; ++col) {
        std::size_t piv = rank;
        while (piv < m.nrows && !m.get_bit(piv, col)) ++piv;
        if (piv == m.nrows) continue;
        m.swap_rows(piv, rank);
        for (std::size_t i = rank + 1; i < m.nrows; ++i)
            if (m.get_bit(i, col)) m.xor_into(i, rank);
        pivot_col.push_back(static_cast<std::uint32_t>(col));
        ++rank;
    }
}

#ifdef _OPENMP
// Panel-batched elimination: pivots for up to 64 consecutive columns are
// established on a compact copy of just the words those columns occupy, while
// full-width updates of non-pivot rows are deferred and folded in with one
// parallel pass per panel. Produces bit-identical state to the serial routine
// (same pivot choices, same row combinations), with 64x fewer synchronizations.
void eliminate_parallel(AugmentedRows& m, std::vector<std::uint32_t>& pivot_col, std::size_t& rank) {
    constexpr std::size_t kPanel = 64;
    const std::size_t total_rows = m.nrows;

    std::vector<std::uint64_t> pw(2 * total_rows);   // per-row panel words
    std::vector<std::uint64_t> acc(total_rows);      // per-row pending pivot mask
    std::vector<std::size_t> piv_rows;                // final row index per panel pivot
    piv_rows.reserve(kPanel);
    // combination tables: 8 chunks of 8 acc bits, 256 precomputed row XORs each
    std::vector<std::uint64_t> tables(8 * 256 * m.words);

    for (std::size_t panel = 0; panel < m.k && rank < total_rows; panel += kPanel) {
        const std::size_t pend = std::min(panel + kPanel, m.k);
        const std::size_t w0 = panel >> 6;
        const std::size_t w1 = (pend - 1) >> 6;
        const std::size_t pwidth = w1 - w0 + 1;  // 1 or 2

        for (std::size_t i = rank; i < total_rows; ++i) {
            const std::uint64_t* row = m.row(i);
            pw[2 * i] = row[w0];
            pw[2 * i + 1] = pwidth == 2 ? row[w1] : 0;
            acc[i] = 0;
        }
        piv_rows.clear();

        for (std::size_t col = panel; col < pend && rank < total_rows; ++col) {
            const std::size_t word = (col >> 6) - w0;
            const std::uint64_t bit = std::uint64_t{1} << (col & 63);

            std::size_t piv = rank;
            while (piv < total_rows && !(pw[2 * piv + word] & bit)) ++piv;
            if (piv == total_rows) continue;

            // settle the pivot's full row, then move it into place
            if (acc[piv]) {
                std::uint64_t* dst = m.row(piv);
                std::uint64_t pending = acc[piv];
                while (pending) {
                    const unsigned b = static_cast<unsigned>(std::countr_zero(pending));
                    pending &= pending - 1;
                    const std::uint64_t* src = m.row(piv_rows[b]);
                    for (std::size_t w = 0; w < m.words; ++w) dst[w] ^= src[w];
                }
                acc[piv] = 0;
            }
            m.swap_rows(piv, rank);
            std::swap(pw[2 * piv], pw[2 * rank]);
            std::swap(pw[2 * piv + 1], pw[2 * rank + 1]);
            std::swap(acc[piv], acc[rank]);

            const std::uint64_t slot = std::uint64_t{1} << piv_rows.size();
            const std::uint64_t p0 = pw[2 * rank], p1 = pw[2 * rank + 1];
            for (std::size_t i = rank + 1; i < total_rows; ++i) {
                if (pw[2 * i + word] & bit) {
                    pw[2 * i] ^= p0;
                    pw[2 * i + 1] ^= p1;
                    acc[i] ^= slot;
                }
            }
            piv_rows.push_back(rank);
            pivot_col.push_back(static_cast<std::uint32_t>(col));
            ++rank;
        }

        if (piv_rows.empty() || rank >= total_rows) continue;

        // chunk tables over the panel pivots: tables[c][mask] = XOR of the
        // pivot rows selected by mask within chunk c
        const std::size_t chunks = (piv_rows.size() + 7) / 8;
        for (std::size_t c = 0; c < chunks; ++c) {
            std::uint64_t* tbl = tables.data() + c * 256 * m.words;
            std::fill(tbl, tbl + m.words, 0);
            const std::size_t nbits = std::min<std::size_t>(8, piv_rows.size() - 8 * c);
            for (std::size_t mask = 1; mask < (std::size_t{1} << nbits); ++mask) {
                const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
                const std::uint64_t* base = tbl + (mask & (mask - 1)) * m.words;
                const std::uint64_t* prow = m.row(piv_rows[8 * c + low]);
                std::uint64_t* dst = tbl + mask * m.words;
                for (std::size_t w = 0; w < m.words; ++w) dst[w] = base[w] ^ prow[w];
            }
        }

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(rank);
             i < static_cast<std::ptrdiff_t>(total_rows); ++i) {
            std::uint64_t mask = acc[i];
            if (!mask) continue;
            std::uint64_t* dst = m.row(static_cast<std::size_t>(i));
            for (std::size_t c = 0; mask; ++c, mask >>= 8) {
                const std::size_t part = mask & 0xff;
                if (!part) continue;
                const std::uint64_t* src = tables.data() + (c * 256 + part) * m.words;
                for (std::size_t w = 0; w < m.words; ++w) dst[w] ^= src[w];
            }
        }
    }
}
#endif

}  // namespace

SolveOutcome solve_gf2(const Gf2System& sys, Exec exec) {
    if (sys.rhs.size() != sys.coeff.size())
        throw std::invalid_argument("solve_gf2: rhs/equation count mismatch");
    const std::size_t k = sys.unknowns();

    AugmentedRows m(sys);
    std::vector<std::uint32_t> pivot_col;
    pivot_col.reserve(k);
    std::size_t rank = 0;

#ifdef _OPENMP
    if (exec == Exec::parallel)
        eliminate_parallel(m, pivot_col, rank);
    else
        eliminate_serial(m, pivot_col, rank);
#else
    (void)exec;
    eliminate_serial(m, pivot_col, rank);
#endif

    SolveOutcome out;
    out.rank = rank;

    // Rows below the rank have all-zero coefficients; rhs 1 there is a contradiction.
    for (std::size_t i = rank; i < m.nrows; ++i) {
        if (m.get_bit(i, k)) {
            out.tag = SolveTag::inconsistent;
            return out;
        }
    }

    if (rank < k) {
        out.tag = SolveTag::underdetermined;
        out.rank_deficit = k - rank;
        return out;
    }

    // Full rank: pivot_col is 0..k-1, rows are upper triangular. Back-substitute.
    out.tag = SolveTag::unique;
    BitWord x(k);
    const std::size_t xw = x.word_count();
    for (std::size_t r = k; r-- > 0;) {
        const std::uint64_t* row = m.row(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < xw; ++w) acc ^= row[w] & x.words()[w];
        bool bit = (std::popcount(acc) & 1u) != 0;
        if (m.get_bit(r, k)) bit = !bit;
        x.set(r, bit);
    }
    out.assignment = std::move(x);
    return out;
}

}  // namespace polar
