#include "polar/encoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace polar {

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> src(n);
    for (std::size_t k = 0; k < n; ++k) src[k] = static_cast<std::uint32_t>(k);
    return from_sources(std::move(src));
}

Permutation Permutation::from_sources(std::vector<std::uint32_t> src) {
    std::vector<bool> seen(src.size(), false);
    for (std::uint32_t s : src) {
        if (s >= src.size() || seen[s])
            throw std::invalid_argument("Permutation: source table is not a bijection");
        seen[s] = true;
    }
    Permutation p;
    p.src_ = std::move(src);
    return p;
}

std::vector<std::uint32_t> Permutation::one_based() const {
    std::vector<std::uint32_t> out(src_.size());
    for (std::size_t k = 0; k < src_.size(); ++k) out[k] = src_[k] + 1;
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(src_.size());
    for (std::size_t k = 0; k < src_.size(); ++k) inv[src_[k]] = static_cast<std::uint32_t>(k);
    return from_sources(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t k = 0; k < src_.size(); ++k)
        if (src_[k] != k) return false;
    return true;
}

BitWord Permutation::apply(const BitWord& in) const {
    if (in.size() != src_.size()) throw std::invalid_argument("Permutation: length mismatch");
    BitWord out(in.size());
    for (std::size_t k = 0; k < src_.size(); ++k)
        if (in.get(src_[k])) out.set(k, true);
    return out;
}

GenMatrix Permutation::to_matrix() const {
    GenMatrix m(src_.size(), src_.size());
    for (std::size_t k = 0; k < src_.size(); ++k) m.set(k, src_[k], true);
    return m;
}

Permutation reverse_shuffle(std::size_t N) {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("reverse_shuffle: N must be even");
    std::vector<std::uint32_t> src;
    src.reserve(N);
    for (std::size_t k = 0; k < N; k += 2) src.push_back(static_cast<std::uint32_t>(k));
    for (std::size_t k = 1; k < N; k += 2) src.push_back(static_cast<std::uint32_t>(k));
    return Permutation::from_sources(std::move(src));
}

Permutation bit_reversal(std::size_t N) {
    if (N == 0 || (N & (N - 1)) != 0)
        throw std::invalid_argument("bit_reversal: N must be a power of two");
    const unsigned n = static_cast<unsigned>(std::countr_zero(N));
    std::vector<std::uint32_t> src(N);
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t r = 0;
        for (unsigned b = 0; b < n; ++b)
            if (k & (std::size_t{1} << b)) r |= std::size_t{1} << (n - 1 - b);
        src[k] = static_cast<std::uint32_t>(r);
    }
    return Permutation::from_sources(std::move(src));
}

std::vector<std::uint32_t> PolarCode::message_positions() const {
    std::vector<std::uint32_t> out;
    out.reserve(message_length());
    std::size_t fi = 0;
    for (std::uint32_t pos = 1; pos <= block_length(); ++pos) {
        if (fi < frozen.size() && frozen[fi] == pos)
            ++fi;
        else
            out.push_back(pos);
    }
    return out;
}

void PolarCode::validate() const {
    if (stages < 1) throw std::invalid_argument("PolarCode: need at least one stage");
    if (stages > 20) throw std::invalid_argument("PolarCode: block length above 2^20");
    if (frozen_value != 0 && frozen_value != 1)
        throw std::invalid_argument("PolarCode: frozen_value must be 0 or 1");
    const std::size_t N = block_length();
    if (frozen.size() > N) throw std::invalid_argument("PolarCode: too many frozen positions");
    for (std::size_t i = 0; i < frozen.size(); ++i) {
        if (frozen[i] < 1 || frozen[i] > N)
            throw std::invalid_argument("PolarCode: frozen position out of range");
        if (i > 0 && frozen[i] <= frozen[i - 1])
            throw std::invalid_argument("PolarCode: frozen positions must be sorted and distinct");
    }
}

PolarCode first_half_frozen(unsigned stages, std::size_t count, int value, bool bit_reversed) {
    PolarCode code;
    code.stages = stages;
    code.bit_reversed = bit_reversed;
    code.frozen_value = value;
    code.frozen.resize(count);
    for (std::size_t i = 0; i < count; ++i) code.frozen[i] = static_cast<std::uint32_t>(i + 1);
    code.validate();
    return code;
}

namespace {

// Row gather of the Kronecker-power matrix: generator row i is kernel-power row
// gather[i]. Default order interleaves odd-index rows first; the alternative is
// the bit-reversal order.
std::vector<std::uint32_t> row_gather(const PolarCode& code) {
    const std::size_t N = code.block_length();
    std::vector<std::uint32_t> g(N);
    if (code.bit_reversed) {
        const unsigned n = code.stages;
        for (std::size_t k = 0; k < N; ++k) {
            std::size_t r = 0;
            for (unsigned b = 0; b < n; ++b)
                if (k & (std::size_t{1} << b)) r |= std::size_t{1} << (n - 1 - b);
            g[k] = static_cast<std::uint32_t>(r);
        }
    } else {
        const std::size_t half = N / 2;
        for (std::size_t k = 0; k < half; ++k) g[k] = static_cast<std::uint32_t>(2 * k);
        for (std::size_t k = half; k < N; ++k)
            g[k] = static_cast<std::uint32_t>(2 * (k - half) + 1);
    }
    return g;
}

std::uint64_t stage_mask(std::size_t h) {
    switch (h) {
        case 1: return 0x5555555555555555ull;
        case 2: return 0x3333333333333333ull;
        case 4: return 0x0f0f0f0f0f0f0f0full;
        case 8: return 0x00ff00ff00ff00ffull;
        case 16: return 0x0000ffff0000ffffull;
        default: return 0x00000000ffffffffull;
    }
}

// In-place XOR network: bit j accumulates every bit whose index is a superset
// of j, which is exactly multiplication by the Kronecker power of the kernel.
void butterfly_stages(BitWord& v) {
    const std::size_t n = v.size();
    std::uint64_t* w = v.words();
    const std::size_t nw = v.word_count();
    for (std::size_t h = 1; h < n; h <<= 1) {
        if (h < 64) {
            const std::uint64_t mask = stage_mask(h);
            for (std::size_t t = 0; t < nw; ++t) w[t] ^= (w[t] >> h) & mask;
        } else {
            const std::size_t hw = h >> 6;
            for (std::size_t base = 0; base + 2 * hw <= nw; base += 2 * hw)
                for (std::size_t t = 0; t < hw; ++t) w[base + t] ^= w[base + hw + t];
        }
    }
}

BitWord butterfly_impl(const BitWord& u, const std::vector<std::uint32_t>& gather) {
    BitWord v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.get(i)) v.set(gather[i], true);
    butterfly_stages(v);
    return v;
}

}  // namespace

GenMatrix build_generator(const PolarCode& code) {
    code.validate();
    if (code.stages > kMaterializeMaxStages)
        throw std::invalid_argument("build_generator: block length too large to materialize");
    GenMatrix f = kron_power(GenMatrix::xor_kernel(), code.stages);
    const auto gather = row_gather(code);
    const std::size_t N = code.block_length();
    GenMatrix out(N, N);
    for (std::size_t i = 0; i < N; ++i) out.row(i) = std::move(f.row(gather[i]));
    return out;
}

BitWord encode(const BitWord& u, const PolarCode& code) {
    code.validate();
    if (u.size() != code.block_length()) throw std::invalid_argument("encode: length mismatch");
    if (code.stages <= kMaterializeMaxStages) return vec_matmul(u, build_generator(code));
    return butterfly_impl(u, row_gather(code));
}

BitWord butterfly_encode(const BitWord& u, const PolarCode& code) {
    code.validate();
    if (u.size() != code.block_length())
        throw std::invalid_argument("butterfly_encode: length mismatch");
    return butterfly_impl(u, row_gather(code));
}

BitWord assemble_input(const BitWord& message, const PolarCode& code) {
    code.validate();
    if (message.size() != code.message_length())
        throw std::invalid_argument("assemble_input: message length mismatch");
    const std::size_t N = code.block_length();
    BitWord out(N);
    if (code.frozen_value == 1)
        for (std::uint32_t pos : code.frozen) out.set(pos - 1, true);
    std::size_t fi = 0, mi = 0;
    for (std::uint32_t pos = 1; pos <= N; ++pos) {
        if (fi < code.frozen.size() && code.frozen[fi] == pos) {
            ++fi;
        } else {
            if (message.get(mi)) out.set(pos - 1, true);
            ++mi;
        }
    }
    return out;
}

CodePlan::CodePlan(PolarCode code) : code_(std::move(code)) {
    code_.validate();
    msg_ = code_.message_positions();
    const std::size_t N = code_.block_length();
    const std::size_t K = msg_.size();
    const auto gather = row_gather(code_);

    if (code_.stages <= kMaterializeMaxStages) {
        gen_ = build_generator(code_);

        // Equation of position j over the message unknowns: coefficient t is
        // generator entry (msg[t], j); a kernel-power entry (a, b) is 1 exactly
        // when the bits of b are a subset of the bits of a.
        eq_rows_.assign(N, BitWord(K));
        for (std::size_t j = 0; j < N; ++j) {
            BitWord& row = eq_rows_[j];
            for (std::size_t t = 0; t < K; ++t) {
                const std::size_t a = gather[msg_[t] - 1];
                if ((j & ~a) == 0) row.set(t, true);
            }
        }
        frozen_rhs_ = BitWord(N);
        if (code_.frozen_value == 1) {
            for (std::size_t j = 0; j < N; ++j) {
                bool parity = false;
                for (std::uint32_t pos : code_.frozen) {
                    const std::size_t a = gather[pos - 1];
                    if ((j & ~a) == 0) parity = !parity;
                }
                frozen_rhs_.set(j, parity);
            }
        }
    }
}

BitWord CodePlan::encode(const BitWord& u) const {
    if (u.size() != code_.block_length()) throw std::invalid_argument("encode: length mismatch");
    if (gen_) return vec_matmul(u, *gen_);
    return butterfly(u);
}

BitWord CodePlan::butterfly(const BitWord& u) const {
    if (u.size() != code_.block_length())
        throw std::invalid_argument("butterfly_encode: length mismatch");
    return butterfly_impl(u, row_gather(code_));
}

}  // namespace polar
