#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

/// Fixed-length bit vector over GF(2), packed 64 bits per machine word.
/// Bits beyond size() are kept zero, so equality and whole-word XOR are exact.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

    /// Parse from a string of '0'/'1', index 0 first.
    static BitWord from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const {
        assert(i < len_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        assert(i < len_);
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        assert(i < len_);
        w_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    BitWord& operator^=(const BitWord& o);
    friend BitWord operator^(BitWord a, const BitWord& b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitWord&) const = default;

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// GF(2) inner product: parity of (*this AND o).
    bool dot(const BitWord& o) const {
        assert(len_ == o.len_);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1u;
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    std::uint64_t* words() { return w_.data(); }
    const std::uint64_t* words() const { return w_.data(); }
    std::size_t word_count() const { return w_.size(); }

    std::string to_string() const;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace polar
