#pragma once

#include <cstdint>
#include <random>

namespace polar {

/// splitmix64 finalizer; used to derive well-separated child seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic child-stream seed from (base, a, b), e.g. (base, sweep point, trial).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ a);
    s = mix64(s ^ b);
    return s;
}

/// Seeded generator with a bounded-draw primitive that is bit-reproducible across
/// platforms (std::uniform_int_distribution is not specified tightly enough for that).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Unbiased draw in [0, n) via multiply-shift with rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        using u128 = unsigned __int128;
        std::uint64_t x = eng_();
        u128 m = static_cast<u128>(x) * n;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = eng_();
                m = static_cast<u128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Inclusive range [lo, hi].
    std::uint64_t uniform_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + uniform_below(hi - lo + 1);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace polar
