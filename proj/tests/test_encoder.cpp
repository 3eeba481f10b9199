#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "polar/encoder.hpp"

using namespace polar;

namespace {

const char* kG4[] = {"1000", "1010", "1100", "1111"};
const char* kG8[] = {"10000000", "10100000", "10001000", "10101010",
                     "11000000", "11110000", "11001100", "11111111"};

GenMatrix golden(const char* const* rows, std::size_t n) {
    GenMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.row(i) = BitWord::from_string(rows[i]);
    return m;
}

BitWord random_word(std::size_t n, std::mt19937_64& eng) {
    BitWord u(n);
    for (std::size_t i = 0; i < n; ++i) u.set(i, eng() & 1);
    return u;
}

// I2 (x) p acting on a doubled index range.
Permutation block_pair(const Permutation& p) {
    const std::size_t n = p.size();
    std::vector<std::uint32_t> src(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        src[k] = p.source_of(k);
        src[n + k] = static_cast<std::uint32_t>(n) + p.source_of(k);
    }
    return Permutation::from_sources(std::move(src));
}

}  // namespace

TEST_CASE("reverse_shuffle") {
    CHECK(reverse_shuffle(4).one_based() == std::vector<std::uint32_t>{1, 3, 2, 4});
    CHECK(reverse_shuffle(2).is_identity());
    CHECK(reverse_shuffle(8).one_based() == std::vector<std::uint32_t>{1, 3, 5, 7, 2, 4, 6, 8});
    CHECK_THROWS_AS(reverse_shuffle(5), std::invalid_argument);
    CHECK_THROWS_AS(reverse_shuffle(0), std::invalid_argument);
}

TEST_CASE("bit_reversal values") {
    CHECK(bit_reversal(2).is_identity());
    CHECK(bit_reversal(4).one_based() == std::vector<std::uint32_t>{1, 3, 2, 4});
    CHECK(bit_reversal(8).one_based() == std::vector<std::uint32_t>{1, 5, 3, 7, 2, 6, 4, 8});
    CHECK_THROWS_AS(bit_reversal(12), std::invalid_argument);
}

TEST_CASE("bit_reversal is an involution and satisfies the shuffle recursion") {
    std::mt19937_64 eng(5);
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
        const Permutation b = bit_reversal(n);
        CHECK(b.inverse() == b);
        const BitWord v = random_word(n, eng);
        CHECK(b.apply(b.apply(v)) == v);
    }
    // recursion: applying the reverse shuffle and then the half-size reversal
    // on both halves reproduces the full bit reversal
    for (std::size_t n : {4u, 8u, 16u, 32u}) {
        const Permutation lhs = bit_reversal(n);
        const Permutation rec = block_pair(bit_reversal(n / 2));
        for (int t = 0; t < 10; ++t) {
            const BitWord v = random_word(n, eng);
            CHECK(lhs.apply(v) == rec.apply(reverse_shuffle(n).apply(v)));
        }
        // same identity at the matrix level
        CHECK(lhs.to_matrix() == gf2_matmul(rec.to_matrix(), reverse_shuffle(n).to_matrix()));
    }
}

TEST_CASE("build_generator reproduces the golden matrices") {
    CHECK(build_generator(first_half_frozen(1, 0)) == GenMatrix::xor_kernel());
    CHECK(build_generator(first_half_frozen(2, 0)) == golden(kG4, 4));
    CHECK(build_generator(first_half_frozen(3, 0)) == golden(kG8, 8));

    // at block length 4 the two generator forms coincide; at 8 they differ
    CHECK(build_generator(first_half_frozen(2, 0, 0, true)) == golden(kG4, 4));
    CHECK_FALSE(build_generator(first_half_frozen(3, 0, 0, true)) == golden(kG8, 8));
}

TEST_CASE("generators have full rank") {
    for (unsigned stages : {1u, 2u, 3u, 4u, 5u}) {
        const std::size_t N = std::size_t{1} << stages;
        CHECK(rank_gf2(build_generator(first_half_frozen(stages, 0))) == N);
        CHECK(rank_gf2(build_generator(first_half_frozen(stages, 0, 0, true))) == N);
    }
}

TEST_CASE("encode matches the printed 8-bit combination structure") {
    const PolarCode code = first_half_frozen(3, 4);
    // position j of the codeword sums exactly these input indices
    const std::set<int> expect[8] = {{1, 2, 3, 4, 5, 6, 7, 8}, {5, 6, 7, 8}, {2, 4, 6, 8},
                                     {6, 8},                   {3, 4, 7, 8}, {7, 8},
                                     {4, 8},                   {8}};
    for (int j = 0; j < 8; ++j) {
        std::set<int> got;
        for (int i = 0; i < 8; ++i) {
            BitWord e(8);
            e.set(i, true);
            if (encode(e, code).get(j)) got.insert(i + 1);
        }
        CHECK(got == expect[j]);
    }

    CHECK(encode(BitWord(8), code) == BitWord(8));
    BitWord e8(8);
    e8.set(7, true);
    CHECK(encode(e8, code) == BitWord::from_string("11111111"));
    CHECK_THROWS_AS(encode(BitWord(4), code), std::invalid_argument);
}

TEST_CASE("butterfly route equals the matrix route") {
    const PolarCode c1 = first_half_frozen(1, 0);
    for (int u1 = 0; u1 <= 1; ++u1)
        for (int u2 = 0; u2 <= 1; ++u2) {
            BitWord u(2);
            u.set(0, u1);
            u.set(1, u2);
            const BitWord x = butterfly_encode(u, c1);
            CHECK(x.get(0) == ((u1 ^ u2) != 0));
            CHECK(x.get(1) == (u2 != 0));
        }

    std::mt19937_64 eng(17);
    for (unsigned stages : {3u, 6u, 10u}) {
        for (bool rev : {false, true}) {
            const PolarCode code = first_half_frozen(stages, 0, 0, rev);
            const CodePlan plan(code);
            for (int t = 0; t < 1000; ++t) {
                const BitWord u = random_word(code.block_length(), eng);
                const BitWord via_matrix = plan.encode(u);
                CHECK(via_matrix == butterfly_encode(u, code));
                CHECK(via_matrix == plan.butterfly(u));
            }
        }
    }
    CHECK(butterfly_encode(BitWord(16), first_half_frozen(4, 0)) == BitWord(16));
    CHECK_THROWS_AS(butterfly_encode(BitWord(3), c1), std::invalid_argument);
}

TEST_CASE("the bit-reversed generator is self-inverse") {
    std::mt19937_64 eng(23);
    // exhaustive at block length 4 (where both forms coincide)
    const GenMatrix g4 = build_generator(first_half_frozen(2, 0));
    for (std::size_t mask = 0; mask < 16; ++mask) {
        BitWord u(4);
        for (int i = 0; i < 4; ++i) u.set(i, (mask >> i) & 1);
        CHECK(vec_matmul(vec_matmul(u, g4), g4) == u);
    }
    for (unsigned stages : {3u, 4u}) {
        const GenMatrix g = build_generator(first_half_frozen(stages, 0, 0, true));
        for (int t = 0; t < 50; ++t) {
            const BitWord u = random_word(std::size_t{1} << stages, eng);
            CHECK(vec_matmul(vec_matmul(u, g), g) == u);
        }
    }
}

TEST_CASE("assemble_input") {
    PolarCode code = first_half_frozen(2, 2);
    CHECK(assemble_input(BitWord::from_string("10"), code) == BitWord::from_string("0010"));

    code.frozen_value = 1;
    CHECK(assemble_input(BitWord::from_string("10"), code) == BitWord::from_string("1110"));

    const PolarCode open_code = first_half_frozen(2, 0);
    CHECK(assemble_input(BitWord::from_string("0110"), open_code) == BitWord::from_string("0110"));

    CHECK_THROWS_AS(assemble_input(BitWord(3), code), std::invalid_argument);

    // frozen positions may be anywhere, message bits keep their order
    PolarCode scattered;
    scattered.stages = 2;
    scattered.frozen = {2, 4};
    scattered.frozen_value = 1;
    scattered.validate();
    CHECK(assemble_input(BitWord::from_string("00"), scattered) == BitWord::from_string("0101"));
}

TEST_CASE("code validation") {
    CHECK_THROWS_AS(first_half_frozen(0, 0), std::invalid_argument);
    PolarCode bad;
    bad.stages = 2;
    bad.frozen = {3, 3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.frozen = {5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.frozen = {1};
    bad.frozen_value = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.frozen_value = 0;
    bad.validate();
    CHECK(bad.message_positions() == std::vector<std::uint32_t>{2, 3, 4});
}

TEST_CASE("plan equation rows match generator columns") {
    std::mt19937_64 eng(29);
    for (bool rev : {false, true}) {
        for (int fv : {0, 1}) {
            PolarCode code = first_half_frozen(4, 8, fv, rev);
            const CodePlan plan(code);
            const GenMatrix g = build_generator(code);
            const auto msg = code.message_positions();
            for (std::uint32_t pos = 1; pos <= 16; ++pos) {
                const BitWord& row = plan.equation_row(pos);
                REQUIRE(row.size() == msg.size());
                for (std::size_t t = 0; t < msg.size(); ++t)
                    CHECK(row.get(t) == g.get(msg[t] - 1, pos - 1));
                bool parity = false;
                for (std::uint32_t f : code.frozen)
                    if (g.get(f - 1, pos - 1) && fv == 1) parity = !parity;
                CHECK(plan.frozen_rhs(pos) == parity);
            }
            (void)eng;
        }
    }
}

TEST_CASE("block length cap for dense materialization") {
    PolarCode big;
    big.stages = kMaterializeMaxStages + 1;
    big.validate();
    CHECK_THROWS_AS(build_generator(big), std::invalid_argument);
    // the butterfly route still works above the cap
    const CodePlan plan(big);
    CHECK(plan.generator() == nullptr);
    CHECK_FALSE(plan.has_decode_tables());
    BitWord u(big.block_length());
    u.set(big.block_length() - 1, true);
    const BitWord x = plan.butterfly(u);
    CHECK(x.popcount() == big.block_length());  // last input row is all ones
}
