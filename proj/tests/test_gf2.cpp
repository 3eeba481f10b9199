#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polar/gf2.hpp"

using namespace polar;

namespace {

GenMatrix from_rows(std::initializer_list<const char*> rows) {
    GenMatrix m(rows.size(), std::string_view(*rows.begin()).size());
    std::size_t i = 0;
    for (const char* r : rows) m.row(i++) = BitWord::from_string(r);
    return m;
}

GenMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& eng) {
    GenMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, eng() & 1);
    return m;
}

Gf2System make_system(std::initializer_list<const char*> rows, std::initializer_list<int> rhs,
                      std::size_t unknowns) {
    Gf2System sys;
    for (std::size_t i = 1; i <= unknowns; ++i)
        sys.unknown_ids.push_back(static_cast<std::uint32_t>(i));
    auto it = rhs.begin();
    for (const char* r : rows) sys.add_equation(BitWord::from_string(r), *it++ != 0);
    return sys;
}

}  // namespace

TEST_CASE("bitword basics") {
    BitWord w = BitWord::from_string("10110");
    CHECK(w.size() == 5);
    CHECK(w.get(0));
    CHECK_FALSE(w.get(1));
    CHECK(w.popcount() == 3);
    CHECK(w.to_string() == "10110");
    w.flip(1);
    CHECK(w.to_string() == "11110");
    CHECK(w.dot(BitWord::from_string("10000")) == true);
    CHECK(w.dot(BitWord::from_string("11000")) == false);
    CHECK_THROWS_AS(w ^= BitWord(4), std::invalid_argument);
    CHECK_THROWS_AS(BitWord::from_string("012"), std::invalid_argument);

    // packed words beyond the length stay zero, so equality is word equality
    BitWord a(70), b(70);
    a.set(69, true);
    a.flip(69);
    CHECK(a == b);
}

TEST_CASE("gf2_matmul identities and the 2x2 kernel") {
    const GenMatrix f0 = GenMatrix::xor_kernel();
    CHECK(gf2_matmul(GenMatrix::identity(2), f0) == f0);
    // the kernel is an involution mod 2
    CHECK(gf2_matmul(f0, f0) == GenMatrix::identity(2));

    const GenMatrix g4 = from_rows({"1000", "1010", "1100", "1111"});
    CHECK(gf2_matmul(g4, GenMatrix::identity(4)) == g4);
    CHECK_THROWS_AS(gf2_matmul(f0, g4), std::invalid_argument);
}

TEST_CASE("gf2_matmul associativity on random triples") {
    std::mt19937_64 eng(7);
    for (int t = 0; t < 25; ++t) {
        const auto a = random_matrix(5, 9, eng);
        const auto b = random_matrix(9, 4, eng);
        const auto c = random_matrix(4, 7, eng);
        CHECK(gf2_matmul(gf2_matmul(a, b), c) == gf2_matmul(a, gf2_matmul(b, c)));
    }
}

TEST_CASE("vec_matmul") {
    const GenMatrix f0 = GenMatrix::xor_kernel();
    for (int u1 = 0; u1 <= 1; ++u1)
        for (int u2 = 0; u2 <= 1; ++u2) {
            BitWord u(2);
            u.set(0, u1);
            u.set(1, u2);
            const BitWord x = vec_matmul(u, f0);
            CHECK(x.get(0) == ((u1 ^ u2) != 0));
            CHECK(x.get(1) == (u2 != 0));
        }

    CHECK(vec_matmul(BitWord(2), f0) == BitWord(2));

    // evaluating the 4-bit combination structure at u = (1,0,1,1)
    const GenMatrix g4 = from_rows({"1000", "1010", "1100", "1111"});
    CHECK(vec_matmul(BitWord::from_string("1011"), g4) == BitWord::from_string("1011"));

    CHECK_THROWS_AS(vec_matmul(BitWord(3), g4), std::invalid_argument);
}

TEST_CASE("kron_power") {
    const GenMatrix f0 = GenMatrix::xor_kernel();
    CHECK(kron_power(f0, 1) == f0);
    CHECK(kron_power(f0, 2) == from_rows({"1000", "1100", "1010", "1111"}));

    CHECK(kron_power(f0, 3).ones() == 27);
    for (unsigned n = 1; n <= 8; ++n) {
        const GenMatrix m = kron_power(f0, n);
        std::size_t expect = 1;
        for (unsigned i = 0; i < n; ++i) expect *= 3;
        CHECK(m.ones() == expect);
        CHECK(m.is_lower_triangular());
    }

    CHECK_THROWS_AS(kron_power(f0, 0), std::invalid_argument);
    CHECK_THROWS_AS(kron_power(GenMatrix::identity(3), 2), std::invalid_argument);
}

TEST_CASE("kron powers of the kernel are self-inverse") {
    std::mt19937_64 eng(3);
    for (unsigned n = 1; n <= 6; ++n) {
        const GenMatrix g = kron_power(GenMatrix::xor_kernel(), n);
        const std::size_t N = g.rows();
        for (int t = 0; t < 20; ++t) {
            BitWord u(N);
            for (std::size_t i = 0; i < N; ++i) u.set(i, eng() & 1);
            CHECK(vec_matmul(vec_matmul(u, g), g) == u);
        }
    }
}

TEST_CASE("rank_gf2") {
    CHECK(rank_gf2(GenMatrix(3, 5)) == 0);
    CHECK(rank_gf2(GenMatrix::xor_kernel()) == 2);
    for (unsigned n : {1u, 2u, 3u})
        CHECK(rank_gf2(kron_power(GenMatrix::xor_kernel(), n)) == (std::size_t{1} << n));
    CHECK(rank_gf2(from_rows({"11", "11"})) == 1);
}

TEST_CASE("solve_gf2 worked examples") {
    SUBCASE("unique") {
        const auto sys = make_system({"11", "01"}, {1, 0}, 2);
        const SolveOutcome out = solve_gf2(sys);
        REQUIRE(out.tag == SolveTag::unique);
        CHECK(out.assignment == BitWord::from_string("10"));
    }
    SUBCASE("underdetermined") {
        const auto sys = make_system({"11"}, {1}, 2);
        const SolveOutcome out = solve_gf2(sys);
        REQUIRE(out.tag == SolveTag::underdetermined);
        CHECK(out.rank_deficit == 1);
    }
    SUBCASE("inconsistent") {
        const auto sys = make_system({"01", "01"}, {0, 1}, 2);
        CHECK(solve_gf2(sys).tag == SolveTag::inconsistent);
    }
    SUBCASE("no equations at all") {
        const auto sys = make_system({}, {}, 2);
        const SolveOutcome out = solve_gf2(sys);
        REQUIRE(out.tag == SolveTag::underdetermined);
        CHECK(out.rank_deficit == 2);
    }
}

namespace {

// Oracle: enumerate all assignments, count the satisfying ones.
void check_against_enumeration(const Gf2System& sys) {
    const std::size_t k = sys.unknowns();
    std::size_t satisfying = 0;
    BitWord witness(k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        BitWord x(k);
        for (std::size_t i = 0; i < k; ++i) x.set(i, (mask >> i) & 1);
        bool ok = true;
        for (std::size_t e = 0; e < sys.equations() && ok; ++e)
            ok = sys.coeff[e].dot(x) == (sys.rhs[e] != 0);
        if (ok) {
            ++satisfying;
            witness = x;
        }
    }
    const SolveOutcome out = solve_gf2(sys);
    if (satisfying == 0) {
        CHECK(out.tag == SolveTag::inconsistent);
    } else if (satisfying == 1) {
        REQUIRE(out.tag == SolveTag::unique);
        CHECK(out.assignment == witness);
    } else {
        REQUIRE(out.tag == SolveTag::underdetermined);
        CHECK((std::size_t{1} << out.rank_deficit) == satisfying);
    }
}

}  // namespace

TEST_CASE("solve_gf2 agrees with exhaustive enumeration") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 1 + eng() % 12;
        const std::size_t rows = eng() % (k + 4);
        Gf2System sys;
        for (std::size_t i = 1; i <= k; ++i) sys.unknown_ids.push_back(static_cast<std::uint32_t>(i));
        for (std::size_t e = 0; e < rows; ++e) {
            BitWord row(k);
            for (std::size_t i = 0; i < k; ++i) row.set(i, eng() & 1);
            sys.add_equation(std::move(row), eng() & 1);
        }
        check_against_enumeration(sys);
    }
}

TEST_CASE("parallel elimination matches the serial reference") {
    std::mt19937_64 eng(13);
    for (std::size_t k : {5u, 40u, 130u, 300u}) {
        for (int trial = 0; trial < 8; ++trial) {
            Gf2System sys;
            for (std::size_t i = 1; i <= k; ++i)
                sys.unknown_ids.push_back(static_cast<std::uint32_t>(i));
            const std::size_t rows = k + eng() % 64;
            for (std::size_t e = 0; e < rows; ++e) {
                BitWord row(k);
                for (std::size_t i = 0; i < k; ++i) row.set(i, eng() & 1);
                sys.add_equation(std::move(row), eng() & 1);
            }
            const SolveOutcome a = solve_gf2(sys, Exec::serial);
            const SolveOutcome b = solve_gf2(sys, Exec::parallel);
            CHECK(a.tag == b.tag);
            CHECK(a.rank == b.rank);
            CHECK(a.rank_deficit == b.rank_deficit);
            if (a.tag == SolveTag::unique) CHECK(a.assignment == b.assignment);
        }
    }
}

TEST_CASE("solve_gf2 rejects malformed rows") {
    Gf2System sys;
    sys.unknown_ids = {1, 2, 3};
    sys.add_equation(BitWord(2), false);  // wrong width
    CHECK_THROWS_AS(solve_gf2(sys), std::invalid_argument);
}
