#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polar/codec.hpp"

using namespace polar;

TEST_CASE("text_to_bits") {
    const BitWord bits = text_to_bits("Write A Write BC");
    CHECK(bits.size() == 128);

    CHECK(text_to_bits("").size() == 0);

    // 'W' is character code 87 = 01010111 most significant bit first
    CHECK(text_to_bits("W") == BitWord::from_string("01010111"));
}

TEST_CASE("bits_to_text") {
    CHECK(bits_to_text(text_to_bits("Write A Write BC")) == "Write A Write BC");
    CHECK(bits_to_text(BitWord::from_string("01010111")) == "W");
    CHECK(bits_to_text(BitWord(8)) == std::string(1, '\0'));
    CHECK_THROWS_AS(bits_to_text(BitWord(7)), std::invalid_argument);
}

TEST_CASE("round trip over random byte strings") {
    std::mt19937_64 eng(19);
    for (int t = 0; t < 200; ++t) {
        std::string s(eng() % 64, '\0');
        for (char& c : s) c = static_cast<char>(eng() & 0xff);
        CHECK(bits_to_text(text_to_bits(s)) == s);
    }
}
