#include "polar/codec.hpp"

#include <stdexcept>

namespace polar {

BitWord text_to_bits(std::string_view text) {
    BitWord out(text.size() * 8);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        for (int b = 0; b < 8; ++b)
            if (c & (1u << (7 - b))) out.set(i * 8 + b, true);
    }
    return out;
}

std::string bits_to_text(const BitWord& bits) {
    if (bits.size() % 8 != 0)
        throw std::invalid_argument("bits_to_text: bit count not a multiple of 8");
    std::string out(bits.size() / 8, '\0');
    for (std::size_t i = 0; i < out.size(); ++i) {
        unsigned char c = 0;
        for (int b = 0; b < 8; ++b)
            if (bits.get(i * 8 + b)) c |= static_cast<unsigned char>(1u << (7 - b));
        out[i] = static_cast<char>(c);
    }
    return out;
}

}  // namespace polar
