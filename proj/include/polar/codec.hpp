#pragma once

#include <string>
#include <string_view>

#include "polar/bitword.hpp"

namespace polar {

/// 8 bits per character, most significant bit first.
BitWord text_to_bits(std::string_view text);

/// Inverse of text_to_bits; bit count must be a multiple of 8.
std::string bits_to_text(const BitWord& bits);

}  // namespace polar
