#include "polar/bitword.hpp"

#include <stdexcept>

namespace polar {

BitWord BitWord::from_string(std::string_view bits) {
    BitWord out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            out.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("BitWord::from_string: expected '0' or '1'");
    }
    return out;
}

BitWord& BitWord::operator^=(const BitWord& o) {
    if (len_ != o.len_) throw std::invalid_argument("BitWord: length mismatch in XOR");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

std::string BitWord::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

}  // namespace polar
