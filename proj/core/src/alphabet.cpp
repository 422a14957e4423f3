#include "rbc/alphabet.hpp"

#include <cmath>

namespace rbc {

Alphabet::Alphabet(std::string symbols, std::optional<char> endmarker)
    : symbols_(std::move(symbols)), endmarker_(endmarker) {
    if (symbols_.size() < 2) {
        throw ParamOutOfRange("alphabet needs at least two symbols");
    }
    index_of_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(symbols_[i]);
        if (index_of_[c] >= 0) {
            throw ParamOutOfRange("alphabet has a repeated symbol");
        }
        index_of_[c] = static_cast<std::int16_t>(i);
    }
    if (!contains('0') || !contains('1')) {
        throw ParamOutOfRange("alphabet must contain '0' and '1'");
    }
    if (endmarker_ && contains(*endmarker_)) {
        throw ParamOutOfRange("endmarker must not be an alphabet symbol");
    }
}

int Alphabet::index(char c) const {
    int i = index_of_[static_cast<unsigned char>(c)];
    if (i < 0) {
        throw ParamOutOfRange(std::string("symbol '") + c + "' not in alphabet");
    }
    return i;
}

int Alphabet::symbol_bits() const {
    int bits = 0;
    int n = size() - 1;
    while (n > 0) {
        ++bits;
        n >>= 1;
    }
    return bits == 0 ? 1 : bits;
}

double Alphabet::log2_size() const { return std::log2(static_cast<double>(size())); }

} // namespace rbc
