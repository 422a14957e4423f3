#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "rbc/common.hpp"

namespace rbc {

// Ordered finite input/output alphabet. Symbols are single bytes; the order
// of `symbols()` is the total order used everywhere (enumeration, encoding
// widths, uniform draws). An optional endmarker lives outside the alphabet.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string symbols, std::optional<char> endmarker = std::nullopt);

    static Alphabet binary() { return Alphabet("01"); }

    const std::string& symbols() const { return symbols_; }
    int size() const { return static_cast<int>(symbols_.size()); }
    char symbol(int index) const { return symbols_[static_cast<std::size_t>(index)]; }

    bool contains(char c) const { return index_of_[static_cast<unsigned char>(c)] >= 0; }
    int index(char c) const;

    std::optional<char> endmarker() const { return endmarker_; }
    bool is_endmarker(char c) const { return endmarker_ && *endmarker_ == c; }

    // ceil(log2 |Sigma|): bits needed for one symbol in fixed-width coding.
    int symbol_bits() const;
    double log2_size() const;

    bool operator==(const Alphabet& other) const {
        return symbols_ == other.symbols_ && endmarker_ == other.endmarker_;
    }

private:
    std::string symbols_;
    std::optional<char> endmarker_;
    std::array<std::int16_t, 256> index_of_{};
};

} // namespace rbc
