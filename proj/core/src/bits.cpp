#include "rbc/bits.hpp"

#include <cassert>

namespace rbc {

void BitVec::push_bit(bool b) {
    if (nbits_ % 8 == 0) {
        bytes_.push_back(0);
    }
    if (b) {
        bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
    }
    ++nbits_;
}

void BitVec::push_uint(std::uint64_t value, int width) {
    assert(width >= 0 && width <= 64);
    for (int i = width - 1; i >= 0; --i) {
        push_bit((value >> i) & 1u);
    }
}

bool BitVec::bit(std::int64_t i) const {
    auto idx = static_cast<std::size_t>(i);
    return (bytes_[idx / 8] >> (7 - idx % 8)) & 1u;
}

std::vector<std::uint8_t> BitVec::to_bytes() const { return bytes_; }

BitVec BitVec::from_bytes(const std::vector<std::uint8_t>& bytes, std::int64_t nbits) {
    BitVec v;
    v.bytes_ = bytes;
    v.nbits_ = static_cast<std::size_t>(nbits);
    v.bytes_.resize((v.nbits_ + 7) / 8);
    return v;
}

std::string BitVec::to_string01() const {
    std::string s;
    s.reserve(nbits_);
    for (std::int64_t i = 0; i < size(); ++i) {
        s.push_back(bit(i) ? '1' : '0');
    }
    return s;
}

bool BitReader::read_bit() { return bits_->bit(pos_++); }

std::uint64_t BitReader::read_uint(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
        v = (v << 1) | (read_bit() ? 1u : 0u);
    }
    return v;
}

int ceil_log2(std::uint64_t n) {
    int bits = 0;
    std::uint64_t cap = 1;
    while (cap < n) {
        cap <<= 1;
        ++bits;
    }
    return bits;
}

int floor_log2(std::uint64_t n) {
    int bits = 0;
    while (n > 1) {
        n >>= 1;
        ++bits;
    }
    return bits;
}

} // namespace rbc
