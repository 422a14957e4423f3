#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbc {

// Append-only bit sequence, MSB-first within codewords, packed MSB-first
// into bytes on serialization.
class BitVec {
public:
    void push_bit(bool b);
    // Appends `width` bits holding `value`, most significant bit first.
    void push_uint(std::uint64_t value, int width);

    bool bit(std::int64_t i) const;
    std::int64_t size() const { return static_cast<std::int64_t>(nbits_); }

    std::vector<std::uint8_t> to_bytes() const;
    static BitVec from_bytes(const std::vector<std::uint8_t>& bytes, std::int64_t nbits);

    std::string to_string01() const;

    bool operator==(const BitVec&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

// Sequential reader over a BitVec; throws nothing itself, callers check
// remaining().
class BitReader {
public:
    explicit BitReader(const BitVec& bits) : bits_(&bits) {}

    std::int64_t position() const { return pos_; }
    std::int64_t remaining() const { return bits_->size() - pos_; }

    bool read_bit();
    std::uint64_t read_uint(int width);

private:
    const BitVec* bits_;
    std::int64_t pos_ = 0;
};

// ceil(log2 n) for n >= 1; width needed to distinguish n values.
int ceil_log2(std::uint64_t n);

// floor(log2 n) for n >= 1.
int floor_log2(std::uint64_t n);

} // namespace rbc
