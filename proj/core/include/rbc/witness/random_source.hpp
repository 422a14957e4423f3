#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rbc/alphabet.hpp"

namespace rbc::wit {

// Deterministic cryptographic byte stream: ChaCha20 keyed by a hash of the
// seed, with one independent substream per 64-bit stream id. Same seed and
// id give byte-identical output on every platform; distinct ids are
// independent draws.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    class Stream {
    public:
        std::uint64_t next_u64();
        // Uniform draw from [0, bound), bound >= 1, by rejection sampling.
        std::uint64_t uniform(std::uint64_t bound);
        char symbol(const Alphabet& alphabet);
        std::string symbols(const Alphabet& alphabet, std::size_t count);

    private:
        friend class RandomSource;
        Stream(const std::array<std::uint8_t, 32>& key, std::uint64_t stream_id);
        void refill();

        std::array<std::uint8_t, 32> key_;
        std::array<std::uint8_t, 8> nonce_;
        std::array<std::uint8_t, 4096> buffer_;
        std::size_t buffered_ = 0;
        std::size_t offset_ = 0;
        std::uint64_t block_ = 0;
    };

    Stream stream(std::uint64_t stream_id) const;
    // Convenience: substream addressed by a small purpose tag plus an index.
    Stream stream(std::uint32_t purpose, std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::array<std::uint8_t, 32> key_;
};

} // namespace rbc::wit
