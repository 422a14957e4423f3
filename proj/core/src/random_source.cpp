#include "rbc/witness/random_source.hpp"

#include <sodium.h>

#include <cstring>

#include "rbc/common.hpp"

namespace rbc::wit {

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
    if (sodium_init() < 0) {
        throw IoError("libsodium failed to initialize");
    }
    std::uint8_t seed_bytes[8];
    for (int i = 0; i < 8; ++i) {
        seed_bytes[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    }
    crypto_generichash(key_.data(), key_.size(), seed_bytes, sizeof seed_bytes, nullptr, 0);
}

RandomSource::Stream RandomSource::stream(std::uint64_t stream_id) const {
    return Stream(key_, stream_id);
}

RandomSource::Stream RandomSource::stream(std::uint32_t purpose, std::uint64_t index) const {
    return Stream(key_, (static_cast<std::uint64_t>(purpose) << 48) ^ index);
}

RandomSource::Stream::Stream(const std::array<std::uint8_t, 32>& key, std::uint64_t stream_id)
    : key_(key) {
    for (int i = 0; i < 8; ++i) {
        nonce_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(stream_id >> (8 * i));
    }
}

void RandomSource::Stream::refill() {
    buffer_.fill(0);
    crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), nonce_.data(),
                                  block_, key_.data());
    block_ += buffer_.size() / 64;
    buffered_ = buffer_.size();
    offset_ = 0;
}

std::uint64_t RandomSource::Stream::next_u64() {
    if (offset_ + 8 > buffered_) {
        refill();
    }
    std::uint64_t v;
    std::memcpy(&v, buffer_.data() + offset_, 8);
    offset_ += 8;
    return v;
}

std::uint64_t RandomSource::Stream::uniform(std::uint64_t bound) {
    if (bound == 0) {
        throw ParamOutOfRange("uniform bound must be positive");
    }
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

char RandomSource::Stream::symbol(const Alphabet& alphabet) {
    return alphabet.symbol(static_cast<int>(uniform(static_cast<std::uint64_t>(alphabet.size()))));
}

std::string RandomSource::Stream::symbols(const Alphabet& alphabet, std::size_t count) {
    std::string s;
    s.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        s.push_back(symbol(alphabet));
    }
    return s;
}

} // namespace rbc::wit
