#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbc/alphabet.hpp"

namespace rbc::plog {

// One-pass online compressor. It learns the total input length in init(n),
// sees each symbol exactly once, and emits output bits ('0'/'1' characters)
// left to right. snapshot() serializes everything retained between feeds;
// its size is the machine's memory footprint.
class OnlineCompressor {
public:
    virtual ~OnlineCompressor() = default;

    virtual void init(std::int64_t n) = 0;
    virtual std::string feed(char symbol) = 0;
    virtual std::string finalize() = 0;
    virtual void snapshot(std::string& out) const = 0;

    // Fresh instance with the same parameters, ready for init().
    virtual std::unique_ptr<OnlineCompressor> fresh() const = 0;
};

using CompressorFactory = std::function<std::unique_ptr<OnlineCompressor>()>;

struct MemoryBound {
    double a = 64;
    double c_exp = 2;

    double bound_bits(std::int64_t n) const;
};

struct MeteredRun {
    std::string output;
    std::int64_t peak_state_bits = 0;
    std::string final_snapshot;
};

// Runs the compressor over w (init, |w| feeds, finalize), enforcing the
// one-pass protocol and metering the snapshot size after every feed.
MeteredRun run_online(OnlineCompressor& comp, std::string_view w, bool meter = true);

struct MemoryVerdict {
    bool ok = true;
    std::int64_t violating_n = -1;
    std::int64_t peak_bits = 0;
    double bound_bits = 0;
};

MemoryVerdict check_memory_bound(const CompressorFactory& make,
                                 const std::vector<std::int64_t>& lengths,
                                 const MemoryBound& bound,
                                 const std::function<std::string(std::int64_t)>& stream_prefix);

struct IlOnlineVerdict {
    bool ok = true;
    std::optional<std::pair<std::string, std::string>> counterexample;
};

// Injectivity of w -> output. The input length is part of the machine's
// input, so the check keys collisions on (|w|, output).
IlOnlineVerdict check_il_online(const CompressorFactory& make, int max_len,
                                const Alphabet& alphabet);

// m written in binary with every bit doubled; dbin(0) is the empty string.
std::string dbin(std::uint64_t m);

} // namespace rbc::plog
