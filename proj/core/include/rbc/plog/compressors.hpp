#pragma once

#include "rbc/plog/online.hpp"

namespace rbc::plog {

// Compressor for the lexicographic enumeration sequence: emits nothing
// while the input agrees with E(Sigma*), then dbin(m) "01" and the raw
// remaining input. The expected next symbol is computed arithmetically from
// the position; nothing about the sequence is stored.
std::unique_ptr<OnlineCompressor> make_enum_prefix(const Alphabet& alphabet);

// Reference inverter (no space bound): reconstructs w from (output, |w|).
std::string invert_enum_prefix(std::string_view output, std::int64_t n,
                               const Alphabet& alphabet);

struct T7CompressorParams {
    int n_start = 4;
    int n_end = 14;
};

// Compressor for the indexed-repeats family: doubled length header and
// comma "10", fresh blocks stored and echoed doubled, indexed repeats
// replaced by their doubled index with the copy verified against the stored
// block; "01" flags a mismatch, after which the remainder streams doubled.
std::unique_ptr<OnlineCompressor> make_t7_compressor(const T7CompressorParams& params);

std::string invert_t7(std::string_view output, std::int64_t n,
                      const T7CompressorParams& params);

} // namespace rbc::plog
