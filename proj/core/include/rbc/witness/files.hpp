#pragma once

#include <string>

#include "rbc/witness/stream.hpp"

namespace rbc::wit {

// Sequence file: one header line
//   alphabet=<symbols>;family=<id>;params=<json>;seed=<u64>
// then the raw symbol bytes. The checkpoint sidecar is a CSV of
// position,kind rows.
void save_sequence(WitnessStream& stream, std::int64_t len, const std::string& path,
                   const std::string& checkpoint_path);

struct LoadedSequence {
    Alphabet alphabet;
    Family family;
    WitnessParams params;
    std::uint64_t seed = 0;
    std::string symbols;
    std::string header;  // verbatim header line, without the newline
};

LoadedSequence load_sequence(const std::string& path);

} // namespace rbc::wit
