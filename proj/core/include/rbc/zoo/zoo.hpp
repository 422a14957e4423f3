#pragma once

#include <utility>

#include "rbc/pda/spec.hpp"

namespace rbc::zoo {

// Parameters of the generated pushdown compressors. `compress_period` is
// the number of verified symbols per emitted token on a reversed zone (A
// for the t4 pair, v' for the t6 pair).
struct T4Params {
    int k = 8;
    int compress_period = 32;  // A
    // Counting-prefix length b. -1 selects the shortest prefix covering the
    // leading zones whose length the period does not divide; 0 disables it.
    int counting_prefix = -1;
    Alphabet alphabet = Alphabet::binary();
};

// Compressor: echoes forward zones and flags, verifies each reversed zone
// against the stack emitting one '0' per period, and flags mismatches with
// 1^i 0 x. Inverter: procedural, consumes the compressor's output plus an
// endmarked final-state trailer.
std::pair<pda::TransducerSpec, pda::TransducerSpec> build_t4_pair(const T4Params& params);

// Effective counting-prefix length for the given parameters.
std::int64_t t4_counting_prefix(const T4Params& params);

struct T5Params {
    int t_half = 2;    // alphabet has 2 * t_half symbols
    int v_prime = 2;   // output period on return zones
};

// Visibly pushdown compressor: call symbols (first half) are echoed and
// pushed, return symbols are popped and verified against the shifted stack
// symbol, emitting one '0' per period. No lambda-rules.
pda::TransducerSpec build_t5_visibly(const T5Params& params);

Alphabet t5_alphabet(int t_half);

struct T6Params {
    int k = 4;
    int v = 8;
    int v_prime = 8;
    bool include_warmup = true;
    Alphabet alphabet = Alphabet::binary();
};

std::pair<pda::TransducerSpec, pda::TransducerSpec> build_t6_pair(const T6Params& params);

// Warmup length the t6 compressor counts through before the first heavy
// zone: all strings shorter than k plus the bridge flags.
std::int64_t t6_warmup_length(int k);

// Expands a procedural spec into a tabulated one by closing over reachable
// states; throws when more than `max_states` states are discovered.
pda::TransducerSpec tabulate(const pda::TransducerSpec& spec, std::size_t max_states);

} // namespace rbc::zoo
