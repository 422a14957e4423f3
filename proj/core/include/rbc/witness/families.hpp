#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rbc/alphabet.hpp"
#include "rbc/witness/random_source.hpp"
#include "rbc/witness/stream.hpp"

namespace rbc::wit {

// --- shared geometry -------------------------------------------------------

// Smallest power of k that is >= n (so n <= t <= nk); exact integer
// arithmetic.
std::int64_t t4_block_factor(std::int64_t n, int k);

// A string of aligned k-blocks, each drawn uniformly from Sigma^k minus the
// all-ones block. k must divide len.
std::string block_no_flag(std::int64_t len, int k, RandomSource::Stream& rng,
                          const Alphabet& alphabet);

// t1: |S_n| = n * l with l = round((1/n) * sum_k k*min(|Sigma|^k,
// n^(2k/n+1))); the sum is evaluated in doubles with floored terms.
std::int64_t t1_zone_length(int n, const Alphabet& alphabet);

// --- the t6 zone construction ---------------------------------------------

// All length-n strings with no 1-run of length >= k, in lexicographic
// order.
std::vector<std::string> t6_strings(int n, int k, const Alphabet& alphabet);

struct T6Zone {
    int n = 0;
    std::vector<std::string> t_n;   // lexicographic
    std::vector<std::string> a_n;   // palindromes, in emitted order
    // v groups of (x, reverse(x)) pairs, in emitted order: X_i zone emits
    // x's left to right, Y_i zone emits the y's right to left.
    std::vector<std::vector<std::pair<std::string, std::string>>> groups;
    // Pairs left out when group sizes are forced onto period boundaries
    // (machine-ready sizing only).
    std::vector<std::pair<std::string, std::string>> dropped;
    // Whether the emitted order satisfies the constraints the paired
    // machine needs: every X_i starts and ends on a 0-boundary, no element
    // boundary forms a 1-run of length >= k (A zone included), and, when a
    // period v' is given, v' divides every zone length n * |group|.
    bool machine_ready = false;
};

// v' = 0 requests the plain layout (spec sizing, no period constraint);
// v' > 0 additionally sizes groups so v' | n * |group| and drops the
// remainder pairs.
T6Zone t6_enumerate(int n, int k, int v, const Alphabet& alphabet, int v_prime = 0);

// Flag lengths: f(k) = 2k, f(n+1) = f(n) + v + 1.
std::int64_t t6_flag_length(int n, int k, int v);

// The s-th symbol (0-based) of the lexicographic enumeration E(Sigma*), and
// an incremental cursor over it.
struct EnumCursor {
    int str_len = 1;          // length class of the current string
    std::uint64_t index = 0;  // rank of the current string inside its class
    int offset = 0;           // position inside the current string

    char symbol(const Alphabet& alphabet) const;
    void advance(const Alphabet& alphabet);
};

} // namespace rbc::wit
