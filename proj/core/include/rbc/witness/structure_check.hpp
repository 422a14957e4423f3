#pragma once

#include <string>
#include <vector>

#include "rbc/witness/stream.hpp"

namespace rbc::wit {

struct StructureReport {
    bool ok = true;
    std::vector<std::string> problems;
    int zones_checked = 0;

    void fail(std::string problem) {
        ok = false;
        problems.push_back(std::move(problem));
    }
};

// Independent validator: re-derives each family's layout from the prefix
// content and the checkpoint metadata and checks flags, reversal relations,
// zone lengths, block structure and index consistency. It shares only the
// brute-force enumerations with the generator, never its emission path.
StructureReport check_structure(WitnessStream& stream, std::int64_t prefix_len);

// Length of the t6 warmup section: all strings shorter than k plus the
// bridge flags 1^k .. 1^(2k-1).
std::int64_t t6_warmup_expected(int k);

} // namespace rbc::wit
