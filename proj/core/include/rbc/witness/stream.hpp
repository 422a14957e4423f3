#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rbc/alphabet.hpp"
#include "rbc/witness/random_source.hpp"

namespace rbc::wit {

enum class Family { T1, T2, T4, T5, T6, Enum, T7 };

std::string family_name(Family family);
Family family_from_name(std::string_view name);

struct WitnessParams {
    Alphabet alphabet = Alphabet::binary();

    int k = 0;          // t4/t6: flag length
    int v = 0;          // t6: group count
    int v_prime = 0;    // t5/t6: compression period of the paired machine
    int c_exp = 7;      // t2: repetition exponent c
    int n_start = 4;    // t7: first zone
    int n_end = 14;     // t7: last zone
    int zone_start = 0; // t6: first heavy zone (0 = the default k)

    // t6: skip zones whose X/Y grouping cannot satisfy the structural
    // constraints the paired pushdown machine needs (0-starting zone heads,
    // no 1^k runs across element boundaries).
    bool machine_safe = false;

    std::string to_json() const;
    static WitnessParams from_json(const std::string& json, const Alphabet& alphabet);
};

struct Checkpoint {
    std::int64_t position;  // 0-based index of the first symbol after the marker
    std::string kind;

    bool operator==(const Checkpoint&) const = default;
};

// Incremental generator: appends whole structural units (zones) to the
// buffer and records checkpoints. Returns false when the family is
// exhausted (only t7 with a bounded zone range ever is).
class ZoneGenerator {
public:
    virtual ~ZoneGenerator() = default;
    virtual bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) = 0;
};

// Lazily generated witness sequence. Deterministic in (family, params,
// seed); prefix-stable: extending never rewrites what was generated.
class WitnessStream {
public:
    WitnessStream(Family family, WitnessParams params, std::uint64_t seed);

    Family family() const { return family_; }
    const WitnessParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }
    const Alphabet& alphabet() const { return params_.alphabet; }

    // Materializes at least `len` symbols (less only if the family is
    // exhausted first).
    void ensure(std::int64_t len);

    std::int64_t generated() const { return static_cast<std::int64_t>(buffer_.size()); }
    char at(std::int64_t pos);
    std::string_view prefix(std::int64_t len);
    char next() { return at(cursor_++); }

    // Checkpoints with position <= generated(), in increasing position.
    const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }

private:
    Family family_;
    WitnessParams params_;
    std::uint64_t seed_;
    std::unique_ptr<ZoneGenerator> generator_;
    std::string buffer_;
    std::vector<Checkpoint> checkpoints_;
    std::int64_t cursor_ = 0;
    bool exhausted_ = false;
};

std::unique_ptr<ZoneGenerator> make_generator(Family family, const WitnessParams& params,
                                              std::uint64_t seed);

// Operation form of the stream constructor: materializes `prefix_len`
// symbols up front.
WitnessStream generate(Family family, const WitnessParams& params, std::uint64_t seed,
                       std::int64_t prefix_len);

} // namespace rbc::wit
