#include "rbc/witness/families.hpp"

#include "rbc/bits.hpp"
#include "rbc/common.hpp"

namespace rbc::wit {
namespace {

// Zone n: n^2 fresh random blocks of length n, then 2^n records of an index
// (2*ceil(log2 n) symbols, value i_j - 1 in binary) followed by a verbatim
// copy of block i_j. Zones run n_start..n_end.
class T7Generator : public ZoneGenerator {
public:
    T7Generator(const WitnessParams& params, std::uint64_t seed)
        : params_(params), source_(seed) {
        if (params_.alphabet.size() != 2) {
            throw ParamOutOfRange("t7 needs the binary alphabet");
        }
        if (params_.n_start < 2 || params_.n_end > 24 || params_.n_start > params_.n_end) {
            throw ParamOutOfRange("t7 needs 2 <= nstart <= nend <= 24");
        }
    }

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        int n = params_.n_start + zones_done_;
        if (n > params_.n_end) {
            return false;
        }
        ++zones_done_;
        auto pos = [&] { return static_cast<std::int64_t>(buffer.size()); };
        auto blocks_rng = source_.stream(7, static_cast<std::uint64_t>(n));
        auto index_rng = source_.stream(0x71, static_cast<std::uint64_t>(n));
        auto count = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
        std::vector<std::string> blocks;
        blocks.reserve(count);
        checkpoints.push_back({pos(), "zone_start n=" + std::to_string(n)});
        for (std::uint64_t i = 0; i < count; ++i) {
            blocks.push_back(blocks_rng.symbols(params_.alphabet, static_cast<std::size_t>(n)));
            buffer += blocks.back();
        }
        checkpoints.push_back({pos(), "repeats_start n=" + std::to_string(n)});
        int index_width = 2 * ceil_log2(static_cast<std::uint64_t>(n));
        std::uint64_t repeats = 1ull << n;
        for (std::uint64_t r = 0; r < repeats; ++r) {
            std::uint64_t idx = index_rng.uniform(count);
            for (int b = index_width - 1; b >= 0; --b) {
                buffer.push_back((idx >> b) & 1u ? '1' : '0');
            }
            buffer += blocks[idx];
        }
        return true;
    }

private:
    WitnessParams params_;
    RandomSource source_;
    int zones_done_ = 0;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t7_generator(const WitnessParams& params,
                                                 std::uint64_t seed) {
    return std::make_unique<T7Generator>(params, seed);
}

} // namespace rbc::wit
