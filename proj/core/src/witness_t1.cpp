#include "rbc/witness/families.hpp"

#include <cmath>

#include "rbc/common.hpp"

namespace rbc::wit {

std::int64_t t1_zone_length(int n, const Alphabet& alphabet) {
    double sigma = static_cast<double>(alphabet.size());
    double sum = 0;
    for (int k = 1; k <= n; ++k) {
        double strings = std::pow(sigma, static_cast<double>(k));
        double positions = std::pow(static_cast<double>(n), 2.0 * k / n + 1.0);
        sum += static_cast<double>(k) * std::floor(std::min(strings, positions));
    }
    auto l = static_cast<std::int64_t>(std::llround(sum / n));
    if (l < 1) l = 1;
    return static_cast<std::int64_t>(n) * l;
}

namespace {

// S = S_1 S_2 ...; zone n draws n^2 random blocks of length n and emits
// l = |S_n| / n of them at uniformly random indices (repeats allowed).
class T1Generator : public ZoneGenerator {
public:
    T1Generator(const WitnessParams& params, std::uint64_t seed)
        : params_(params), source_(seed) {}

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        ++n_;
        auto blocks_rng = source_.stream(1, static_cast<std::uint64_t>(n_));
        auto index_rng = source_.stream(0x11, static_cast<std::uint64_t>(n_));
        auto count = static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(n_);
        std::vector<std::string> blocks;
        blocks.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            blocks.push_back(blocks_rng.symbols(params_.alphabet, static_cast<std::size_t>(n_)));
        }
        std::int64_t zone_len = t1_zone_length(n_, params_.alphabet);
        checkpoints.push_back({static_cast<std::int64_t>(buffer.size()),
                               "zone_start n=" + std::to_string(n_)});
        for (std::int64_t emitted = 0; emitted < zone_len; emitted += n_) {
            buffer += blocks[static_cast<std::size_t>(index_rng.uniform(count))];
        }
        return true;
    }

private:
    WitnessParams params_;
    RandomSource source_;
    int n_ = 0;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t1_generator(const WitnessParams& params,
                                                 std::uint64_t seed) {
    return std::make_unique<T1Generator>(params, seed);
}

} // namespace rbc::wit
