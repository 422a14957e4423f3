#include "rbc/witness/families.hpp"

#include <algorithm>

#include "rbc/common.hpp"

namespace rbc::wit {

std::int64_t t4_block_factor(std::int64_t n, int k) {
    std::int64_t t = 1;
    while (t < n) {
        t *= k;
    }
    return t;
}

std::string block_no_flag(std::int64_t len, int k, RandomSource::Stream& rng,
                          const Alphabet& alphabet) {
    if (k <= 0 || len % k != 0) {
        throw ParamOutOfRange("block_no_flag needs k | len");
    }
    std::string out;
    out.reserve(static_cast<std::size_t>(len));
    std::string block(static_cast<std::size_t>(k), '\0');
    for (std::int64_t b = 0; b < len / k; ++b) {
        do {
            for (int i = 0; i < k; ++i) {
                block[static_cast<std::size_t>(i)] = rng.symbol(alphabet);
            }
        } while (block == std::string(static_cast<std::size_t>(k), '1'));
        out += block;
    }
    return out;
}

namespace {

// S = y_1 1^k y_1^-1 y_2 1^k y_2^-1 ...; |y_n| = k * t_n with t_n the
// smallest power of k at least n; aligned k-blocks of y_n never equal 1^k.
class T4Generator : public ZoneGenerator {
public:
    T4Generator(const WitnessParams& params, std::uint64_t seed)
        : params_(params), source_(seed) {
        if (params_.k < 2 || params_.k > 64) {
            throw ParamOutOfRange("t4 needs 2 <= k <= 64");
        }
    }

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        ++n_;
        auto pos = [&] { return static_cast<std::int64_t>(buffer.size()); };
        int k = params_.k;
        std::int64_t len = static_cast<std::int64_t>(k) * t4_block_factor(n_, k);
        auto rng = source_.stream(4, static_cast<std::uint64_t>(n_));
        std::string y = block_no_flag(len, k, rng, params_.alphabet);

        checkpoints.push_back({pos(), "zone_start n=" + std::to_string(n_)});
        buffer += y;
        checkpoints.push_back({pos(), "flag_start"});
        buffer.append(static_cast<std::size_t>(k), '1');
        checkpoints.push_back({pos(), "yrev_start"});
        buffer.append(y.rbegin(), y.rend());
        return true;
    }

private:
    WitnessParams params_;
    RandomSource source_;
    std::int64_t n_ = 0;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t4_generator(const WitnessParams& params,
                                                 std::uint64_t seed) {
    return std::make_unique<T4Generator>(params, seed);
}

} // namespace rbc::wit
