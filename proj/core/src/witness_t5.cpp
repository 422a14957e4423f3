#include "rbc/witness/families.hpp"

#include "rbc/common.hpp"

namespace rbc::wit {
namespace {

// S = y_1 Y_1^-1 y_2 Y_2^-1 ... over an alphabet of 2t symbols: y_n uses
// the first t symbols, Y_n is y_n with every symbol shifted by +t. Zone
// lengths are v' times a power-of-two growth factor so the paired machine's
// output period divides them.
class T5Generator : public ZoneGenerator {
public:
    T5Generator(const WitnessParams& params, std::uint64_t seed)
        : params_(params), source_(seed) {
        if (params_.alphabet.size() % 2 != 0) {
            throw ParamOutOfRange("t5 needs an even alphabet size");
        }
        if (params_.v_prime < 2 || params_.v_prime > 64) {
            throw ParamOutOfRange("t5 needs 2 <= vprime <= 64");
        }
    }

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        ++n_;
        auto pos = [&] { return static_cast<std::int64_t>(buffer.size()); };
        int t = params_.alphabet.size() / 2;
        std::int64_t len = static_cast<std::int64_t>(params_.v_prime) * t4_block_factor(n_, 2);
        auto rng = source_.stream(5, static_cast<std::uint64_t>(n_));
        std::string y(static_cast<std::size_t>(len), '\0');
        for (auto& c : y) {
            c = params_.alphabet.symbol(
                static_cast<int>(rng.uniform(static_cast<std::uint64_t>(t))));
        }

        checkpoints.push_back({pos(), "zone_start n=" + std::to_string(n_)});
        buffer += y;
        checkpoints.push_back({pos(), "return_start"});
        for (auto it = y.rbegin(); it != y.rend(); ++it) {
            buffer.push_back(params_.alphabet.symbol(params_.alphabet.index(*it) + t));
        }
        return true;
    }

private:
    WitnessParams params_;
    RandomSource source_;
    std::int64_t n_ = 0;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t5_generator(const WitnessParams& params,
                                                 std::uint64_t seed) {
    return std::make_unique<T5Generator>(params, seed);
}

} // namespace rbc::wit
