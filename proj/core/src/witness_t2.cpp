#include "rbc/witness/families.hpp"

#include "rbc/common.hpp"

namespace rbc::wit {
namespace {

// S = R_1 R_2^(2^c) R_3^(3^c) ... ; zone n contributes n^c copies of the
// random block R_n (|R_n| = n). Copies are emitted in bounded batches.
class T2Generator : public ZoneGenerator {
public:
    T2Generator(const WitnessParams& params, std::uint64_t seed)
        : params_(params), source_(seed) {
        if (params_.c_exp < 1 || params_.c_exp > 16) {
            throw ParamOutOfRange("t2 needs 1 <= c <= 16");
        }
    }

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        if (copies_left_ == 0) {
            ++n_;
            auto stream = source_.stream(2, static_cast<std::uint64_t>(n_));
            block_ = stream.symbols(params_.alphabet, static_cast<std::size_t>(n_));
            copies_left_ = 1;
            for (int i = 0; i < params_.c_exp; ++i) {
                copies_left_ *= n_;
            }
            checkpoints.push_back({static_cast<std::int64_t>(buffer.size()),
                                   "zone_start n=" + std::to_string(n_)});
        }
        std::int64_t batch = std::max<std::int64_t>(1, 65536 / n_);
        batch = std::min(batch, copies_left_);
        for (std::int64_t i = 0; i < batch; ++i) {
            buffer += block_;
        }
        copies_left_ -= batch;
        return true;
    }

private:
    WitnessParams params_;
    RandomSource source_;
    std::int64_t n_ = 0;
    std::string block_;
    std::int64_t copies_left_ = 0;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t2_generator(const WitnessParams& params,
                                                 std::uint64_t seed) {
    return std::make_unique<T2Generator>(params, seed);
}

} // namespace rbc::wit
