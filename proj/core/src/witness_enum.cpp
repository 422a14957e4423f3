#include "rbc/witness/families.hpp"

#include "rbc/common.hpp"

namespace rbc::wit {

char EnumCursor::symbol(const Alphabet& alphabet) const {
    auto sigma = static_cast<std::uint64_t>(alphabet.size());
    std::uint64_t div = 1;
    for (int i = str_len - 1 - offset; i > 0; --i) {
        div *= sigma;
    }
    return alphabet.symbol(static_cast<int>((index / div) % sigma));
}

void EnumCursor::advance(const Alphabet& alphabet) {
    if (++offset < str_len) {
        return;
    }
    offset = 0;
    auto sigma = static_cast<std::uint64_t>(alphabet.size());
    std::uint64_t class_size = 1;
    for (int i = 0; i < str_len; ++i) {
        class_size *= sigma;
    }
    if (++index >= class_size) {
        index = 0;
        ++str_len;
    }
}

namespace {

class EnumGenerator : public ZoneGenerator {
public:
    explicit EnumGenerator(const Alphabet& alphabet) : alphabet_(alphabet) {}

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        if (cursor_.offset == 0 && cursor_.index == 0) {
            checkpoints.push_back({static_cast<std::int64_t>(buffer.size()),
                                   "class_start len=" + std::to_string(cursor_.str_len)});
        }
        // one batch of whole strings
        std::size_t target = buffer.size() + 4096;
        while (buffer.size() < target) {
            for (int i = 0; i < cursor_.str_len; ++i) {
                buffer.push_back(cursor_.symbol(alphabet_));
                cursor_.advance(alphabet_);
            }
            if (cursor_.index == 0 && cursor_.offset == 0) {
                break;  // finished a length class; next call records the marker
            }
        }
        return true;
    }

private:
    Alphabet alphabet_;
    EnumCursor cursor_;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_enum_generator(const WitnessParams& params) {
    return std::make_unique<EnumGenerator>(params.alphabet);
}

} // namespace rbc::wit
