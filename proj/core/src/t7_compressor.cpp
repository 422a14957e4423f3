#include "rbc/plog/compressors.hpp"

#include "rbc/bits.hpp"
#include "rbc/common.hpp"

namespace rbc::plog {

namespace {

void append_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>(v >> (8 * i)));
    }
}

std::string dbl(char c) { return {c, c}; }

int t7_index_width(int n) { return 2 * ceil_log2(static_cast<std::uint64_t>(n)); }

class T7Compressor : public OnlineCompressor {
public:
    explicit T7Compressor(const T7CompressorParams& params) : params_(params) {
        if (params_.n_start < 2 || params_.n_end > 24 || params_.n_start > params_.n_end) {
            throw ParamOutOfRange("t7 compressor needs 2 <= nstart <= nend <= 24");
        }
    }

    void init(std::int64_t n) override {
        if (phase_ != Phase::Unborn) {
            throw RunError(RunError::Kind::ProtocolViolation, "init called twice");
        }
        n_ = n;
        enter_zone(params_.n_start);
    }

    std::string feed(char symbol) override {
        if (phase_ == Phase::Unborn || phase_ == Phase::Done || pos_ >= n_) {
            throw RunError(RunError::Kind::ProtocolViolation, "feed outside the declared length",
                           pos_);
        }
        ++pos_;
        std::string out;
        if (pos_ == 1) {
            out += dbin(static_cast<std::uint64_t>(n_));
            out += "10";
        }
        switch (phase_) {
            case Phase::Fresh:
                out += dbl(symbol);
                stored_.push_back(symbol);
                if (static_cast<std::int64_t>(stored_.size()) ==
                    static_cast<std::int64_t>(zone_n_) * zone_n_ * zone_n_) {
                    phase_ = Phase::RepIndex;
                    index_acc_ = 0;
                    index_got_ = 0;
                }
                break;
            case Phase::RepIndex:
                out += dbl(symbol);
                index_acc_ = (index_acc_ << 1) | (symbol == '1' ? 1u : 0u);
                if (++index_got_ == t7_index_width(zone_n_)) {
                    auto count = static_cast<std::uint64_t>(zone_n_) *
                                 static_cast<std::uint64_t>(zone_n_);
                    if (index_acc_ >= count) {
                        out += "01";
                        stored_.clear();
                        phase_ = Phase::Error;
                    } else {
                        phase_ = Phase::RepBlock;
                        block_off_ = 0;
                    }
                }
                break;
            case Phase::RepBlock: {
                char expected =
                    stored_[static_cast<std::size_t>(index_acc_) *
                                static_cast<std::size_t>(zone_n_) +
                            static_cast<std::size_t>(block_off_)];
                if (symbol != expected) {
                    out += "01";
                    for (int i = 0; i < block_off_; ++i) {
                        out += dbl(stored_[static_cast<std::size_t>(index_acc_) *
                                               static_cast<std::size_t>(zone_n_) +
                                           static_cast<std::size_t>(i)]);
                    }
                    out += dbl(symbol);
                    stored_.clear();
                    phase_ = Phase::Error;
                    break;
                }
                if (++block_off_ == zone_n_) {
                    if (--rep_left_ == 0) {
                        advance_zone();
                    } else {
                        phase_ = Phase::RepIndex;
                        index_acc_ = 0;
                        index_got_ = 0;
                    }
                }
                break;
            }
            case Phase::Error:
            case Phase::Tail:
                out += dbl(symbol);
                break;
            case Phase::Unborn:
            case Phase::Done:
                break;
        }
        return out;
    }

    std::string finalize() override {
        if (phase_ == Phase::Unborn || pos_ != n_) {
            throw RunError(RunError::Kind::ProtocolViolation,
                           "finalize before all symbols were fed", pos_);
        }
        std::string out;
        if (pos_ == 0) {
            out += dbin(static_cast<std::uint64_t>(n_));
            out += "10";
        }
        phase_ = Phase::Done;
        return out;
    }

    void snapshot(std::string& out) const override {
        append_u64(out, static_cast<std::uint64_t>(n_));
        append_u64(out, static_cast<std::uint64_t>(pos_));
        out.push_back(static_cast<char>(phase_));
        out.push_back(static_cast<char>(zone_n_));
        append_u64(out, rep_left_);
        append_u64(out, index_acc_);
        out.push_back(static_cast<char>(index_got_));
        out.push_back(static_cast<char>(block_off_));
        // stored blocks, packed 8 symbols per byte
        std::uint8_t acc = 0;
        int fill = 0;
        for (char c : stored_) {
            acc = static_cast<std::uint8_t>((acc << 1) | (c == '1' ? 1 : 0));
            if (++fill == 8) {
                out.push_back(static_cast<char>(acc));
                acc = 0;
                fill = 0;
            }
        }
        if (fill > 0) {
            out.push_back(static_cast<char>(acc << (8 - fill)));
        }
    }

    std::unique_ptr<OnlineCompressor> fresh() const override {
        return std::make_unique<T7Compressor>(params_);
    }

private:
    enum class Phase : char { Unborn, Fresh, RepIndex, RepBlock, Error, Tail, Done };

    void enter_zone(int n) {
        if (n > params_.n_end) {
            stored_.clear();
            phase_ = Phase::Tail;
            return;
        }
        zone_n_ = n;
        stored_.clear();
        stored_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
                        static_cast<std::size_t>(n));
        rep_left_ = 1ull << n;
        phase_ = Phase::Fresh;
    }

    void advance_zone() { enter_zone(zone_n_ + 1); }

    T7CompressorParams params_;
    Phase phase_ = Phase::Unborn;
    std::int64_t n_ = 0;
    std::int64_t pos_ = 0;
    int zone_n_ = 0;
    std::string stored_;
    std::uint64_t rep_left_ = 0;
    std::uint64_t index_acc_ = 0;
    int index_got_ = 0;
    int block_off_ = 0;
};

// Reads one doubled pair; returns the bit character.
char read_pair(std::string_view out, std::size_t& pos) {
    if (pos + 2 > out.size()) {
        throw MalformedStream("truncated doubled pair", static_cast<std::int64_t>(pos));
    }
    char a = out[pos], b = out[pos + 1];
    if (a != b) {
        throw MalformedStream("undoubled pair", static_cast<std::int64_t>(pos));
    }
    pos += 2;
    return a;
}

} // namespace

std::unique_ptr<OnlineCompressor> make_t7_compressor(const T7CompressorParams& params) {
    return std::make_unique<T7Compressor>(params);
}

std::string invert_t7(std::string_view output, std::int64_t n,
                      const T7CompressorParams& params) {
    std::size_t pos = 0;
    // header: dbin(n) then the comma "10"
    std::uint64_t header_n = 0;
    for (;;) {
        if (pos + 2 > output.size()) {
            throw MalformedStream("missing comma in header", static_cast<std::int64_t>(pos));
        }
        if (output[pos] == '1' && output[pos + 1] == '0') {
            pos += 2;
            break;
        }
        header_n = (header_n << 1) | (read_pair(output, pos) == '1' ? 1u : 0u);
    }
    if (header_n != static_cast<std::uint64_t>(n)) {
        throw MalformedStream("header length disagrees with the declared length",
                              static_cast<std::int64_t>(pos));
    }

    std::string w;
    auto echo_rest = [&] {
        while (static_cast<std::int64_t>(w.size()) < n) {
            w.push_back(read_pair(output, pos));
        }
    };

    int zone = params.n_start;
    while (static_cast<std::int64_t>(w.size()) < n) {
        if (zone > params.n_end) {
            echo_rest();
            break;
        }
        // fresh blocks
        std::vector<std::string> blocks;
        auto count =
            static_cast<std::uint64_t>(zone) * static_cast<std::uint64_t>(zone);
        bool input_ended = false;
        for (std::uint64_t b = 0; b < count && !input_ended; ++b) {
            std::string block;
            for (int i = 0; i < zone; ++i) {
                if (static_cast<std::int64_t>(w.size()) == n) {
                    input_ended = true;
                    break;
                }
                char c = read_pair(output, pos);
                block.push_back(c);
                w.push_back(c);
            }
            blocks.push_back(block);
        }
        if (input_ended) break;
        // indexed repeats
        int width = t7_index_width(zone);
        for (std::uint64_t r = 0; r < (1ull << zone); ++r) {
            if (static_cast<std::int64_t>(w.size()) == n) break;
            std::uint64_t idx = 0;
            bool partial = false;
            for (int i = 0; i < width; ++i) {
                if (static_cast<std::int64_t>(w.size()) == n) {
                    partial = true;
                    break;
                }
                char c = read_pair(output, pos);
                idx = (idx << 1) | (c == '1' ? 1u : 0u);
                w.push_back(c);
            }
            if (partial) break;
            // error flag right after the index?
            if (pos + 2 <= output.size() && output[pos] == '0' && output[pos + 1] == '1') {
                pos += 2;
                echo_rest();
                if (pos != output.size()) {
                    throw MalformedStream("trailing bits after the echoed remainder",
                                          static_cast<std::int64_t>(pos));
                }
                return w;
            }
            // matched copy: reconstructed from the stored block
            if (idx >= count) {
                throw MalformedStream("index out of range without an error flag",
                                      static_cast<std::int64_t>(pos));
            }
            const std::string& block = blocks[static_cast<std::size_t>(idx)];
            for (int i = 0; i < zone && static_cast<std::int64_t>(w.size()) < n; ++i) {
                w.push_back(block[static_cast<std::size_t>(i)]);
            }
        }
        ++zone;
    }
    if (pos != output.size()) {
        throw MalformedStream("trailing bits after the reconstructed input",
                              static_cast<std::int64_t>(pos));
    }
    return w;
}

} // namespace rbc::plog
