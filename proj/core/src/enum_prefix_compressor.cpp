#include "rbc/plog/compressors.hpp"

#include "rbc/common.hpp"
#include "rbc/witness/families.hpp"

namespace rbc::plog {

namespace {

void append_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>(v >> (8 * i)));
    }
}

std::string symbol_bits(char c, const Alphabet& alphabet) {
    if (alphabet.size() == 2) {
        return std::string(1, c);
    }
    std::string out;
    int idx = alphabet.index(c);
    for (int b = alphabet.symbol_bits() - 1; b >= 0; --b) {
        out.push_back((idx >> b) & 1 ? '1' : '0');
    }
    return out;
}

class EnumPrefixCompressor : public OnlineCompressor {
public:
    explicit EnumPrefixCompressor(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    void init(std::int64_t n) override {
        if (phase_ != 0) {
            throw RunError(RunError::Kind::ProtocolViolation, "init called twice");
        }
        phase_ = 1;
        n_ = n;
    }

    std::string feed(char symbol) override {
        if (phase_ != 1 || pos_ >= n_) {
            throw RunError(RunError::Kind::ProtocolViolation, "feed outside the declared length",
                           pos_);
        }
        ++pos_;
        if (!matching_) {
            return symbol_bits(symbol, alphabet_);
        }
        if (symbol == cursor_.symbol(alphabet_)) {
            cursor_.advance(alphabet_);
            ++matched_;
            return {};
        }
        matching_ = false;
        return dbin(matched_) + "01" + symbol_bits(symbol, alphabet_);
    }

    std::string finalize() override {
        if (phase_ != 1 || pos_ != n_) {
            throw RunError(RunError::Kind::ProtocolViolation,
                           "finalize before all symbols were fed", pos_);
        }
        phase_ = 2;
        return matching_ ? dbin(matched_) + "01" : std::string{};
    }

    void snapshot(std::string& out) const override {
        append_u64(out, static_cast<std::uint64_t>(n_));
        append_u64(out, static_cast<std::uint64_t>(pos_));
        out.push_back(matching_ ? 1 : 0);
        if (matching_) {
            append_u64(out, matched_);
            append_u64(out, static_cast<std::uint64_t>(cursor_.str_len));
            append_u64(out, cursor_.index);
            append_u64(out, static_cast<std::uint64_t>(cursor_.offset));
        }
    }

    std::unique_ptr<OnlineCompressor> fresh() const override {
        return std::make_unique<EnumPrefixCompressor>(alphabet_);
    }

private:
    Alphabet alphabet_;
    int phase_ = 0;
    std::int64_t n_ = 0;
    std::int64_t pos_ = 0;
    bool matching_ = true;
    std::uint64_t matched_ = 0;
    wit::EnumCursor cursor_;
};

} // namespace

std::unique_ptr<OnlineCompressor> make_enum_prefix(const Alphabet& alphabet) {
    return std::make_unique<EnumPrefixCompressor>(alphabet);
}

std::string invert_enum_prefix(std::string_view output, std::int64_t n,
                               const Alphabet& alphabet) {
    // dbin(m) "01" [rest]; the doubled section ends at the first "01" pair.
    std::uint64_t m = 0;
    std::size_t pos = 0;
    for (;; pos += 2) {
        if (pos + 2 > output.size()) {
            throw MalformedStream("missing separator in enum-prefix output",
                                  static_cast<std::int64_t>(pos));
        }
        char a = output[pos], b = output[pos + 1];
        if (a == '0' && b == '1') {
            pos += 2;
            break;
        }
        if (a != b) {
            throw MalformedStream("undoubled bit before the separator",
                                  static_cast<std::int64_t>(pos));
        }
        m = (m << 1) | (a == '1' ? 1u : 0u);
    }

    std::string w;
    wit::EnumCursor cursor;
    for (std::uint64_t i = 0; i < m; ++i) {
        w.push_back(cursor.symbol(alphabet));
        cursor.advance(alphabet);
    }
    int sym_bits = alphabet.size() == 2 ? 1 : alphabet.symbol_bits();
    while (static_cast<std::int64_t>(w.size()) < n) {
        if (pos + static_cast<std::size_t>(sym_bits) > output.size()) {
            throw MalformedStream("output too short for the declared length",
                                  static_cast<std::int64_t>(pos));
        }
        if (alphabet.size() == 2) {
            w.push_back(output[pos]);
            pos += 1;
        } else {
            int idx = 0;
            for (int b = 0; b < sym_bits; ++b) {
                idx = (idx << 1) | (output[pos + static_cast<std::size_t>(b)] == '1' ? 1 : 0);
            }
            w.push_back(alphabet.symbol(idx));
            pos += static_cast<std::size_t>(sym_bits);
        }
    }
    if (pos != output.size()) {
        throw MalformedStream("trailing bits after the reconstructed input",
                              static_cast<std::int64_t>(pos));
    }
    return w;
}

} // namespace rbc::plog
