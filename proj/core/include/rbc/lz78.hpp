#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbc/alphabet.hpp"
#include "rbc/bits.hpp"

namespace rbc::lz {

// Phrase trie. Node ids are phrase ids: the implicit root (empty phrase) is
// id 0, inserted phrases get ids 1..D in insertion order. Prefix-closed by
// construction.
class LzDictionary {
public:
    explicit LzDictionary(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }

    // Number of complete phrases D (root not counted).
    std::int64_t phrase_count() const { return static_cast<std::int64_t>(nodes_.size()) - 1; }

    // Child of `node` along `symbol`, or -1.
    std::int32_t child(std::int32_t node, char symbol) const;

    // Inserts a new phrase extending `node` by `symbol`; returns its id.
    std::int32_t insert(std::int32_t node, char symbol);

    // The phrase string of a node.
    std::string expand(std::int32_t id) const;

private:
    struct Node {
        std::int32_t parent;
        char extension;
    };
    std::uint64_t key(std::int32_t node, char symbol) const;

    Alphabet alphabet_;
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::int32_t> children_;
};

struct LzPhrase {
    std::int32_t back_pointer = 0;          // l(i)
    std::optional<char> extension;          // b_i; empty on a partial final phrase
};

struct LzParse {
    std::vector<LzPhrase> phrases;
    bool partial_final = false;

    std::int64_t phrase_count() const { return static_cast<std::int64_t>(phrases.size()); }
};

// Encoded parse. `bits` holds the concatenated records: per complete phrase
// a pointer of ceil(log2(addressable)) bits followed by a fixed-width
// extension, per partial final phrase the pointer only. The one-bit
// completeness flag terminating the stream is carried out of band
// (`partial_final`; bit 0 of the flags byte in the file format).
struct LzBitstream {
    BitVec bits;
    std::int64_t bit_len = 0;
    bool partial_final = false;
    int alphabet_size = 2;
};

// Greedy longest-match parse of x, growing `dict` in place.
LzParse parse(std::string_view x, LzDictionary& dict);

// Number of phrases of x starting from an empty dictionary (a partial final
// phrase counts as one).
std::int64_t phrase_count(std::string_view x, const Alphabet& alphabet);

LzBitstream encode(std::string_view x, LzDictionary& dict);

// The output on y after x has been read already; `dict` must be the
// dictionary state after parsing x.
LzBitstream encode_continuation(std::string_view y, LzDictionary& dict);

std::string decode(const LzBitstream& stream, int alphabet_size, LzDictionary& dict);

std::int64_t output_len_bits(std::string_view x, const Alphabet& alphabet);

// output_len_bits(x) / (|x| * log2 |Sigma|); 0 for the empty string.
double lz_ratio(std::string_view x, const Alphabet& alphabet);

// Single-pass encoder with checkpoint queries, for ratio measurements.
class LzEncoder {
public:
    explicit LzEncoder(Alphabet alphabet);

    void feed(char symbol);
    void feed(std::string_view symbols);

    // Bits the encoder would have written if the input ended here (pending
    // partial phrase counted as pointer only).
    std::int64_t bits_if_ended() const;

    std::int64_t consumed() const { return consumed_; }
    const LzDictionary& dictionary() const { return dict_; }

    LzBitstream finish();

private:
    int pointer_width() const;

    LzDictionary dict_;
    std::int32_t node_ = 0;
    std::int64_t consumed_ = 0;
    std::int64_t completed_bits_ = 0;
    BitVec bits_;
    bool finished_ = false;
};

// Bitstream file: 8-byte header (magic "LZ78", alphabet size - 1, flags) +
// packed bits MSB-first. Flags: bit 0 = partial final phrase, bits 1-3 =
// count of padding bits in the last payload byte.
void save_bitstream(const LzBitstream& stream, const std::string& path);
LzBitstream load_bitstream(const std::string& path);

} // namespace rbc::lz
