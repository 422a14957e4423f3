#include "rbc/lz78.hpp"

#include <algorithm>
#include <fstream>

#include "rbc/common.hpp"

namespace rbc::lz {

LzDictionary::LzDictionary(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    nodes_.push_back({-1, '\0'});  // root, the empty phrase
}

std::uint64_t LzDictionary::key(std::int32_t node, char symbol) const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(node)) << 9) |
           static_cast<std::uint64_t>(alphabet_.index(symbol));
}

std::int32_t LzDictionary::child(std::int32_t node, char symbol) const {
    auto it = children_.find(key(node, symbol));
    return it == children_.end() ? -1 : it->second;
}

std::int32_t LzDictionary::insert(std::int32_t node, char symbol) {
    auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({node, symbol});
    children_.emplace(key(node, symbol), id);
    return id;
}

std::string LzDictionary::expand(std::int32_t id) const {
    std::string s;
    for (std::int32_t n = id; n > 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
        s.push_back(nodes_[static_cast<std::size_t>(n)].extension);
    }
    std::reverse(s.begin(), s.end());
    return s;
}

LzParse parse(std::string_view x, LzDictionary& dict) {
    LzParse result;
    std::int32_t node = 0;
    for (char c : x) {
        std::int32_t next = dict.child(node, c);
        if (next >= 0) {
            node = next;
            continue;
        }
        result.phrases.push_back({node, c});
        dict.insert(node, c);
        node = 0;
    }
    if (node != 0) {
        result.phrases.push_back({node, std::nullopt});
        result.partial_final = true;
    }
    return result;
}

std::int64_t phrase_count(std::string_view x, const Alphabet& alphabet) {
    LzDictionary dict(alphabet);
    return parse(x, dict).phrase_count();
}

LzEncoder::LzEncoder(Alphabet alphabet) : dict_(std::move(alphabet)) {}

int LzEncoder::pointer_width() const {
    return ceil_log2(static_cast<std::uint64_t>(dict_.phrase_count()) + 1);
}

void LzEncoder::feed(char symbol) {
    std::int32_t next = dict_.child(node_, symbol);
    ++consumed_;
    if (next >= 0) {
        node_ = next;
        return;
    }
    int pw = pointer_width();
    bits_.push_uint(static_cast<std::uint64_t>(node_), pw);
    bits_.push_uint(static_cast<std::uint64_t>(dict_.alphabet().index(symbol)),
                    dict_.alphabet().symbol_bits());
    completed_bits_ += pw + dict_.alphabet().symbol_bits();
    dict_.insert(node_, symbol);
    node_ = 0;
}

void LzEncoder::feed(std::string_view symbols) {
    for (char c : symbols) feed(c);
}

std::int64_t LzEncoder::bits_if_ended() const {
    return node_ == 0 ? completed_bits_ : completed_bits_ + pointer_width();
}

LzBitstream LzEncoder::finish() {
    if (finished_) {
        throw ParamOutOfRange("LzEncoder::finish called twice");
    }
    finished_ = true;
    LzBitstream stream;
    stream.alphabet_size = dict_.alphabet().size();
    if (node_ != 0) {
        bits_.push_uint(static_cast<std::uint64_t>(node_), pointer_width());
        stream.partial_final = true;
    }
    stream.bits = std::move(bits_);
    stream.bit_len = stream.bits.size();
    return stream;
}

LzBitstream encode(std::string_view x, LzDictionary& dict) {
    return encode_continuation(x, dict);
}

LzBitstream encode_continuation(std::string_view y, LzDictionary& dict) {
    // Widths follow the total phrase count (initial dictionary included),
    // so additivity over a phrase boundary holds by construction.
    LzBitstream stream;
    stream.alphabet_size = dict.alphabet().size();
    const Alphabet& alphabet = dict.alphabet();
    BitVec bits;
    std::int32_t node = 0;
    for (char c : y) {
        std::int32_t next = dict.child(node, c);
        if (next >= 0) {
            node = next;
            continue;
        }
        int pw = ceil_log2(static_cast<std::uint64_t>(dict.phrase_count()) + 1);
        bits.push_uint(static_cast<std::uint64_t>(node), pw);
        bits.push_uint(static_cast<std::uint64_t>(alphabet.index(c)), alphabet.symbol_bits());
        dict.insert(node, c);
        node = 0;
    }
    if (node != 0) {
        bits.push_uint(static_cast<std::uint64_t>(node),
                       ceil_log2(static_cast<std::uint64_t>(dict.phrase_count()) + 1));
        stream.partial_final = true;
    }
    stream.bits = std::move(bits);
    stream.bit_len = stream.bits.size();
    return stream;
}

std::string decode(const LzBitstream& stream, int alphabet_size, LzDictionary& dict) {
    if (alphabet_size != dict.alphabet().size()) {
        throw MalformedStream("alphabet size does not match the dictionary", 0);
    }
    std::string out;
    BitReader reader(stream.bits);
    int symbol_bits = dict.alphabet().symbol_bits();
    while (reader.remaining() > 0) {
        std::uint64_t addressable = static_cast<std::uint64_t>(dict.phrase_count()) + 1;
        int pw = ceil_log2(addressable);
        if (reader.remaining() < pw) {
            throw MalformedStream("truncated mid-codeword (pointer)", reader.position());
        }
        std::uint64_t pointer = reader.read_uint(pw);
        if (pointer >= addressable) {
            throw MalformedStream("pointer " + std::to_string(pointer) +
                                      " out of range (dictionary holds " +
                                      std::to_string(addressable) + " entries)",
                                  reader.position());
        }
        if (reader.remaining() == 0) {
            // pointer-only record: only legal as the partial final phrase
            if (!stream.partial_final) {
                throw MalformedStream("truncated mid-codeword (extension)", reader.position());
            }
            if (pointer == 0) {
                throw MalformedStream("partial final phrase cannot be empty", reader.position());
            }
            out += dict.expand(static_cast<std::int32_t>(pointer));
            return out;
        }
        if (reader.remaining() < symbol_bits) {
            throw MalformedStream("truncated mid-codeword (extension)", reader.position());
        }
        std::uint64_t sym = reader.read_uint(symbol_bits);
        if (sym >= static_cast<std::uint64_t>(dict.alphabet().size())) {
            throw MalformedStream("extension symbol index out of range", reader.position());
        }
        char extension = dict.alphabet().symbol(static_cast<int>(sym));
        out += dict.expand(static_cast<std::int32_t>(pointer));
        out.push_back(extension);
        dict.insert(static_cast<std::int32_t>(pointer), extension);
    }
    if (stream.partial_final) {
        throw MalformedStream("stream flagged as partial but ends on a phrase boundary",
                              reader.position());
    }
    return out;
}

std::int64_t output_len_bits(std::string_view x, const Alphabet& alphabet) {
    LzEncoder enc(alphabet);
    enc.feed(x);
    return enc.bits_if_ended();
}

double lz_ratio(std::string_view x, const Alphabet& alphabet) {
    if (x.empty()) return 0.0;
    return static_cast<double>(output_len_bits(x, alphabet)) /
           (static_cast<double>(x.size()) * alphabet.log2_size());
}

void save_bitstream(const LzBitstream& stream, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    auto payload = stream.bits.to_bytes();
    int pad = static_cast<int>((8 - stream.bits.size() % 8) % 8);
    std::uint8_t flags = static_cast<std::uint8_t>((stream.partial_final ? 1 : 0) | (pad << 1));
    std::uint8_t header[8] = {'L', 'Z', '7', '8',
                              static_cast<std::uint8_t>(stream.alphabet_size - 1), flags, 0, 0};
    out.write(reinterpret_cast<const char*>(header), 8);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
}

LzBitstream load_bitstream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path);
    }
    std::uint8_t header[8];
    if (!in.read(reinterpret_cast<char*>(header), 8)) {
        throw MalformedStream("file shorter than the 8-byte header", 0);
    }
    if (header[0] != 'L' || header[1] != 'Z' || header[2] != '7' || header[3] != '8') {
        throw MalformedStream("bad magic", 0);
    }
    LzBitstream stream;
    stream.alphabet_size = header[4] + 1;
    stream.partial_final = (header[5] & 1) != 0;
    int pad = (header[5] >> 1) & 7;
    std::vector<std::uint8_t> payload((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
    std::int64_t nbits = static_cast<std::int64_t>(payload.size()) * 8 - pad;
    if (nbits < 0) {
        throw MalformedStream("padding exceeds payload", 0);
    }
    stream.bits = BitVec::from_bytes(payload, nbits);
    stream.bit_len = nbits;
    return stream;
}

} // namespace rbc::lz
