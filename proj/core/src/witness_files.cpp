#include "rbc/witness/files.hpp"

#include <fstream>
#include <sstream>

#include "rbc/common.hpp"

namespace rbc::wit {

void save_sequence(WitnessStream& stream, std::int64_t len, const std::string& path,
                   const std::string& checkpoint_path) {
    auto prefix = stream.prefix(len);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << "alphabet=" << stream.alphabet().symbols() << ";family="
        << family_name(stream.family()) << ";params=" << stream.params().to_json()
        << ";seed=" << stream.seed() << "\n";
    out.write(prefix.data(), static_cast<std::streamsize>(prefix.size()));

    if (!checkpoint_path.empty()) {
        std::ofstream cps(checkpoint_path, std::ios::binary);
        if (!cps) {
            throw IoError("cannot open for writing: " + checkpoint_path);
        }
        cps << "position,kind\n";
        for (const auto& cp : stream.checkpoints()) {
            if (cp.position > len) break;
            cps << cp.position << "," << cp.kind << "\n";
        }
    }
}

LoadedSequence load_sequence(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path);
    }
    LoadedSequence seq;
    if (!std::getline(in, seq.header)) {
        throw IoError("sequence file has no header: " + path);
    }
    std::string alphabet, family, params, seed;
    std::istringstream hs(seq.header);
    std::string field;
    while (std::getline(hs, field, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw ConfigInvalid("header", "malformed field \"" + field + "\"");
        }
        auto key = field.substr(0, eq);
        auto value = field.substr(eq + 1);
        if (key == "alphabet") alphabet = value;
        else if (key == "family") family = value;
        else if (key == "params") params = value;
        else if (key == "seed") seed = value;
        else throw ConfigInvalid("header", "unknown field \"" + key + "\"");
    }
    if (alphabet.empty() || family.empty() || params.empty() || seed.empty()) {
        throw ConfigInvalid("header", "missing fields in \"" + seq.header + "\"");
    }
    seq.alphabet = Alphabet(alphabet);
    seq.family = family_from_name(family);
    seq.params = WitnessParams::from_json(params, seq.alphabet);
    seq.seed = std::stoull(seed);
    std::ostringstream body;
    body << in.rdbuf();
    seq.symbols = body.str();
    return seq;
}

} // namespace rbc::wit
