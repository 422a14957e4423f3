#include "rbc/pda/serialize.hpp"

#include <fstream>
#include <sstream>

#include "rbc/common.hpp"

namespace rbc::pda {

namespace {

char parse_symbol_field(const std::string& field, const char* what) {
    if (field.size() != 1) {
        throw ConfigInvalid(what, "expected a single symbol, got \"" + field + "\"");
    }
    return field[0];
}

} // namespace

std::string print_spec(const TransducerSpec& spec) {
    if (!spec.tabulated()) {
        throw ParamOutOfRange("only tabulated specs have a text form");
    }
    std::ostringstream out;
    out << "pdspec v1\n";
    out << "name " << (spec.name.empty() ? "unnamed" : spec.name) << "\n";
    out << "alphabet " << spec.alphabet.symbols() << "\n";
    out << "endmarker " << (spec.alphabet.endmarker() ? std::string(1, *spec.alphabet.endmarker())
                                                      : std::string("~"))
        << "\n";
    out << "stackalphabet " << spec.stack_alphabet << "\n";
    out << "stackbottom " << spec.stack_bottom << "\n";
    out << "initial " << spec.initial_state << "\n";
    out << "budget " << spec.lambda_budget << "\n";
    out << "delta\n";
    for (const auto& [key, target] : spec.table().delta) {
        out << key.state << ' ' << (key.input == kLambda ? '~' : key.input) << ' '
            << key.stack_top << " -> " << target.state << ' '
            << (target.push.empty() ? "~" : target.push) << "\n";
    }
    out << "nu\n";
    for (const auto& [key, emitted] : spec.table().nu) {
        out << key.state << ' ' << key.input << ' ' << key.stack_top << " -> "
            << (emitted.empty() ? "~" : emitted) << "\n";
    }
    out << "end\n";
    return out.str();
}

TransducerSpec parse_spec(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "pdspec v1") {
        throw ConfigInvalid("header", "expected \"pdspec v1\"");
    }

    TransducerSpec spec;
    spec.rules = TableRules{};
    std::string symbols, endmarker_field;

    auto read_kv = [&](const char* key) {
        if (!std::getline(in, line)) {
            throw ConfigInvalid(key, "unexpected end of spec");
        }
        std::string prefix = std::string(key) + " ";
        if (line.rfind(prefix, 0) != 0) {
            throw ConfigInvalid(key, "expected line starting with \"" + prefix + "\", got \"" +
                                         line + "\"");
        }
        return line.substr(prefix.size());
    };

    spec.name = read_kv("name");
    symbols = read_kv("alphabet");
    endmarker_field = read_kv("endmarker");
    spec.stack_alphabet = read_kv("stackalphabet");
    spec.stack_bottom = parse_symbol_field(read_kv("stackbottom"), "stackbottom");
    spec.initial_state = read_kv("initial");
    spec.lambda_budget = std::stoi(read_kv("budget"));

    std::optional<char> endmarker;
    if (endmarker_field != "~") {
        endmarker = parse_symbol_field(endmarker_field, "endmarker");
    }
    spec.alphabet = Alphabet(symbols, endmarker);

    if (!std::getline(in, line) || line != "delta") {
        throw ConfigInvalid("delta", "expected \"delta\" section");
    }
    auto parse_rule_line = [&](const std::string& rule, bool is_delta) {
        std::istringstream ls(rule);
        std::string state, input_field, top_field, arrow;
        if (!(ls >> state >> input_field >> top_field >> arrow) || arrow != "->") {
            throw ConfigInvalid(is_delta ? "delta" : "nu", "malformed rule \"" + rule + "\"");
        }
        char input = input_field == "~" ? kLambda : parse_symbol_field(input_field, "input");
        char top = parse_symbol_field(top_field, "stacktop");
        if (is_delta) {
            std::string next, push;
            if (!(ls >> next >> push)) {
                throw ConfigInvalid("delta", "malformed rule \"" + rule + "\"");
            }
            spec.table().delta[{state, input, top}] = {next, push == "~" ? "" : push};
        } else {
            if (input == kLambda) {
                throw ConfigInvalid("nu", "nu rules take a real input symbol");
            }
            std::string emitted;
            if (!(ls >> emitted)) {
                throw ConfigInvalid("nu", "malformed rule \"" + rule + "\"");
            }
            spec.table().nu[{state, input, top}] = emitted == "~" ? "" : emitted;
        }
        std::string extra;
        if (ls >> extra) {
            throw ConfigInvalid(is_delta ? "delta" : "nu", "trailing tokens in \"" + rule + "\"");
        }
    };

    bool in_nu = false;
    bool ended = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "nu" && !in_nu) {
            in_nu = true;
            continue;
        }
        if (line == "end") {
            ended = true;
            break;
        }
        parse_rule_line(line, !in_nu);
    }
    if (!ended || !in_nu) {
        throw ConfigInvalid("end", "spec must contain a \"nu\" section and end with \"end\"");
    }
    return spec;
}

void save_spec(const TransducerSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << print_spec(spec);
}

TransducerSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

} // namespace rbc::pda
