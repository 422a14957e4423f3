#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rbc/harness/experiment.hpp"
#include "rbc/lz78.hpp"
#include "rbc/pda/serialize.hpp"
#include "rbc/plog/compressors.hpp"
#include "rbc/witness/files.hpp"
#include "rbc/witness/structure_check.hpp"
#include "rbc/zoo/zoo.hpp"

namespace {

using nlohmann::json;
using namespace rbc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct WitnessCli {
    std::string family;
    std::string alphabet = "01";
    std::uint64_t seed = 1;
    std::int64_t len = 0;
    int k = 0, v = 0, v_prime = 0, c_exp = 7;
    int n_start = 4, n_end = 14, zone_start = 0;
    bool machine_safe = false;

    void add_options(CLI::App* cmd, bool need_len) {
        cmd->add_option("--family", family, "witness family (t1 t2 t4 t5 t6 enum t7)")
            ->required();
        cmd->add_option("--alphabet", alphabet, "alphabet symbols (default 01)");
        cmd->add_option("--seed", seed, "seed for the pseudorandom draws")->required();
        auto* len_opt = cmd->add_option("--len", len, "prefix length in symbols");
        if (need_len) len_opt->required();
        cmd->add_option("--k", k, "flag length (t4, t6)");
        cmd->add_option("--v", v, "group count (t6)");
        cmd->add_option("--vprime", v_prime, "zone period (t5, t6)");
        cmd->add_option("--c", c_exp, "repetition exponent (t2)");
        cmd->add_option("--nstart", n_start, "first zone (t7)");
        cmd->add_option("--nend", n_end, "last zone (t7)");
        cmd->add_option("--zonestart", zone_start, "first heavy zone (t6)");
        cmd->add_flag("--machine-safe", machine_safe,
                      "t6: skip zones the paired machine cannot track");
    }

    wit::WitnessStream stream() const {
        wit::WitnessParams p;
        p.alphabet = Alphabet(alphabet);
        p.k = k;
        p.v = v;
        p.v_prime = v_prime;
        p.c_exp = c_exp;
        p.n_start = n_start;
        p.n_end = n_end;
        p.zone_start = zone_start;
        p.machine_safe = machine_safe;
        return wit::WitnessStream(wit::family_from_name(family), p, seed);
    }
};

struct SelectorCli {
    std::string selector;
    int k = 0, period = 0, v = 0, t_half = 0;
    int n_start = 4, n_end = 14, counting_prefix = -1;
    bool no_warmup = false;
    std::string alphabet = "01";

    void add_options(CLI::App* cmd) {
        cmd->add_option("--selector", selector,
                        "lz78 | zoo:t4 | zoo:t5 | zoo:t6 | plog:enum | plog:t7 | spec:<file>")
            ->required();
        cmd->add_option("--k", k, "flag length (zoo:t4, zoo:t6)");
        cmd->add_option("--period", period, "compress period (A or v')");
        cmd->add_option("--v", v, "group count (zoo:t6)");
        cmd->add_option("--t", t_half, "half-alphabet size (zoo:t5)");
        cmd->add_option("--nstart", n_start, "first zone (plog:t7)");
        cmd->add_option("--nend", n_end, "last zone (plog:t7)");
        cmd->add_option("--counting-prefix", counting_prefix,
                        "zoo:t4 counting prefix (-1 = automatic)");
        cmd->add_flag("--no-warmup", no_warmup, "zoo:t6: skip the warmup counting states");
        cmd->add_option("--alphabet", alphabet, "alphabet for lz78/plog:enum on raw input");
    }

    harness::BuiltCompressor build(const Alphabet& sigma) const {
        harness::SelectorParams p;
        p.k = k;
        p.period = period;
        p.v = v;
        p.t_half = t_half;
        p.n_start = n_start;
        p.n_end = n_end;
        p.counting_prefix = counting_prefix;
        p.warmup = !no_warmup;
        p.alphabet = sigma;
        return harness::build_compressor(selector, p);
    }
};

// ---------------------------------------------------------------- gen

int cmd_gen(const WitnessCli& w, const std::string& out, std::string checkpoints) {
    auto stream = w.stream();
    if (checkpoints.empty()) {
        checkpoints = out + ".checkpoints.csv";
    }
    wit::save_sequence(stream, w.len, out, checkpoints);
    std::cout << "wrote " << w.len << " symbols to " << out << "\n";
    return kExitPass;
}

// ----------------------------------------------------- compress / decompress

struct LoadedInput {
    Alphabet alphabet;
    std::string symbols;
    std::string header;  // empty for raw input
};

LoadedInput load_input(const std::string& path, bool raw, const std::string& raw_alphabet) {
    LoadedInput in;
    if (raw) {
        in.alphabet = Alphabet(raw_alphabet);
        in.symbols = read_file(path);
        return in;
    }
    auto seq = wit::load_sequence(path);
    in.alphabet = seq.alphabet;
    in.symbols = std::move(seq.symbols);
    in.header = seq.header;
    return in;
}

int cmd_compress(const SelectorCli& sel, const std::string& in_path,
                 const std::string& out_path, bool raw) {
    auto input = load_input(in_path, raw, sel.alphabet);
    auto built = sel.build(input.alphabet);

    json meta;
    meta["selector"] = sel.selector;
    meta["n"] = input.symbols.size();
    meta["header"] = input.header;
    meta["raw"] = raw;

    if (built.kind == harness::BuiltCompressor::Kind::Lz) {
        lz::LzDictionary dict(input.alphabet);
        auto stream = lz::encode(input.symbols, dict);
        lz::save_bitstream(stream, out_path);
        meta["alphabet"] = input.alphabet.symbols();
        write_file(out_path + ".meta", meta.dump() + "\n");
        std::cout << "lz78: " << input.symbols.size() << " symbols -> " << stream.bit_len
                  << " bits\n";
        return kExitPass;
    }
    if (built.kind == harness::BuiltCompressor::Kind::Pda) {
        auto run = pda::Machine(*built.spec).run(input.symbols, false);
        meta["final"] = run.final_state;
        meta["alphabet"] = input.alphabet.symbols();
        std::string payload = meta.dump() + "\n" + run.output;
        write_file(out_path, payload);
        std::cout << sel.selector << ": " << input.symbols.size() << " symbols -> "
                  << run.output.size() << " symbols (final state " << run.final_state << ")\n";
        return kExitPass;
    }
    auto comp = built.factory();
    auto run = plog::run_online(*comp, input.symbols, false);
    meta["alphabet"] = input.alphabet.symbols();
    std::string payload = meta.dump() + "\n" + run.output;
    write_file(out_path, payload);
    std::cout << sel.selector << ": " << input.symbols.size() << " symbols -> "
              << run.output.size() << " bits\n";
    return kExitPass;
}

int cmd_decompress(const SelectorCli& sel, const std::string& in_path,
                   const std::string& out_path) {
    auto restore = [&](const json& meta, const std::string& symbols) {
        std::string out;
        if (!meta.value("raw", false) && meta.contains("header") &&
            !meta["header"].get<std::string>().empty()) {
            out = meta["header"].get<std::string>() + "\n";
        }
        out += symbols;
        write_file(out_path, out);
        std::cout << "restored " << symbols.size() << " symbols to " << out_path << "\n";
        return kExitPass;
    };

    if (sel.selector == "lz78") {
        auto stream = lz::load_bitstream(in_path);
        auto meta = json::parse(read_file(in_path + ".meta"));
        Alphabet alphabet(meta["alphabet"].get<std::string>());
        lz::LzDictionary dict(alphabet);
        auto symbols = lz::decode(stream, stream.alphabet_size, dict);
        return restore(meta, symbols);
    }

    auto payload = read_file(in_path);
    auto nl = payload.find('\n');
    if (nl == std::string::npos) {
        throw MalformedStream("compressed container has no header line", 0);
    }
    auto meta = json::parse(payload.substr(0, nl));
    std::string body = payload.substr(nl + 1);
    Alphabet alphabet(meta["alphabet"].get<std::string>());
    auto n = meta["n"].get<std::int64_t>();

    if (sel.selector == "zoo:t4" || sel.selector == "zoo:t6") {
        auto built = sel.build(alphabet);
        std::string d_input = body;
        d_input.push_back(*built.inverter->alphabet.endmarker());
        d_input += pda::encode_state_trailer(*built.spec, meta["final"].get<std::string>());
        auto run = pda::Machine(*built.inverter).run(d_input, false);
        return restore(meta, run.output);
    }
    if (sel.selector == "plog:enum") {
        return restore(meta, plog::invert_enum_prefix(body, n, alphabet));
    }
    if (sel.selector == "plog:t7") {
        return restore(meta, plog::invert_t7(body, n, {sel.n_start, sel.n_end}));
    }
    std::cerr << "selector " << sel.selector
              << " has no constructed inverter; decompression is unsupported\n";
    return kExitUsage;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const SelectorCli& sel, const std::string& mode, int max_len, double bound_a,
               double bound_c, double max_n, const std::string& in_path, int corrupt,
               std::uint64_t seed) {
    json report;
    report["selector"] = sel.selector;
    report["mode"] = mode;
    bool ok = false;

    if (mode == "il") {
        Alphabet sigma(sel.alphabet);
        auto built = sel.build(sigma);
        if (built.kind == harness::BuiltCompressor::Kind::Pda) {
            auto verdict = pda::check_il(*built.spec, max_len, false);
            ok = verdict.ok;
            if (!verdict.ok) {
                report["counterexample"] = {verdict.counterexample->first,
                                            verdict.counterexample->second};
            }
        } else if (built.kind == harness::BuiltCompressor::Kind::Online) {
            auto verdict =
                plog::check_il_online([&] { return built.factory(); }, max_len, sigma);
            ok = verdict.ok;
            if (!verdict.ok) {
                report["counterexample"] = {verdict.counterexample->first,
                                            verdict.counterexample->second};
            }
        } else {
            std::cerr << "il mode needs a machine selector\n";
            return kExitUsage;
        }
        report["maxlen"] = max_len;
    } else if (mode == "visibly") {
        Alphabet sigma(sel.alphabet);
        auto built = sel.build(sigma);
        if (built.kind != harness::BuiltCompressor::Kind::Pda) {
            std::cerr << "visibly mode needs a pushdown selector\n";
            return kExitUsage;
        }
        std::map<char, pda::SymbolClass> partition;
        const auto& symbols = built.spec->alphabet.symbols();
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            partition[symbols[i]] = i < symbols.size() / 2 ? pda::SymbolClass::Call
                                                           : pda::SymbolClass::Return;
        }
        auto verdict = pda::check_visibly(*built.spec, partition);
        ok = verdict.ok;
        report["violations"] = verdict.violations;
    } else if (mode == "inverse") {
        if (in_path.empty()) {
            std::cerr << "inverse mode needs --in <sequence file>\n";
            return kExitUsage;
        }
        auto seq = wit::load_sequence(in_path);
        auto built = sel.build(seq.alphabet);
        if (!built.inverter) {
            std::cerr << "selector has no constructed inverter\n";
            return kExitUsage;
        }
        ok = true;
        auto verdict = pda::run_inverse_pair(*built.spec, *built.inverter, seq.symbols);
        report["well_formed_ok"] = verdict.ok;
        ok = verdict.ok;
        int corrupted_ok = 0;
        if (corrupt > 0) {
            wit::RandomSource rng_source(seed);
            auto rng = rng_source.stream(0xC0, 0);
            for (int i = 0; i < corrupt; ++i) {
                std::string mutated = seq.symbols;
                auto pos = static_cast<std::size_t>(rng.uniform(mutated.size()));
                int old_idx = seq.alphabet.index(mutated[pos]);
                int new_idx =
                    (old_idx + 1 + static_cast<int>(rng.uniform(
                                       static_cast<std::uint64_t>(seq.alphabet.size() - 1)))) %
                    seq.alphabet.size();
                mutated[pos] = seq.alphabet.symbol(new_idx);
                auto v = pda::run_inverse_pair(*built.spec, *built.inverter, mutated);
                if (v.ok) {
                    ++corrupted_ok;
                } else {
                    ok = false;
                }
            }
            report["corrupted_ok"] = corrupted_ok;
            report["corrupted_total"] = corrupt;
        }
    } else if (mode == "memory") {
        Alphabet sigma(sel.alphabet);
        auto built = sel.build(sigma);
        if (built.kind != harness::BuiltCompressor::Kind::Online) {
            std::cerr << "memory mode needs an online selector\n";
            return kExitUsage;
        }
        plog::MemoryBound bound{bound_a, bound_c};
        std::vector<std::int64_t> lengths;
        for (std::int64_t n = 1000; n <= static_cast<std::int64_t>(max_n); n *= 10) {
            lengths.push_back(n);
        }
        if (lengths.empty()) {
            lengths.push_back(static_cast<std::int64_t>(max_n));
        }
        std::function<std::string(std::int64_t)> prefix;
        if (sel.selector == "plog:enum") {
            prefix = [sigma](std::int64_t n) {
                wit::WitnessParams p;
                p.alphabet = sigma;
                wit::WitnessStream s(wit::Family::Enum, p, 0);
                return std::string(s.prefix(n));
            };
        } else {
            auto nstart = sel.n_start;
            auto nend = sel.n_end;
            auto s = seed;
            prefix = [sigma, nstart, nend, s](std::int64_t n) {
                wit::WitnessParams p;
                p.alphabet = sigma;
                p.n_start = nstart;
                p.n_end = nend;
                wit::WitnessStream stream(wit::Family::T7, p, s);
                return std::string(stream.prefix(n));
            };
        }
        auto verdict = plog::check_memory_bound([&] { return built.factory(); }, lengths,
                                                bound, prefix);
        ok = verdict.ok;
        report["bound_a"] = bound_a;
        report["bound_c"] = bound_c;
        if (!verdict.ok) {
            report["violating_n"] = verdict.violating_n;
            report["peak_bits"] = verdict.peak_bits;
            report["bound_bits"] = verdict.bound_bits;
        }
    } else {
        std::cerr << "unknown mode " << mode << " (il | visibly | inverse | memory)\n";
        return kExitUsage;
    }

    report["ok"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? kExitPass : kExitFail;
}

int cmd_check_structure(const WitnessCli& w) {
    auto stream = w.stream();
    auto rep = wit::check_structure(stream, w.len);
    json out;
    out["ok"] = rep.ok;
    out["zones_checked"] = rep.zones_checked;
    out["problems"] = rep.problems;
    std::cout << out.dump(2) << "\n";
    return rep.ok ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resource-bounded compression laboratory"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a witness sequence file");
    WitnessCli gen_w;
    gen_w.add_options(gen, true);
    std::string gen_out, gen_cps;
    gen->add_option("--out", gen_out, "output sequence file")->required();
    gen->add_option("--checkpoints", gen_cps, "checkpoint sidecar (default <out>.checkpoints.csv)");

    // compress / decompress
    auto* compress = app.add_subcommand("compress", "compress a file with a selector");
    SelectorCli comp_sel;
    comp_sel.add_options(compress);
    std::string comp_in, comp_out;
    bool comp_raw = false;
    compress->add_option("--in", comp_in)->required();
    compress->add_option("--out", comp_out)->required();
    compress->add_flag("--raw", comp_raw, "input is raw symbol bytes, not a sequence file");

    auto* decompress = app.add_subcommand("decompress", "invert a compressed file");
    SelectorCli dec_sel;
    dec_sel.add_options(decompress);
    std::string dec_in, dec_out;
    decompress->add_option("--in", dec_in)->required();
    decompress->add_option("--out", dec_out)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run a machine verifier");
    SelectorCli ver_sel;
    ver_sel.add_options(verify);
    std::string ver_mode, ver_in;
    int ver_maxlen = 10, ver_corrupt = 0;
    double ver_a = 64, ver_c = 2, ver_n = 1e6;
    std::uint64_t ver_seed = 1;
    verify->add_option("--mode", ver_mode, "il | visibly | inverse | memory")->required();
    verify->add_option("--maxlen", ver_maxlen, "exhaustive length bound (il)");
    verify->add_option("--a", ver_a, "memory bound coefficient");
    verify->add_option("--c", ver_c, "memory bound exponent");
    verify->add_option("--n", ver_n, "largest tested length (memory)");
    verify->add_option("--in", ver_in, "sequence file (inverse)");
    verify->add_option("--corrupt", ver_corrupt, "also check N single-flip corruptions");
    verify->add_option("--seed", ver_seed, "seed for corruption positions / t7 stream");

    // check-structure
    auto* check = app.add_subcommand("check-structure",
                                     "validate a generated witness against its layout");
    WitnessCli check_w;
    check_w.add_options(check, true);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run an experiment config");
    std::string exp_config, exp_out;
    experiment->add_option("--config", exp_config, "experiment JSON config")->required();
    experiment->add_option("--out", exp_out, "output root (default $RBC_OUT_DIR or .)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_w, gen_out, gen_cps);
        }
        if (compress->parsed()) {
            return cmd_compress(comp_sel, comp_in, comp_out, comp_raw);
        }
        if (decompress->parsed()) {
            return cmd_decompress(dec_sel, dec_in, dec_out);
        }
        if (verify->parsed()) {
            return cmd_verify(ver_sel, ver_mode, ver_maxlen, ver_a, ver_c, ver_n, ver_in,
                              ver_corrupt, ver_seed);
        }
        if (check->parsed()) {
            return cmd_check_structure(check_w);
        }
        if (experiment->parsed()) {
            if (exp_out.empty()) {
                const char* env = std::getenv("RBC_OUT_DIR");
                exp_out = env ? env : ".";
            }
            auto result = harness::run_experiment_file(exp_config, exp_out);
            for (const auto& line : result.assertion_lines) {
                std::cout << line << "\n";
            }
            std::cout << (result.passed ? "PASS" : "FAIL") << " (" << result.report_dir
                      << ", " << result.wall_time_ms << " ms)\n";
            return result.passed ? kExitPass : kExitFail;
        }
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParamOutOfRange& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MalformedStream& e) {
        std::cerr << "malformed stream at bit " << e.bit_offset() << ": " << e.what() << "\n";
        return kExitFail;
    } catch (const RunError& e) {
        std::cerr << "machine error at position " << e.position() << ": " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
