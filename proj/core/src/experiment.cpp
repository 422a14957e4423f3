#include "rbc/harness/experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "rbc/common.hpp"
#include "rbc/pda/serialize.hpp"
#include "rbc/plog/compressors.hpp"
#include "rbc/zoo/zoo.hpp"

namespace rbc::harness {

using nlohmann::json;

MeasuredCompressor BuiltCompressor::measured() const {
    switch (kind) {
        case Kind::Pda: return PdaCompressor{spec.get(), false};
        case Kind::Lz: return LzCompressor{};
        case Kind::Online: return OnlineCompressorRef{&factory};
    }
    throw ParamOutOfRange("unreachable");
}

BuiltCompressor build_compressor(const std::string& selector, const SelectorParams& params) {
    BuiltCompressor built;
    built.selector = selector;
    built.params = params;
    if (selector == "lz78") {
        built.kind = BuiltCompressor::Kind::Lz;
        return built;
    }
    if (selector == "zoo:t4") {
        zoo::T4Params zp;
        zp.k = params.k > 0 ? params.k : 8;
        zp.compress_period = params.period > 0 ? params.period : 32;
        zp.counting_prefix = params.counting_prefix;
        zp.alphabet = params.alphabet;
        auto [c, d] = zoo::build_t4_pair(zp);
        built.kind = BuiltCompressor::Kind::Pda;
        built.spec = std::make_shared<pda::TransducerSpec>(std::move(c));
        built.inverter = std::make_shared<pda::TransducerSpec>(std::move(d));
        return built;
    }
    if (selector == "zoo:t5") {
        zoo::T5Params zp;
        zp.t_half = params.t_half > 0 ? params.t_half : 2;
        zp.v_prime = params.period > 0 ? params.period : 2;
        built.kind = BuiltCompressor::Kind::Pda;
        built.spec = std::make_shared<pda::TransducerSpec>(zoo::build_t5_visibly(zp));
        return built;
    }
    if (selector == "zoo:t6") {
        zoo::T6Params zp;
        zp.k = params.k > 0 ? params.k : 4;
        zp.v = params.v > 0 ? params.v : 8;
        zp.v_prime = params.period > 0 ? params.period : 8;
        zp.include_warmup = params.warmup;
        zp.alphabet = params.alphabet;
        auto [c, d] = zoo::build_t6_pair(zp);
        built.kind = BuiltCompressor::Kind::Pda;
        built.spec = std::make_shared<pda::TransducerSpec>(std::move(c));
        built.inverter = std::make_shared<pda::TransducerSpec>(std::move(d));
        return built;
    }
    if (selector == "plog:enum") {
        built.kind = BuiltCompressor::Kind::Online;
        Alphabet alphabet = params.alphabet;
        built.factory = [alphabet] { return plog::make_enum_prefix(alphabet); };
        return built;
    }
    if (selector == "plog:t7") {
        built.kind = BuiltCompressor::Kind::Online;
        plog::T7CompressorParams tp{params.n_start, params.n_end};
        built.factory = [tp] { return plog::make_t7_compressor(tp); };
        return built;
    }
    if (selector.rfind("spec:", 0) == 0) {
        built.kind = BuiltCompressor::Kind::Pda;
        built.spec = std::make_shared<pda::TransducerSpec>(
            pda::load_spec(selector.substr(5)));
        return built;
    }
    throw ConfigInvalid("selector", "unknown compressor selector \"" + selector + "\"");
}

namespace {

SelectorParams selector_params_from_json(const json& j, const Alphabet& alphabet) {
    SelectorParams p;
    p.alphabet = alphabet;
    p.k = j.value("k", 0);
    p.period = j.value("period", 0);
    p.v = j.value("v", 0);
    p.t_half = j.value("t", 0);
    p.n_start = j.value("nstart", 4);
    p.n_end = j.value("nend", 14);
    p.counting_prefix = j.value("counting_prefix", -1);
    p.warmup = j.value("warmup", true);
    return p;
}

double stat_value(const Estimate& est, const std::string& stat, const std::string& where) {
    if (stat == "RHat") return est.big_r_hat;
    if (stat == "rhoHat") return est.rho_hat;
    throw ConfigInvalid(where, "unknown stat \"" + stat + "\" (RHat | rhoHat)");
}

bool apply_op(double lhs, const std::string& op, double rhs, const std::string& where) {
    if (op == "<=") return lhs <= rhs;
    if (op == "<") return lhs < rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == ">") return lhs > rhs;
    throw ConfigInvalid(where, "unknown op \"" + op + "\"");
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

ExperimentResult run_experiment(const std::string& config_json, const std::string& out_root) {
    auto started = std::chrono::steady_clock::now();
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("json", e.what());
    }
    if (!cfg.contains("id") || !cfg["id"].is_string()) {
        throw ConfigInvalid("id", "experiment id is required");
    }
    ExperimentResult result;
    result.id = cfg["id"].get<std::string>();

    if (!cfg.contains("witness") || !cfg["witness"].is_object()) {
        throw ConfigInvalid("witness", "witness section is required");
    }
    const auto& w = cfg["witness"];
    if (!w.contains("family")) throw ConfigInvalid("witness.family", "required");
    if (!w.contains("seed")) throw ConfigInvalid("witness.seed", "a seed is mandatory");
    if (!w.contains("prefix")) throw ConfigInvalid("witness.prefix", "required");
    Alphabet alphabet(w.value("alphabet", std::string("01")));
    auto family = wit::family_from_name(w["family"].get<std::string>());
    auto seed = w["seed"].get<std::uint64_t>();
    auto prefix_len = w["prefix"].get<std::int64_t>();
    if (prefix_len < 1) throw ConfigInvalid("witness.prefix", "must be >= 1");

    wit::WitnessParams wp;
    wp.alphabet = alphabet;
    if (w.contains("params")) {
        wp = wit::WitnessParams::from_json(w["params"].dump(), alphabet);
    }
    wit::WitnessStream stream(family, wp, seed);
    stream.ensure(prefix_len);

    // checkpoints
    if (!cfg.contains("checkpoints")) throw ConfigInvalid("checkpoints", "required");
    const auto& ck = cfg["checkpoints"];
    std::vector<std::int64_t> checkpoints;
    std::string mode = ck.value("mode", std::string("geometric"));
    if (mode == "geometric") {
        auto first = ck.value("first", prefix_len / 64 > 0 ? prefix_len / 64 : 1);
        auto count = ck.value("count", 32);
        checkpoints = geometric_checkpoints(first, prefix_len, count);
    } else if (mode == "marker") {
        if (!ck.contains("match")) throw ConfigInvalid("checkpoints.match", "required");
        checkpoints =
            marker_checkpoints(stream, ck["match"].get<std::string>(), prefix_len);
        if (ck.value("include_end", true) &&
            (checkpoints.empty() || checkpoints.back() != prefix_len)) {
            checkpoints.push_back(prefix_len);
        }
    } else if (mode == "list") {
        if (!ck.contains("positions") || !ck["positions"].is_array()) {
            throw ConfigInvalid("checkpoints.positions", "required");
        }
        for (const auto& v : ck["positions"]) {
            checkpoints.push_back(v.get<std::int64_t>());
        }
    } else {
        throw ConfigInvalid("checkpoints.mode", "geometric | marker | list");
    }
    if (checkpoints.empty()) {
        throw ConfigInvalid("checkpoints", "the checkpoint list is empty");
    }

    // compressors
    if (!cfg.contains("compressors") || !cfg["compressors"].is_array() ||
        cfg["compressors"].empty()) {
        throw ConfigInvalid("compressors", "at least one compressor is required");
    }
    struct Cell {
        std::string name;
        BuiltCompressor built;
        RatioSeries series;
    };
    std::vector<Cell> cells;
    for (const auto& c : cfg["compressors"]) {
        if (!c.contains("name") || !c.contains("selector")) {
            throw ConfigInvalid("compressors", "each entry needs name and selector");
        }
        Cell cell;
        cell.name = c["name"].get<std::string>();
        cell.built = build_compressor(c["selector"].get<std::string>(),
                                      selector_params_from_json(c, alphabet));
        cells.push_back(std::move(cell));
    }

    // measure; cells run in parallel, each on the shared materialized prefix
    {
        std::vector<std::future<RatioSeries>> futures;
        futures.reserve(cells.size());
        for (auto& cell : cells) {
            futures.push_back(std::async(std::launch::async, [&cell, &stream, &checkpoints] {
                auto comp = cell.built.measured();
                return measure(comp, cell.name, stream, checkpoints);
            }));
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            cells[i].series = futures[i].get();
        }
    }

    double tail = cfg.value("tail_fraction", 0.5);
    for (auto& cell : cells) {
        result.estimates[cell.name] = estimate_limits(cell.series, tail);
    }

    // report files
    namespace fs = std::filesystem;
    fs::path dir = fs::path(out_root.empty() ? "." : out_root) / result.id;
    fs::create_directories(dir);
    result.report_dir = dir.string();
    for (const auto& cell : cells) {
        std::ofstream csv(dir / (cell.name + ".csv"), std::ios::binary);
        if (!csv) throw IoError("cannot write CSV in " + dir.string());
        csv << series_to_csv(cell.series);
    }

    // assertions
    auto find_estimate = [&](const std::string& name) -> const Estimate& {
        auto it = result.estimates.find(name);
        if (it == result.estimates.end()) {
            throw ConfigInvalid("assertions", "unknown series \"" + name + "\"");
        }
        return it->second;
    };
    auto find_cell = [&](const std::string& name) -> const Cell& {
        for (const auto& cell : cells) {
            if (cell.name == name) return cell;
        }
        throw ConfigInvalid("assertions", "unknown series \"" + name + "\"");
    };
    if (cfg.contains("assertions")) {
        for (const auto& a : cfg["assertions"]) {
            if (!a.contains("series")) throw ConfigInvalid("assertions", "series is required");
            std::string name = a["series"].get<std::string>();
            std::string line;
            bool ok;
            if (a.value("check", std::string{}) == "argmax_marker") {
                const auto& cell = find_cell(name);
                std::string marker = a.value("marker", std::string{});
                auto best = argmax_point(cell.series);
                auto pos = cell.series.points[best].prefix_len;
                ok = false;
                for (const auto& cp : stream.checkpoints()) {
                    if (cp.position == pos && cp.kind.rfind(marker, 0) == 0) {
                        ok = true;
                        break;
                    }
                }
                line = name + " argmax at " + std::to_string(pos) +
                       (ok ? " lies on " : " does not lie on ") + marker;
            } else {
                std::string stat = a.value("stat", std::string("RHat"));
                double lhs = stat_value(find_estimate(name), stat, "assertions");
                std::string op = a.value("op", std::string("<="));
                double rhs;
                std::string rhs_text;
                if (a.contains("other")) {
                    std::string other = a["other"].get<std::string>();
                    std::string other_stat = a.value("other_stat", std::string("rhoHat"));
                    rhs = stat_value(find_estimate(other), other_stat, "assertions");
                    rhs_text = other + "." + other_stat + " = " + format_double(rhs);
                } else if (a.contains("value")) {
                    rhs = a["value"].get<double>();
                    rhs_text = format_double(rhs);
                } else {
                    throw ConfigInvalid("assertions", "need value or other");
                }
                ok = apply_op(lhs, op, rhs, "assertions");
                line = name + "." + stat + " = " + format_double(lhs) + " " + op + " " +
                       rhs_text;
            }
            line += ok ? "  [ok]" : "  [FAIL]";
            result.assertion_lines.push_back(line);
            if (!ok) {
                result.passed = false;
                result.failures.push_back(line);
            }
        }
    }

    auto elapsed = std::chrono::steady_clock::now() - started;
    result.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    json summary;
    summary["config"] = cfg;
    summary["seed"] = seed;
    summary["wallTimeMs"] = result.wall_time_ms;
    summary["versions"] = {{"rbc", "0.1.0"}};
    summary["passed"] = result.passed;
    for (const auto& [name, est] : result.estimates) {
        summary["estimates"][name] = {{"rhoHat", est.rho_hat},
                                      {"RHat", est.big_r_hat},
                                      {"tailFraction", est.tail_fraction}};
    }
    summary["assertions"] = result.assertion_lines;
    std::ofstream sj(dir / "summary.json", std::ios::binary);
    sj << summary.dump(2) << "\n";

    return result;
}

ExperimentResult run_experiment_file(const std::string& config_path,
                                     const std::string& out_root) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config: " + config_path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_experiment(buf.str(), out_root);
}

} // namespace rbc::harness
