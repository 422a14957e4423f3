#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rbc/harness/ratio.hpp"

namespace rbc::harness {

// Flat parameter bag for compressor selectors.
struct SelectorParams {
    int k = 0;
    int period = 0;        // A for zoo:t4, v' for zoo:t5 / zoo:t6
    int v = 0;
    int t_half = 0;        // zoo:t5
    int n_start = 4;       // plog:t7
    int n_end = 14;
    int counting_prefix = -1;  // zoo:t4; -1 = shortest divisibility prefix
    bool warmup = true;        // zoo:t6
    std::string spec_path;     // spec:<file>
    Alphabet alphabet = Alphabet::binary();
};

// A compressor ready for measurement, CLI compression, or verification.
// Selectors: lz78, zoo:t4, zoo:t5, zoo:t6, plog:enum, plog:t7, spec:<file>.
struct BuiltCompressor {
    enum class Kind { Pda, Lz, Online };

    std::string selector;
    Kind kind = Kind::Lz;
    std::shared_ptr<pda::TransducerSpec> spec;      // compressor machine
    std::shared_ptr<pda::TransducerSpec> inverter;  // paired decompressor, when constructed
    plog::CompressorFactory factory;                // online compressor
    SelectorParams params;

    MeasuredCompressor measured() const;
};

BuiltCompressor build_compressor(const std::string& selector, const SelectorParams& params);

struct ExperimentResult {
    bool passed = true;
    std::string id;
    std::string report_dir;
    std::vector<std::string> assertion_lines;  // one human-readable line each
    std::vector<std::string> failures;
    std::map<std::string, Estimate> estimates;
    std::int64_t wall_time_ms = 0;
};

// Runs one experiment config (JSON text): generates the witness, measures
// every listed compressor at the configured checkpoints, writes one CSV per
// compressor plus a summary.json under <out_root>/<id>/, and evaluates the
// assertions. CSV output is a pure function of config + seed.
ExperimentResult run_experiment(const std::string& config_json, const std::string& out_root);
ExperimentResult run_experiment_file(const std::string& config_path, const std::string& out_root);

} // namespace rbc::harness
