#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rbc/lz78.hpp"
#include "rbc/pda/engine.hpp"
#include "rbc/plog/online.hpp"
#include "rbc/witness/stream.hpp"

namespace rbc::harness {

// Output units: pushdown machines emit alphabet symbols (ratio =
// symbols/symbols); LZ and online compressors emit bits (ratio =
// bits / (symbols * log2 |Sigma|)).
enum class Unit { Symbols, NormalizedBits };

std::string unit_name(Unit unit);

struct RatioPoint {
    std::int64_t prefix_len = 0;
    std::int64_t output_size = 0;
    double ratio = 0;
};

struct RatioSeries {
    std::string compressor;
    Unit unit = Unit::Symbols;
    std::vector<RatioPoint> points;
};

struct Estimate {
    double rho_hat = 0;   // min ratio over the tail window
    double big_r_hat = 0; // max ratio over the tail window
    double tail_fraction = 0.5;
};

Estimate estimate_limits(const RatioSeries& series, double tail_fraction = 0.5);

// One measurable compressor. Pushdown machines are re-run from scratch at
// every checkpoint (their outputs need not nest); LZ is measured
// incrementally in one pass; online compressors get a fresh run per
// checkpoint because the input length is part of their input.
struct PdaCompressor {
    const pda::TransducerSpec* spec = nullptr;
    bool endmarked = false;
};
struct LzCompressor {};
struct OnlineCompressorRef {
    const plog::CompressorFactory* factory = nullptr;
};
using MeasuredCompressor = std::variant<PdaCompressor, LzCompressor, OnlineCompressorRef>;

RatioSeries measure(const MeasuredCompressor& compressor, const std::string& label,
                    wit::WitnessStream& stream, const std::vector<std::int64_t>& checkpoints);

// Checkpoint helpers: geometric spacing, or the positions of checkpoints
// whose kind starts with `marker_prefix`.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t first, std::int64_t last, int count);
std::vector<std::int64_t> marker_checkpoints(const wit::WitnessStream& stream,
                                             const std::string& marker_prefix,
                                             std::int64_t max_position);

// The checkpoint with the largest ratio (first such index).
std::size_t argmax_point(const RatioSeries& series);

std::string series_to_csv(const RatioSeries& series);

} // namespace rbc::harness
