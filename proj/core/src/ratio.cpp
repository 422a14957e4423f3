#include "rbc/harness/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rbc/common.hpp"

namespace rbc::harness {

std::string unit_name(Unit unit) {
    return unit == Unit::Symbols ? "symbols" : "bits";
}

Estimate estimate_limits(const RatioSeries& series, double tail_fraction) {
    if (series.points.empty()) {
        throw ParamOutOfRange("estimate_limits: empty series");
    }
    if (tail_fraction <= 0 || tail_fraction > 1) {
        throw ParamOutOfRange("estimate_limits: tail fraction must be in (0, 1]");
    }
    auto n = series.points.size();
    auto tail = static_cast<std::size_t>(
        std::ceil(tail_fraction * static_cast<double>(n)));
    if (tail == 0) tail = 1;
    Estimate est;
    est.tail_fraction = tail_fraction;
    est.rho_hat = est.big_r_hat = series.points[n - tail].ratio;
    for (std::size_t i = n - tail; i < n; ++i) {
        est.rho_hat = std::min(est.rho_hat, series.points[i].ratio);
        est.big_r_hat = std::max(est.big_r_hat, series.points[i].ratio);
    }
    return est;
}

RatioSeries measure(const MeasuredCompressor& compressor, const std::string& label,
                    wit::WitnessStream& stream, const std::vector<std::int64_t>& checkpoints) {
    if (checkpoints.empty()) {
        throw ConfigInvalid("checkpoints", "at least one checkpoint is required");
    }
    std::vector<std::int64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.front() < 1) {
        throw ConfigInvalid("checkpoints", "positions must be >= 1");
    }
    stream.ensure(sorted.back());
    auto full = stream.prefix(sorted.back());
    double log_sigma = stream.alphabet().log2_size();

    RatioSeries series;
    series.compressor = label;

    if (std::holds_alternative<PdaCompressor>(compressor)) {
        const auto& pc = std::get<PdaCompressor>(compressor);
        series.unit = Unit::Symbols;
        pda::Machine machine(*pc.spec);
        for (std::int64_t n : sorted) {
            auto run = machine.run(full.substr(0, static_cast<std::size_t>(n)), pc.endmarked);
            auto out = static_cast<std::int64_t>(run.output.size());
            series.points.push_back(
                {n, out, static_cast<double>(out) / static_cast<double>(n)});
        }
    } else if (std::holds_alternative<LzCompressor>(compressor)) {
        series.unit = Unit::NormalizedBits;
        lz::LzEncoder encoder(stream.alphabet());
        std::size_t fed = 0;
        for (std::int64_t n : sorted) {
            while (fed < static_cast<std::size_t>(n)) {
                encoder.feed(full[fed++]);
            }
            auto bits = encoder.bits_if_ended();
            series.points.push_back(
                {n, bits,
                 static_cast<double>(bits) / (static_cast<double>(n) * log_sigma)});
        }
    } else {
        const auto& oc = std::get<OnlineCompressorRef>(compressor);
        series.unit = Unit::NormalizedBits;
        for (std::int64_t n : sorted) {
            auto comp = (*oc.factory)();
            auto run = plog::run_online(*comp, full.substr(0, static_cast<std::size_t>(n)),
                                        false);
            auto bits = static_cast<std::int64_t>(run.output.size());
            series.points.push_back(
                {n, bits,
                 static_cast<double>(bits) / (static_cast<double>(n) * log_sigma)});
        }
    }
    return series;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t first, std::int64_t last,
                                                int count) {
    if (first < 1 || last < first || count < 1) {
        throw ConfigInvalid("checkpoints", "bad geometric checkpoint range");
    }
    std::vector<std::int64_t> out;
    double ratio = std::pow(static_cast<double>(last) / static_cast<double>(first),
                            1.0 / std::max(1, count - 1));
    double x = static_cast<double>(first);
    for (int i = 0; i < count; ++i) {
        auto v = static_cast<std::int64_t>(std::llround(x));
        if (out.empty() || v > out.back()) {
            out.push_back(std::min(v, last));
        }
        x *= ratio;
    }
    if (out.back() != last) {
        out.push_back(last);
    }
    return out;
}

std::vector<std::int64_t> marker_checkpoints(const wit::WitnessStream& stream,
                                             const std::string& marker_prefix,
                                             std::int64_t max_position) {
    std::vector<std::int64_t> out;
    for (const auto& cp : stream.checkpoints()) {
        if (cp.position >= 1 && cp.position <= max_position &&
            cp.kind.rfind(marker_prefix, 0) == 0) {
            out.push_back(cp.position);
        }
    }
    return out;
}

std::size_t argmax_point(const RatioSeries& series) {
    if (series.points.empty()) {
        throw ParamOutOfRange("argmax of an empty series");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        if (series.points[i].ratio > series.points[best].ratio) {
            best = i;
        }
    }
    return best;
}

std::string series_to_csv(const RatioSeries& series) {
    std::string csv = "prefix_len,output_size,unit,ratio\n";
    char buf[64];
    for (const auto& p : series.points) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%s,%.12g\n",
                      static_cast<long long>(p.prefix_len),
                      static_cast<long long>(p.output_size),
                      unit_name(series.unit).c_str(), p.ratio);
        csv += buf;
    }
    return csv;
}

} // namespace rbc::harness
