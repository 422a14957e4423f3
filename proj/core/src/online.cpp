#include "rbc/plog/online.hpp"

#include <cmath>
#include <unordered_map>

#include "rbc/common.hpp"

namespace rbc::plog {

double MemoryBound::bound_bits(std::int64_t n) const {
    return a * std::pow(std::log2(static_cast<double>(n) + 2.0), c_exp);
}

MeteredRun run_online(OnlineCompressor& comp, std::string_view w, bool meter) {
    MeteredRun run;
    comp.init(static_cast<std::int64_t>(w.size()));
    std::string snap;
    for (char c : w) {
        run.output += comp.feed(c);
        if (meter) {
            snap.clear();
            comp.snapshot(snap);
            auto bits = static_cast<std::int64_t>(snap.size()) * 8;
            if (bits > run.peak_state_bits) {
                run.peak_state_bits = bits;
                run.final_snapshot = snap;
            }
        }
    }
    run.output += comp.finalize();
    if (meter) {
        snap.clear();
        comp.snapshot(snap);
        run.final_snapshot = snap;
    }
    return run;
}

MemoryVerdict check_memory_bound(const CompressorFactory& make,
                                 const std::vector<std::int64_t>& lengths,
                                 const MemoryBound& bound,
                                 const std::function<std::string(std::int64_t)>& stream_prefix) {
    for (std::int64_t n : lengths) {
        auto comp = make();
        auto run = run_online(*comp, stream_prefix(n), true);
        double limit = bound.bound_bits(n);
        if (static_cast<double>(run.peak_state_bits) > limit) {
            return {false, n, run.peak_state_bits, limit};
        }
    }
    return {};
}

IlOnlineVerdict check_il_online(const CompressorFactory& make, int max_len,
                                const Alphabet& alphabet) {
    std::unordered_map<std::string, std::string> seen;
    std::string w;
    auto visit = [&](auto&& self, int remaining) -> std::optional<IlOnlineVerdict> {
        auto comp = make();
        auto run = run_online(*comp, w, false);
        std::string key = std::to_string(w.size());
        key += '\x1e';
        key += run.output;
        auto [it, inserted] = seen.emplace(std::move(key), w);
        if (!inserted) {
            IlOnlineVerdict v;
            v.ok = false;
            v.counterexample = {it->second, w};
            return v;
        }
        if (remaining > 0) {
            for (char s : alphabet.symbols()) {
                w.push_back(s);
                if (auto bad = self(self, remaining - 1)) return bad;
                w.pop_back();
            }
        }
        return std::nullopt;
    };
    if (auto bad = visit(visit, max_len)) return *bad;
    return {};
}

std::string dbin(std::uint64_t m) {
    if (m == 0) {
        return {};
    }
    std::string bits;
    for (std::uint64_t v = m; v > 0; v >>= 1) {
        bits.push_back((v & 1) ? '1' : '0');
    }
    std::string out;
    out.reserve(bits.size() * 2);
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        out.push_back(*it);
        out.push_back(*it);
    }
    return out;
}

} // namespace rbc::plog
