#include "rbc/witness/families.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "rbc/common.hpp"

namespace rbc::wit {

namespace {

int lead_ones(const std::string& s) {
    int c = 0;
    while (c < static_cast<int>(s.size()) && s[static_cast<std::size_t>(c)] == '1') ++c;
    return c;
}

int trail_ones(const std::string& s) {
    int c = 0;
    while (c < static_cast<int>(s.size()) && s[s.size() - 1 - static_cast<std::size_t>(c)] == '1')
        ++c;
    return c;
}

void enumerate_no_run(const Alphabet& alphabet, int n, int k, std::string& prefix, int run,
                      std::vector<std::string>& out) {
    if (static_cast<int>(prefix.size()) == n) {
        out.push_back(prefix);
        return;
    }
    for (char c : alphabet.symbols()) {
        int next_run = c == '1' ? run + 1 : 0;
        if (next_run >= k) {
            continue;
        }
        prefix.push_back(c);
        enumerate_no_run(alphabet, n, k, prefix, next_run, out);
        prefix.pop_back();
    }
}

// Orders palindromes so no adjacent boundary carries a 1-run of length >= k
// and the first element starts with 0. Returns false when impossible.
bool weave_a_zone(std::vector<std::string>& pals, int k) {
    std::deque<std::string> lo, hi;
    for (auto& p : pals) {
        (lead_ones(p) == 0 ? lo : hi).push_back(p);
    }
    if (lo.size() < hi.size()) {
        return false;
    }
    std::vector<std::string> woven;
    woven.reserve(pals.size());
    while (!hi.empty()) {
        woven.push_back(lo.front());
        lo.pop_front();
        woven.push_back(hi.front());
        hi.pop_front();
    }
    woven.insert(woven.end(), lo.begin(), lo.end());
    for (std::size_t i = 0; i + 1 < woven.size(); ++i) {
        if (trail_ones(woven[i]) + lead_ones(woven[i + 1]) >= k) {
            return false;
        }
    }
    pals = std::move(woven);
    return true;
}

using Pair = std::pair<std::string, std::string>;

// Orders one group's pairs so the X zone starts with a 0-leading x, ends
// with a 0-trailing x, and no adjacent boundary forms a 1-run >= k.
bool order_group_for_machine(std::vector<Pair>& group, int k) {
    if (group.empty()) {
        return false;
    }
    std::vector<Pair> pool = group;
    std::vector<Pair> chain;

    auto take = [&](std::size_t i) {
        Pair p = pool[i];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        return p;
    };

    // first: lexicographically least x with lead 0 (and trail 0 too if it
    // must double as the last element)
    std::size_t first_idx = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (lead_ones(pool[i].first) != 0) continue;
        if (pool.size() == 1 && trail_ones(pool[i].first) != 0) continue;
        first_idx = i;
        break;
    }
    if (first_idx == pool.size()) {
        return false;
    }
    chain.push_back(take(first_idx));
    if (pool.empty()) {
        group = std::move(chain);
        return true;
    }

    // last: lexicographically least remaining x with trail 0
    std::size_t last_idx = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (trail_ones(pool[i].first) == 0) {
            last_idx = i;
            break;
        }
    }
    if (last_idx == pool.size()) {
        return false;
    }
    Pair last = take(last_idx);

    // middle: greedy, spending high-lead elements whenever they fit
    while (!pool.empty()) {
        int budget = k - 1 - trail_ones(chain.back().first);
        std::size_t best = pool.size();
        int best_lead = -1;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            int lead = lead_ones(pool[i].first);
            if (lead <= budget && lead > best_lead) {
                best = i;
                best_lead = lead;
            }
        }
        if (best == pool.size()) {
            return false;
        }
        chain.push_back(take(best));
    }
    if (trail_ones(chain.back().first) + lead_ones(last.first) >= k) {
        return false;
    }
    chain.push_back(std::move(last));
    group = std::move(chain);
    return true;
}

// Spec-order fallback: keep assignment order, just move a 0-leading x to
// the front and a 0-trailing x to the back when available.
void order_group_minimal(std::vector<Pair>& group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (lead_ones(group[i].first) == 0) {
            std::rotate(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(i),
                        group.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            break;
        }
    }
    for (std::size_t i = group.size(); i-- > 1;) {
        if (trail_ones(group[i].first) == 0) {
            std::rotate(group.begin() + static_cast<std::ptrdiff_t>(i),
                        group.begin() + static_cast<std::ptrdiff_t>(i) + 1, group.end());
            break;
        }
    }
}

bool group_boundaries_ok(const std::vector<Pair>& group, int k) {
    if (group.empty()) return false;
    if (lead_ones(group.front().first) != 0) return false;
    if (trail_ones(group.back().first) != 0) return false;
    for (std::size_t i = 0; i + 1 < group.size(); ++i) {
        if (trail_ones(group[i].first) + lead_ones(group[i + 1].first) >= k) return false;
    }
    return true;
}

} // namespace

std::vector<std::string> t6_strings(int n, int k, const Alphabet& alphabet) {
    if (k < 3) {
        throw ParamOutOfRange("t6 needs k >= 3");
    }
    if (n < 1 || n > 26) {
        throw ParamOutOfRange("t6 zone size out of desk-scale range (1..26)");
    }
    std::vector<std::string> out;
    std::string prefix;
    enumerate_no_run(alphabet, n, k, prefix, 0, out);
    return out;
}

std::int64_t t6_flag_length(int n, int k, int v) {
    return 2 * static_cast<std::int64_t>(k) +
           static_cast<std::int64_t>(n - k) * (static_cast<std::int64_t>(v) + 1);
}

T6Zone t6_enumerate(int n, int k, int v, const Alphabet& alphabet, int v_prime) {
    if (v < 1) {
        throw ParamOutOfRange("t6 needs v >= 1");
    }
    T6Zone zone;
    zone.n = n;
    zone.t_n = t6_strings(n, k, alphabet);

    std::vector<Pair> pairs;
    for (const auto& s : zone.t_n) {
        std::string rev(s.rbegin(), s.rend());
        if (s == rev) {
            zone.a_n.push_back(s);
        } else if (s < rev) {
            pairs.emplace_back(s, rev);
        }
    }

    zone.groups.assign(static_cast<std::size_t>(v), {});
    bool sized_ok = true;
    if (v_prime > 0) {
        // group sizes are multiples of m so the period divides every zone
        // length n * size; surplus pairs are dropped
        std::int64_t m = v_prime / std::gcd(static_cast<std::int64_t>(n),
                                            static_cast<std::int64_t>(v_prime));
        auto total = static_cast<std::int64_t>(pairs.size());
        std::int64_t per = (total / (static_cast<std::int64_t>(v) * m)) * m;
        std::int64_t last = ((total - (v - 1) * per) / m) * m;
        if (per < m || last < m) {
            sized_ok = false;
            per = total / v;
            last = total - (v - 1) * per;
        }
        std::int64_t used = 0;
        for (int i = 0; i < v; ++i) {
            std::int64_t size = i + 1 < v ? per : last;
            for (std::int64_t j = 0; j < size; ++j) {
                zone.groups[static_cast<std::size_t>(i)].push_back(
                    pairs[static_cast<std::size_t>(used++)]);
            }
        }
        zone.dropped.assign(pairs.begin() + static_cast<std::ptrdiff_t>(used), pairs.end());
    } else {
        // spec sizing: round-robin, remainder appended to the last group
        std::size_t base = pairs.size() / static_cast<std::size_t>(v);
        for (std::size_t j = 0; j < base * static_cast<std::size_t>(v); ++j) {
            zone.groups[j % static_cast<std::size_t>(v)].push_back(pairs[j]);
        }
        for (std::size_t j = base * static_cast<std::size_t>(v); j < pairs.size(); ++j) {
            zone.groups.back().push_back(pairs[j]);
        }
    }

    bool ready = sized_ok && weave_a_zone(zone.a_n, k);
    for (auto& group : zone.groups) {
        std::vector<Pair> machine_order = group;
        if (order_group_for_machine(machine_order, k) && group_boundaries_ok(machine_order, k)) {
            group = std::move(machine_order);
        } else {
            ready = false;
            order_group_minimal(group);
        }
    }
    zone.machine_ready = ready;
    return zone;
}

namespace {

// S = S_1 .. S_{k-1} 1^k .. 1^{2k-1} S_k S_{k+1} ...; heavy zones lay out
// the palindromes, then flagged X/Y groups with the Y zones reversed.
class T6Generator : public ZoneGenerator {
public:
    T6Generator(const WitnessParams& params) : params_(params) {
        if (params_.k < 3 || params_.k > 16) {
            throw ParamOutOfRange("t6 needs 3 <= k <= 16");
        }
        if (params_.v < 1 || params_.v > 64) {
            throw ParamOutOfRange("t6 needs 1 <= v <= 64");
        }
        if (params_.alphabet.size() != 2) {
            throw ParamOutOfRange("t6 needs the binary alphabet");
        }
        n_ = params_.zone_start > 0 ? std::max(params_.zone_start, params_.k) : params_.k;
    }

    bool emit_more(std::string& buffer, std::vector<Checkpoint>& checkpoints) override {
        auto pos = [&] { return static_cast<std::int64_t>(buffer.size()); };
        if (!warmup_done_) {
            warmup_done_ = true;
            for (int j = 1; j < params_.k; ++j) {
                checkpoints.push_back({pos(), "warmup_class len=" + std::to_string(j)});
                EnumCursor cursor;
                cursor.str_len = j;
                auto class_size = static_cast<std::uint64_t>(1) << j;
                for (std::uint64_t i = 0; i < class_size; ++i) {
                    for (int o = 0; o < j; ++o) {
                        buffer.push_back(cursor.symbol(params_.alphabet));
                        cursor.advance(params_.alphabet);
                    }
                }
            }
            for (int j = params_.k; j <= 2 * params_.k - 1; ++j) {
                checkpoints.push_back({pos(), "warmup_flag len=" + std::to_string(j)});
                buffer.append(static_cast<std::size_t>(j), '1');
            }
            checkpoints.push_back({pos(), "warmup_end"});
            return true;
        }

        int n = n_++;
        T6Zone zone = t6_enumerate(n, params_.k, params_.v, params_.alphabet,
                                   params_.machine_safe ? params_.v_prime : 0);
        if (params_.machine_safe && !zone.machine_ready) {
            checkpoints.push_back({pos(), "zone_skipped n=" + std::to_string(n)});
            return true;
        }

        checkpoints.push_back({pos(), "zone_start n=" + std::to_string(n)});
        for (const auto& p : zone.a_n) {
            buffer += p;
        }
        std::int64_t f = t6_flag_length(n, params_.k, params_.v);
        checkpoints.push_back({pos(), "flag_start j=1"});
        buffer.append(static_cast<std::size_t>(f), '1');
        for (int i = 1; i <= params_.v; ++i) {
            const auto& group = zone.groups[static_cast<std::size_t>(i - 1)];
            checkpoints.push_back({pos(), "x_start i=" + std::to_string(i)});
            for (const auto& [x, y] : group) {
                (void)y;
                buffer += x;
            }
            checkpoints.push_back({pos(), "flag_start j=" + std::to_string(i + 1)});
            buffer.append(static_cast<std::size_t>(f + i), '1');
            checkpoints.push_back({pos(), "y_start i=" + std::to_string(i)});
            for (auto it = group.rbegin(); it != group.rend(); ++it) {
                buffer += it->second;
            }
        }
        return true;
    }

private:
    WitnessParams params_;
    int n_ = 0;
    bool warmup_done_ = false;
};

} // namespace

std::unique_ptr<ZoneGenerator> make_t6_generator(const WitnessParams& params) {
    return std::make_unique<T6Generator>(params);
}

// --- family dispatch --------------------------------------------------------

std::unique_ptr<ZoneGenerator> make_enum_generator(const WitnessParams& params);
std::unique_ptr<ZoneGenerator> make_t1_generator(const WitnessParams&, std::uint64_t);
std::unique_ptr<ZoneGenerator> make_t2_generator(const WitnessParams&, std::uint64_t);
std::unique_ptr<ZoneGenerator> make_t4_generator(const WitnessParams&, std::uint64_t);
std::unique_ptr<ZoneGenerator> make_t5_generator(const WitnessParams&, std::uint64_t);
std::unique_ptr<ZoneGenerator> make_t7_generator(const WitnessParams&, std::uint64_t);

std::unique_ptr<ZoneGenerator> make_generator(Family family, const WitnessParams& params,
                                              std::uint64_t seed) {
    switch (family) {
        case Family::T1: return make_t1_generator(params, seed);
        case Family::T2: return make_t2_generator(params, seed);
        case Family::T4: return make_t4_generator(params, seed);
        case Family::T5: return make_t5_generator(params, seed);
        case Family::T6: return make_t6_generator(params);
        case Family::Enum: return make_enum_generator(params);
        case Family::T7: return make_t7_generator(params, seed);
    }
    throw ParamOutOfRange("unknown family");
}

} // namespace rbc::wit
