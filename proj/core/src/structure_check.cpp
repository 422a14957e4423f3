#include "rbc/witness/structure_check.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rbc/bits.hpp"
#include "rbc/witness/families.hpp"

namespace rbc::wit {

std::int64_t t6_warmup_expected(int k);

namespace {

using Marker = std::pair<std::int64_t, std::string>;

bool all_ones(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '1'; });
}

bool has_flag_run(std::string_view s, int k) {
    int run = 0;
    for (char c : s) {
        run = c == '1' ? run + 1 : 0;
        if (run >= k) return true;
    }
    return false;
}

// Markers inside [0, len), plus a sentinel at len for span arithmetic.
std::vector<Marker> markers_upto(const WitnessStream& stream, std::int64_t len) {
    std::vector<Marker> ms;
    for (const auto& cp : stream.checkpoints()) {
        if (cp.position < len) {
            ms.emplace_back(cp.position, cp.kind);
        }
    }
    ms.emplace_back(len, "end");
    return ms;
}

std::int64_t marker_value(const std::string& kind) {
    auto eq = kind.rfind('=');
    return std::stoll(kind.substr(eq + 1));
}

void check_t4(std::string_view s, const std::vector<Marker>& ms, const WitnessParams& p,
              StructureReport& rep) {
    int k = p.k;
    for (std::size_t i = 0; i + 3 < ms.size(); i += 3) {
        if (ms[i].second.rfind("zone_start", 0) != 0 || ms[i + 1].second != "flag_start" ||
            ms[i + 2].second != "yrev_start") {
            rep.fail("unexpected checkpoint order at " + std::to_string(ms[i].first));
            return;
        }
        std::int64_t n = marker_value(ms[i].second);
        std::int64_t expect_y = k * t4_block_factor(n, k);
        auto y = s.substr(static_cast<std::size_t>(ms[i].first),
                          static_cast<std::size_t>(ms[i + 1].first - ms[i].first));
        auto flag = s.substr(static_cast<std::size_t>(ms[i + 1].first),
                             static_cast<std::size_t>(ms[i + 2].first - ms[i + 1].first));
        auto yrev = s.substr(static_cast<std::size_t>(ms[i + 2].first),
                             static_cast<std::size_t>(ms[i + 3].first - ms[i + 2].first));
        if (static_cast<std::int64_t>(y.size()) != expect_y) {
            rep.fail("zone " + std::to_string(n) + ": forward length " +
                     std::to_string(y.size()) + " != " + std::to_string(expect_y));
        }
        if (static_cast<std::int64_t>(flag.size()) != k || !all_ones(flag)) {
            rep.fail("zone " + std::to_string(n) + ": bad flag");
        }
        for (std::size_t b = 0; b + static_cast<std::size_t>(k) <= y.size();
             b += static_cast<std::size_t>(k)) {
            if (all_ones(y.substr(b, static_cast<std::size_t>(k)))) {
                rep.fail("zone " + std::to_string(n) + ": aligned all-ones block at " +
                         std::to_string(b));
            }
        }
        std::string rev(y.rbegin(), y.rend());
        if (std::string_view(rev).substr(0, yrev.size()) != yrev) {
            rep.fail("zone " + std::to_string(n) + ": reversed zone mismatch");
        }
        ++rep.zones_checked;
        if (i + 3 == ms.size() - 1) break;
    }
}

void check_t5(std::string_view s, const std::vector<Marker>& ms, const WitnessParams& p,
              StructureReport& rep) {
    int t = p.alphabet.size() / 2;
    for (std::size_t i = 0; i + 2 < ms.size(); i += 2) {
        if (ms[i].second.rfind("zone_start", 0) != 0 || ms[i + 1].second != "return_start") {
            rep.fail("unexpected checkpoint order at " + std::to_string(ms[i].first));
            return;
        }
        std::int64_t n = marker_value(ms[i].second);
        auto y = s.substr(static_cast<std::size_t>(ms[i].first),
                          static_cast<std::size_t>(ms[i + 1].first - ms[i].first));
        auto ret = s.substr(static_cast<std::size_t>(ms[i + 1].first),
                            static_cast<std::size_t>(ms[i + 2].first - ms[i + 1].first));
        std::int64_t expect = static_cast<std::int64_t>(p.v_prime) * t4_block_factor(n, 2);
        if (static_cast<std::int64_t>(y.size()) != expect) {
            rep.fail("zone " + std::to_string(n) + ": call length " + std::to_string(y.size()) +
                     " != " + std::to_string(expect));
        }
        for (std::size_t j = 0; j < ret.size(); ++j) {
            char call = y[y.size() - 1 - j];
            if (p.alphabet.index(ret[j]) != p.alphabet.index(call) + t) {
                rep.fail("zone " + std::to_string(n) + ": return zone is not the shifted "
                         "reversal at offset " + std::to_string(j));
                break;
            }
        }
        ++rep.zones_checked;
        if (i + 2 == ms.size() - 1) break;
    }
}

void check_t2(std::string_view s, const std::vector<Marker>& ms, const WitnessParams& p,
              StructureReport& rep) {
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
        if (ms[i].second.rfind("zone_start", 0) != 0) continue;
        std::int64_t n = marker_value(ms[i].second);
        auto zone = s.substr(static_cast<std::size_t>(ms[i].first),
                             static_cast<std::size_t>(ms[i + 1].first - ms[i].first));
        std::int64_t copies = 1;
        for (int e = 0; e < p.c_exp; ++e) copies *= n;
        bool last = i + 1 == ms.size() - 1;
        if (!last && static_cast<std::int64_t>(zone.size()) != copies * n) {
            rep.fail("zone " + std::to_string(n) + ": length " + std::to_string(zone.size()) +
                     " != n^(c+1) = " + std::to_string(copies * n));
        }
        auto block = zone.substr(0, static_cast<std::size_t>(n));
        for (std::size_t off = 0; off < zone.size(); off += static_cast<std::size_t>(n)) {
            auto piece = zone.substr(off, static_cast<std::size_t>(n));
            if (piece != block.substr(0, piece.size())) {
                rep.fail("zone " + std::to_string(n) + ": copy at offset " +
                         std::to_string(off) + " differs from the block");
                break;
            }
        }
        ++rep.zones_checked;
    }
}

void check_t1(std::string_view s, const std::vector<Marker>& ms, const WitnessParams& p,
              StructureReport& rep) {
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
        if (ms[i].second.rfind("zone_start", 0) != 0) continue;
        std::int64_t n = marker_value(ms[i].second);
        auto zone = s.substr(static_cast<std::size_t>(ms[i].first),
                             static_cast<std::size_t>(ms[i + 1].first - ms[i].first));
        bool last = i + 1 == ms.size() - 1;
        std::int64_t expect = t1_zone_length(static_cast<int>(n), p.alphabet);
        if (!last && static_cast<std::int64_t>(zone.size()) != expect) {
            rep.fail("zone " + std::to_string(n) + ": length " + std::to_string(zone.size()) +
                     " != " + std::to_string(expect));
        }
        if (zone.size() % static_cast<std::size_t>(n) != 0 && !last) {
            rep.fail("zone " + std::to_string(n) + ": not block-aligned");
        }
        std::set<std::string_view> distinct;
        for (std::size_t off = 0; off + static_cast<std::size_t>(n) <= zone.size();
             off += static_cast<std::size_t>(n)) {
            distinct.insert(zone.substr(off, static_cast<std::size_t>(n)));
        }
        if (distinct.size() > static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
            rep.fail("zone " + std::to_string(n) + ": more than n^2 distinct blocks");
        }
        ++rep.zones_checked;
    }
}

void check_t7(std::string_view s, const std::vector<Marker>& ms, const WitnessParams&,
              StructureReport& rep) {
    for (std::size_t i = 0; i + 2 < ms.size(); i += 2) {
        if (ms[i].second.rfind("zone_start", 0) != 0 ||
            ms[i + 1].second.rfind("repeats_start", 0) != 0) {
            rep.fail("unexpected checkpoint order at " + std::to_string(ms[i].first));
            return;
        }
        auto n = static_cast<std::int64_t>(marker_value(ms[i].second));
        auto fresh = s.substr(static_cast<std::size_t>(ms[i].first),
                              static_cast<std::size_t>(ms[i + 1].first - ms[i].first));
        auto reps = s.substr(static_cast<std::size_t>(ms[i + 1].first),
                             static_cast<std::size_t>(ms[i + 2].first - ms[i + 1].first));
        bool last = i + 2 == ms.size() - 1;
        if (static_cast<std::int64_t>(fresh.size()) != n * n * n) {
            rep.fail("zone " + std::to_string(n) + ": fresh section is not n^3 symbols");
            return;
        }
        int width = 2 * ceil_log2(static_cast<std::uint64_t>(n));
        std::int64_t record = width + n;
        if (!last && static_cast<std::int64_t>(reps.size()) != (1ll << n) * record) {
            rep.fail("zone " + std::to_string(n) + ": repeat section length is off");
        }
        for (std::size_t off = 0; off + static_cast<std::size_t>(record) <= reps.size();
             off += static_cast<std::size_t>(record)) {
            std::uint64_t idx = 0;
            for (int b = 0; b < width; ++b) {
                idx = (idx << 1) | (reps[off + static_cast<std::size_t>(b)] == '1' ? 1u : 0u);
            }
            if (idx >= static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n)) {
                rep.fail("zone " + std::to_string(n) + ": index out of range at offset " +
                         std::to_string(off));
                return;
            }
            auto copy = reps.substr(off + static_cast<std::size_t>(width),
                                    static_cast<std::size_t>(n));
            auto block = fresh.substr(static_cast<std::size_t>(idx) * static_cast<std::size_t>(n),
                                      static_cast<std::size_t>(n));
            if (copy != block) {
                rep.fail("zone " + std::to_string(n) + ": copy disagrees with block " +
                         std::to_string(idx));
                return;
            }
        }
        ++rep.zones_checked;
        if (last) break;
    }
}

void check_enum(std::string_view s, const WitnessParams& p, StructureReport& rep) {
    // independent regeneration: string counter with carry
    std::string current = "0";
    std::size_t pos = 0;
    auto bump = [&](std::string& w) {
        int i = static_cast<int>(w.size()) - 1;
        for (; i >= 0; --i) {
            int idx = p.alphabet.index(w[static_cast<std::size_t>(i)]);
            if (idx + 1 < p.alphabet.size()) {
                w[static_cast<std::size_t>(i)] = p.alphabet.symbol(idx + 1);
                return;
            }
            w[static_cast<std::size_t>(i)] = p.alphabet.symbol(0);
        }
        w.insert(w.begin(), p.alphabet.symbol(0));
    };
    while (pos < s.size()) {
        for (char c : current) {
            if (pos >= s.size()) return;
            if (s[pos] != c) {
                rep.fail("enumeration mismatch at position " + std::to_string(pos));
                return;
            }
            ++pos;
        }
        bump(current);
    }
}

void check_t6(std::string_view s, const std::vector<Marker>& ms, const WitnessParams& p,
              StructureReport& rep) {
    int k = p.k;
    // warmup: all strings shorter than k, then the bridge flags
    std::size_t i = 0;
    std::int64_t warmup_end = -1;
    for (; i < ms.size(); ++i) {
        if (ms[i].second == "warmup_end") {
            warmup_end = ms[i].first;
            ++i;
            break;
        }
    }
    if (warmup_end < 0) {
        return;  // prefix too short to include the warmup
    }
    if (warmup_end != t6_warmup_expected(k)) {
        rep.fail("warmup length " + std::to_string(warmup_end) + " != expected " +
                 std::to_string(t6_warmup_expected(k)));
    }
    {
        StructureReport enum_rep;
        std::int64_t enum_len = warmup_end;
        for (int j = k; j <= 2 * k - 1; ++j) enum_len -= j;
        check_enum(s.substr(0, static_cast<std::size_t>(enum_len)), p, enum_rep);
        if (!enum_rep.ok) {
            rep.fail("warmup enumeration: " + enum_rep.problems.front());
        }
        if (!all_ones(s.substr(static_cast<std::size_t>(enum_len),
                               static_cast<std::size_t>(warmup_end - enum_len)))) {
            rep.fail("warmup bridge flags are not all ones");
        }
    }

    // heavy zones
    while (i < ms.size() && ms[i].second != "end") {
        if (ms[i].second.rfind("zone_skipped", 0) == 0) {
            ++i;
            continue;
        }
        if (ms[i].second.rfind("zone_start", 0) != 0) {
            rep.fail("unexpected marker " + ms[i].second);
            return;
        }
        auto n = static_cast<int>(marker_value(ms[i].second));
        // collect this zone's markers: flag_start j=1, then v times
        // (x_start, flag_start, y_start), then the next zone_start/end
        std::size_t zone_first = i;
        std::size_t j = i + 1;
        while (j < ms.size() && ms[j].second.rfind("zone_start", 0) != 0 &&
               ms[j].second.rfind("zone_skipped", 0) != 0 && ms[j].second != "end") {
            ++j;
        }
        bool complete_zone = j < ms.size() && ms[j].second != "end";
        if (!complete_zone) {
            break;  // partial final zone: structural spans not all present
        }
        auto span = [&](std::size_t a, std::size_t b) {
            return s.substr(static_cast<std::size_t>(ms[a].first),
                            static_cast<std::size_t>(ms[b].first - ms[a].first));
        };
        auto t_n = t6_strings(n, k, p.alphabet);
        std::set<std::string> t_set(t_n.begin(), t_n.end());
        std::map<std::string, int> seen;

        // A zone
        auto a_zone = span(zone_first, zone_first + 1);
        if (a_zone.size() % static_cast<std::size_t>(n) != 0) {
            rep.fail("zone " + std::to_string(n) + ": A zone not element-aligned");
            return;
        }
        for (std::size_t off = 0; off < a_zone.size(); off += static_cast<std::size_t>(n)) {
            std::string piece(a_zone.substr(off, static_cast<std::size_t>(n)));
            std::string rev(piece.rbegin(), piece.rend());
            if (piece != rev || t_set.count(piece) == 0) {
                rep.fail("zone " + std::to_string(n) + ": A element is not a palindrome of the "
                         "zone set");
                return;
            }
            ++seen[piece];
        }
        std::int64_t f = t6_flag_length(n, k, p.v);
        std::vector<std::string_view> x_zones, y_zones;
        for (std::size_t q = zone_first; q < j; ++q) {
            if (ms[q].second.rfind("flag_start", 0) == 0) {
                auto jv = marker_value(ms[q].second);
                auto flag = span(q, q + 1);
                if (!all_ones(flag) ||
                    static_cast<std::int64_t>(flag.size()) != f + jv - 1) {
                    rep.fail("zone " + std::to_string(n) + ": flag " + std::to_string(jv) +
                             " is not 1^" + std::to_string(f + jv - 1));
                    return;
                }
            } else if (ms[q].second.rfind("x_start", 0) == 0) {
                x_zones.push_back(span(q, q + 1));
            } else if (ms[q].second.rfind("y_start", 0) == 0) {
                y_zones.push_back(span(q, q + 1));
            }
        }
        if (static_cast<int>(x_zones.size()) != p.v ||
            static_cast<int>(y_zones.size()) != p.v) {
            rep.fail("zone " + std::to_string(n) + ": expected " + std::to_string(p.v) +
                     " X/Y zones");
            return;
        }
        for (int g = 0; g < p.v; ++g) {
            auto x = x_zones[static_cast<std::size_t>(g)];
            auto y = y_zones[static_cast<std::size_t>(g)];
            std::string xrev(x.rbegin(), x.rend());
            if (xrev != y) {
                rep.fail("zone " + std::to_string(n) + ": Y zone " + std::to_string(g + 1) +
                         " is not the reversed X zone");
                return;
            }
            if (x.size() % static_cast<std::size_t>(n) != 0) {
                rep.fail("zone " + std::to_string(n) + ": X zone not element-aligned");
                return;
            }
            for (std::size_t off = 0; off < x.size(); off += static_cast<std::size_t>(n)) {
                std::string piece(x.substr(off, static_cast<std::size_t>(n)));
                std::string rev(piece.rbegin(), piece.rend());
                if (t_set.count(piece) == 0) {
                    rep.fail("zone " + std::to_string(n) + ": X element outside the zone set");
                    return;
                }
                ++seen[piece];
                ++seen[rev];
            }
            if (p.machine_safe) {
                if (x.empty() || x.front() != '0' || y.empty() || y.front() != '0') {
                    rep.fail("zone " + std::to_string(n) + ": machine-safe zone head is not 0");
                }
                if (has_flag_run(x, k)) {
                    rep.fail("zone " + std::to_string(n) + ": 1^k run inside an X zone");
                }
                if (p.v_prime > 0 &&
                    static_cast<std::int64_t>(x.size()) % p.v_prime != 0) {
                    rep.fail("zone " + std::to_string(n) + ": period does not divide the zone");
                }
            }
        }
        if (p.machine_safe && has_flag_run(a_zone, k)) {
            rep.fail("zone " + std::to_string(n) + ": 1^k run inside the A zone");
        }
        // coverage: every element exactly once, up to dropped reversal
        // pairs in machine-safe sizing
        std::int64_t missing = 0;
        for (const auto& w : t_n) {
            auto it = seen.find(w);
            if (it == seen.end()) {
                ++missing;
            } else if (it->second != 1) {
                rep.fail("zone " + std::to_string(n) + ": element emitted " +
                         std::to_string(it->second) + " times");
                return;
            }
        }
        if (p.machine_safe) {
            if (missing % 2 != 0 ||
                missing > 2ll * p.v * std::max(1, p.v_prime)) {
                rep.fail("zone " + std::to_string(n) + ": " + std::to_string(missing) +
                         " elements missing");
            }
        } else if (missing != 0) {
            rep.fail("zone " + std::to_string(n) + ": " + std::to_string(missing) +
                     " elements missing");
        }
        ++rep.zones_checked;
        i = j;
    }
}

} // namespace

std::int64_t t6_warmup_expected(int k) {
    std::int64_t w = 0;
    for (int j = 1; j < k; ++j) {
        w += static_cast<std::int64_t>(j) << j;
    }
    for (int j = k; j <= 2 * k - 1; ++j) {
        w += j;
    }
    return w;
}

StructureReport check_structure(WitnessStream& stream, std::int64_t prefix_len) {
    StructureReport rep;
    auto s = stream.prefix(prefix_len);
    auto ms = markers_upto(stream, prefix_len);
    const auto& p = stream.params();
    switch (stream.family()) {
        case Family::T1: check_t1(s, ms, p, rep); break;
        case Family::T2: check_t2(s, ms, p, rep); break;
        case Family::T4: check_t4(s, ms, p, rep); break;
        case Family::T5: check_t5(s, ms, p, rep); break;
        case Family::T6: check_t6(s, ms, p, rep); break;
        case Family::Enum: check_enum(s, p, rep); break;
        case Family::T7: check_t7(s, ms, p, rep); break;
    }
    return rep;
}

} // namespace rbc::wit
