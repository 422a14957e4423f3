#include "rbc/zoo/zoo.hpp"

#include <memory>

#include "rbc/common.hpp"
#include "rbc/pda/engine.hpp"

namespace rbc::zoo {

using pda::RuleKey;
using pda::TableRules;
using pda::Target;
using pda::TransducerSpec;
using pda::kLambda;

std::int64_t t6_warmup_length(int k) {
    std::int64_t w = 0;
    for (int j = 1; j < k; ++j) {
        w += static_cast<std::int64_t>(j) << j;
    }
    for (int j = k; j <= 2 * k - 1; ++j) {
        w += j;
    }
    return w;
}

std::pair<TransducerSpec, TransducerSpec> build_t6_pair(const T6Params& params) {
    if (params.k < 3 || params.k > 16) {
        throw ParamOutOfRange("t6 pair needs 3 <= k <= 16");
    }
    if (params.v < 1 || params.v > 64) {
        throw ParamOutOfRange("t6 pair needs 1 <= v <= 64");
    }
    if (params.v_prime < 2 || params.v_prime > 64) {
        throw ParamOutOfRange("t6 pair needs 2 <= vprime <= 64");
    }
    if (params.alphabet.size() != 2) {
        throw ParamOutOfRange("t6 pair needs the binary alphabet");
    }
    const int k = params.k;
    const int v = params.v;
    const int vp = params.v_prime;
    const Alphabet& sigma = params.alphabet;
    const std::int64_t w = params.include_warmup ? t6_warmup_length(k) : 0;

    // ------------------------------------------------------------------ C
    TransducerSpec c;
    c.name = "t6c";
    c.alphabet = sigma;
    c.stack_alphabet = sigma.symbols() + "z";
    c.stack_bottom = 'z';
    c.lambda_budget = k + 1;
    c.rules = TableRules{};
    auto& t = c.table();

    auto sw = [](std::int64_t j) { return "w" + std::to_string(j); };
    auto sa = [](int r) { return "A" + std::to_string(r); };
    auto sf = [](int j) { return "F" + std::to_string(j); };
    auto sx = [](int j, int r) { return "X" + std::to_string(j) + "_" + std::to_string(r); };
    auto sr = [](int j, int i) { return "R" + std::to_string(j) + "_" + std::to_string(i); };
    auto sy = [](int i, int p) { return "Y" + std::to_string(i) + "_" + std::to_string(p); };
    auto flag_emit = [](int phase, char x) {
        return std::string(static_cast<std::size_t>(phase), '1') + "0" + x;
    };

    c.initial_state = w > 0 ? sw(0) : sa(0);
    const std::string tops = c.stack_alphabet;

    for (std::int64_t j = 0; j < w; ++j) {
        std::string next = j + 1 < w ? sw(j + 1) : sa(0);
        for (char x : sigma.symbols()) {
            for (char g : tops) {
                t.delta[{sw(j), x, g}] = {next, std::string(1, g)};
                t.nu[{sw(j), x, g}] = std::string(1, x);
            }
        }
    }

    // A zone: echo, watch for k consecutive ones
    for (int r = 0; r < k; ++r) {
        for (char x : sigma.symbols()) {
            for (char g : tops) {
                std::string next = x == '1' ? (r + 1 == k ? sf(1) : sa(r + 1)) : sa(0);
                t.delta[{sa(r), x, g}] = {next, std::string(1, g)};
                t.nu[{sa(r), x, g}] = std::string(1, x);
            }
        }
    }

    for (int j = 1; j <= v + 1; ++j) {
        for (char g : tops) {
            // flag: skip ones; the exiting zero opens X_1 (after the first
            // flag) or the previous group's Y zone
            t.delta[{sf(j), '1', g}] = {sf(j), std::string(1, g)};
            t.nu[{sf(j), '1', g}] = "1";
            if (j == 1) {
                t.delta[{sf(j), '0', g}] = {sx(1, 0), std::string{'0', g}};
            } else if (g != 'z') {
                t.delta[{sf(j), '0', g}] = {sy(j - 1, 1), ""};
            } else {
                t.delta[{sf(j), '0', g}] = {sy(j - 1, 1), "z"};
            }
            t.nu[{sf(j), '0', g}] = "0";
        }
    }

    // X zones: push and echo, pop the flag once k consecutive ones arrive
    for (int j = 1; j <= v; ++j) {
        for (int r = 0; r < k; ++r) {
            for (char x : sigma.symbols()) {
                for (char g : tops) {
                    std::string next =
                        x == '1' ? (r + 1 == k ? sr(j, 0) : sx(j, r + 1)) : sx(j, 0);
                    t.delta[{sx(j, r), x, g}] = {next, std::string{x, g}};
                    t.nu[{sx(j, r), x, g}] = std::string(1, x);
                }
            }
        }
        for (int i = 0; i < k; ++i) {
            for (char g : sigma.symbols()) {
                t.delta[{sr(j, i), kLambda, g}] = {i + 1 < k ? sr(j, i + 1) : sf(j + 1), ""};
            }
        }
    }

    // Y zones: pop and verify, one '0' per period
    for (int i = 1; i <= v; ++i) {
        for (int p = 0; p < vp; ++p) {
            for (char x : sigma.symbols()) {
                for (char g : sigma.symbols()) {
                    if (x == g) {
                        t.delta[{sy(i, p), x, g}] = {sy(i, (p + 1) % vp), ""};
                        if ((p + 1) % vp == 0) {
                            t.nu[{sy(i, p), x, g}] = "0";
                        }
                    } else {
                        t.delta[{sy(i, p), x, g}] = {"E", ""};
                        t.nu[{sy(i, p), x, g}] = flag_emit(p + 1, x);
                    }
                }
                // stack spent: the next zone begins
                if (i < v) {
                    t.delta[{sy(i, p), x, 'z'}] = {x == '1' ? sx(i + 1, 1) : sx(i + 1, 0),
                                                   std::string{x, 'z'}};
                } else {
                    t.delta[{sy(i, p), x, 'z'}] = {x == '1' ? sa(1) : sa(0), "z"};
                }
                t.nu[{sy(i, p), x, 'z'}] = std::string(1, x);
            }
        }
    }
    for (char x : sigma.symbols()) {
        for (char g : tops) {
            t.delta[{"E", x, g}] = {"E", std::string(1, g)};
            t.nu[{"E", x, g}] = std::string(1, x);
        }
    }

    // ------------------------------------------------------------------ D
    TransducerSpec d;
    d.name = "t6d";
    d.alphabet = Alphabet(sigma.symbols(), '$');
    d.stack_alphabet = c.stack_alphabet;
    d.stack_bottom = 'z';
    d.lambda_budget = std::max(k, vp) + 2;
    d.initial_state = w > 0 ? "w:0" : "a:0";

    auto c_states = std::make_shared<const std::vector<std::string>>(c.sorted_states());
    int width = pda::trailer_width(c);
    Alphabet dsig = d.alphabet;
    std::int64_t ww = w;
    int kk = k, vv = v, vpp = vp;

    // D state grammar:
    //   w:<j>                warmup echo
    //   a:<r>                A-zone echo, r = current 1-run
    //   f:<j>                flag skip
    //   x:<j>:<r>            X-zone echo+push, r = current 1-run
    //   p:<j>:<i>            pop the flag ones (lambda)
    //   d:<i>:<f|n>:<u>      Y-zone chunks; f = first chunk (v'-1 wide)
    //   w?:<u>               mismatch copy states ("c:<u>")
    //   o                    echo to the end
    //   t:<f|n>:<u>:<digits> trailer
    //   done
    pda::ProceduralRules rules;
    rules.delta = [=](const std::string& q, std::optional<char> in,
                      char top) -> std::optional<Target> {
        auto keep = [&](std::string next) { return Target{std::move(next), std::string(1, top)}; };
        auto pop = [&](std::string next) { return Target{std::move(next), ""}; };
        auto push = [&](std::string next, char x) {
            return Target{std::move(next), std::string{x, top}};
        };
        auto after_y = [&](int i, char x) {
            // the zone after Y_i: X_{i+1}, or the next A zone after Y_v
            if (i < vv) {
                return push("x:" + std::to_string(i + 1) + ":" + (x == '1' ? "1" : "0"), x);
            }
            return keep(x == '1' ? "a:1" : "a:0");
        };

        if (!in) {
            if (q.rfind("p:", 0) == 0) {
                auto sep = q.find(':', 2);
                int j = std::stoi(q.substr(2, sep - 2));
                int i = std::stoi(q.substr(sep + 1));
                if (top == 'z') return std::nullopt;
                return pop(i + 1 < kk ? "p:" + std::to_string(j) + ":" + std::to_string(i + 1)
                                      : "f:" + std::to_string(j + 1));
            }
            if (q.rfind("d:", 0) == 0) {
                auto sep1 = q.find(':', 2);
                bool first = q[sep1 + 1] == 'f';
                std::string u = q.substr(sep1 + 3);
                int target = first ? vpp - 1 : vpp;
                if (top == 'z' || static_cast<int>(u.size()) >= target) return std::nullopt;
                return pop(q.substr(0, sep1 + 3) + u + top);
            }
            return std::nullopt;
        }

        char x = *in;
        if (x == '$') {
            if (q == "done" || q.rfind("t:", 0) == 0) return std::nullopt;
            if (q.rfind("d:", 0) == 0) {
                auto sep1 = q.find(':', 2);
                return keep("t:" + q.substr(sep1 + 1) + ":");
            }
            return keep("t:n::");
        }
        if (q.rfind("t:", 0) == 0) {
            auto sep = q.rfind(':');
            std::string digits = q.substr(sep + 1);
            digits.push_back(x);
            if (static_cast<int>(digits.size()) < width) {
                return keep(q.substr(0, sep + 1) + digits);
            }
            return keep("done");
        }
        if (q == "done") return std::nullopt;

        if (q.rfind("w:", 0) == 0) {
            std::int64_t j = std::stoll(q.substr(2));
            return keep(j + 1 < ww ? "w:" + std::to_string(j + 1) : "a:0");
        }
        if (q.rfind("a:", 0) == 0) {
            int r = std::stoi(q.substr(2));
            if (x == '1') {
                return keep(r + 1 == kk ? "f:1" : "a:" + std::to_string(r + 1));
            }
            return keep("a:0");
        }
        if (q.rfind("f:", 0) == 0) {
            int j = std::stoi(q.substr(2));
            if (x == '1') return keep(q);
            if (j == 1) return push("x:1:0", x);
            // the exiting zero is the first Y symbol: pop it
            std::string next = "d:" + std::to_string(j - 1) + ":f:";
            if (top == 'z') return keep(next);
            return pop(next);
        }
        if (q.rfind("x:", 0) == 0) {
            auto sep = q.find(':', 2);
            int j = std::stoi(q.substr(2, sep - 2));
            int r = std::stoi(q.substr(sep + 1));
            if (x == '1') {
                if (r + 1 == kk) return push("p:" + std::to_string(j) + ":0", x);
                return push("x:" + std::to_string(j) + ":" + std::to_string(r + 1), x);
            }
            return push("x:" + std::to_string(j) + ":0", x);
        }
        if (q.rfind("d:", 0) == 0) {
            auto sep1 = q.find(':', 2);
            int i = std::stoi(q.substr(2, sep1 - 2));
            bool first = q[sep1 + 1] == 'f';
            std::string u = q.substr(sep1 + 3);
            int target = first ? vpp - 1 : vpp;
            if (x == '0') {
                if (static_cast<int>(u.size()) == target) {
                    return keep("d:" + std::to_string(i) + ":n:");
                }
                return after_y(i, x);  // zone leftover emitted via nu
            }
            if (!u.empty()) {
                return keep("c:" + u);  // mismatch flag
            }
            return after_y(i, x);
        }
        if (q.rfind("c:", 0) == 0) {
            if (x == '1') {
                std::string u = q.substr(2);
                return keep(u.empty() ? "c:" : "c:" + u.substr(1));
            }
            return keep("o");
        }
        if (q == "o") {
            return keep("o");
        }
        return std::nullopt;
    };

    rules.nu = [=](const std::string& q, char x, char top) -> std::string {
        (void)top;
        if (x == '$') return {};
        if (q.rfind("w:", 0) == 0 || q.rfind("a:", 0) == 0 || q.rfind("f:", 0) == 0 ||
            q.rfind("x:", 0) == 0 || q == "o") {
            return std::string(1, x);
        }
        if (q.rfind("d:", 0) == 0) {
            auto sep1 = q.find(':', 2);
            bool first = q[sep1 + 1] == 'f';
            std::string u = q.substr(sep1 + 3);
            int target = first ? vpp - 1 : vpp;
            if (x == '0') {
                return static_cast<int>(u.size()) == target ? u : u + "0";
            }
            return u.empty() ? std::string(1, '1') : std::string{};
        }
        if (q.rfind("c:", 0) == 0) {
            if (x == '1') {
                std::string u = q.substr(2);
                return u.empty() ? std::string{} : std::string(1, u[0]);
            }
            return {};
        }
        if (q.rfind("t:", 0) == 0) {
            auto sep2 = q.rfind(':');
            std::string digits = q.substr(sep2 + 1);
            digits.push_back(x);
            if (static_cast<int>(digits.size()) < width) {
                return {};
            }
            auto sep1 = q.find(':', 2);
            bool first = q[sep1 + 1] == 'f';
            std::string u = q.substr(sep1 + 3, sep2 - sep1 - 3);
            std::string final_state = pda::decode_state_trailer_digits(*c_states, dsig, digits);
            if (final_state.size() > 1 && final_state[0] == 'Y') {
                int p = std::stoi(final_state.substr(final_state.find('_') + 1));
                int pending = first ? p - 1 : p;
                if (pending < 0) pending = 0;
                if (pending > static_cast<int>(u.size()))
                    pending = static_cast<int>(u.size());
                return u.substr(0, static_cast<std::size_t>(pending));
            }
            return {};
        }
        return {};
    };

    d.rules = std::move(rules);
    return {std::move(c), std::move(d)};
}

} // namespace rbc::zoo
