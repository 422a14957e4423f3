#include "rbc/zoo/zoo.hpp"

#include <memory>

#include "rbc/common.hpp"
#include "rbc/pda/engine.hpp"
#include "rbc/witness/families.hpp"

namespace rbc::zoo {

using pda::RuleKey;
using pda::TableRules;
using pda::Target;
using pda::TransducerSpec;
using pda::kLambda;

namespace {

std::string ones(int count) { return std::string(static_cast<std::size_t>(count), '1'); }

void validate_t4(const T4Params& p) {
    if (p.k < 2 || p.k > 64) {
        throw ParamOutOfRange("t4 pair needs 2 <= k <= 64");
    }
    if (p.compress_period < 2) {
        throw ParamOutOfRange("t4 pair needs a compress period >= 2");
    }
    // the period must eventually divide the zone lengths k * t_n
    std::int64_t power = p.k;
    bool divides = false;
    for (int i = 0; i < 62 && power > 0; ++i) {
        if (power % p.compress_period == 0) {
            divides = true;
            break;
        }
        power *= p.k;
    }
    if (!divides) {
        throw ParamOutOfRange("compress period never divides the zone lengths k * t_n");
    }
}

} // namespace

std::int64_t t4_counting_prefix(const T4Params& params) {
    if (params.counting_prefix >= 0) {
        return params.counting_prefix;
    }
    // cover the leading zones whose length A does not divide
    std::int64_t b = 0;
    for (std::int64_t n = 1;; ++n) {
        std::int64_t len = static_cast<std::int64_t>(params.k) * wit::t4_block_factor(n, params.k);
        if (len % params.compress_period == 0) {
            break;
        }
        b += 2 * len + params.k;
    }
    return b;
}

std::pair<TransducerSpec, TransducerSpec> build_t4_pair(const T4Params& params) {
    validate_t4(params);
    const int k = params.k;
    const int A = params.compress_period;
    const Alphabet& sigma = params.alphabet;
    const std::int64_t b = t4_counting_prefix(params);

    // ------------------------------------------------------------------ C
    TransducerSpec c;
    c.name = "t4c";
    c.alphabet = sigma;
    c.stack_alphabet = sigma.symbols() + "z";
    c.stack_bottom = 'z';
    c.lambda_budget = k + 2;
    c.rules = TableRules{};
    auto& t = c.table();

    auto state_s = [](std::int64_t j) { return "s" + std::to_string(j); };
    auto state_f = [](bool all_ones, int i) {
        return std::string(all_ones ? "f1_" : "f0_") + std::to_string(i);
    };
    auto state_r = [](int i) { return "r" + std::to_string(i); };
    auto state_c = [](int i) { return "c" + std::to_string(i); };

    c.initial_state = b > 0 ? state_s(0) : "q0";

    std::string tops = c.stack_alphabet;
    for (std::int64_t j = 0; j < b; ++j) {
        std::string next = j + 1 < b ? state_s(j + 1) : "q0";
        for (char x : sigma.symbols()) {
            for (char g : tops) {
                t.delta[{state_s(j), x, g}] = {next, std::string(1, g)};
                t.nu[{state_s(j), x, g}] = std::string(1, x);
            }
        }
    }

    // group scanning: push each symbol, watch the aligned k-group for 1^k
    for (char x : sigma.symbols()) {
        for (char g : tops) {
            std::string push{x, g};
            t.delta[{"q0", x, g}] = {state_f(x == '1', 1), push};
            t.nu[{"q0", x, g}] = std::string(1, x);
            for (int i = 1; i < k; ++i) {
                bool one = x == '1';
                t.delta[{state_f(true, i), x, g}] = {i + 1 == k ? state_f(one, k)
                                                                : state_f(one, i + 1),
                                                     push};
                t.nu[{state_f(true, i), x, g}] = std::string(1, x);
                t.delta[{state_f(false, i), x, g}] = {i + 1 == k ? state_f(false, k)
                                                                 : state_f(false, i + 1),
                                                      push};
                t.nu[{state_f(false, i), x, g}] = std::string(1, x);
            }
        }
    }
    for (char g : tops) {
        // group finished: restart, or pop the flag and start verifying
        t.delta[{state_f(false, k), kLambda, g}] = {"q0", std::string(1, g)};
        t.delta[{state_f(true, k), kLambda, g}] = {state_r(0), std::string(1, g)};
        t.delta[{state_r(k), kLambda, g}] = {state_c(1), std::string(1, g)};
        t.delta[{state_c(A + 1), kLambda, g}] = {state_c(1), std::string(1, g)};
    }
    for (int i = 0; i < k; ++i) {
        for (char g : sigma.symbols()) {  // never fires on the bottom symbol
            t.delta[{state_r(i), kLambda, g}] = {state_r(i + 1), ""};
        }
    }

    // verification of the reversed zone
    for (int i = 1; i <= A; ++i) {
        for (char g : sigma.symbols()) {
            for (char x : sigma.symbols()) {
                if (x == g) {
                    t.delta[{state_c(i), x, g}] = {state_c(i + 1), ""};
                    if (i == A) {
                        t.nu[{state_c(i), x, g}] = "0";
                    }
                } else {
                    t.delta[{state_c(i), x, g}] = {"e", std::string(1, g)};
                    t.nu[{state_c(i), x, g}] = ones(i) + "0" + x;
                }
            }
        }
        // zone exhausted: the next forward zone begins
        for (char x : sigma.symbols()) {
            t.delta[{state_c(i), x, 'z'}] = {state_f(x == '1', 1), std::string{x, 'z'}};
            t.nu[{state_c(i), x, 'z'}] = std::string(1, x);
        }
    }
    for (char x : sigma.symbols()) {
        for (char g : tops) {
            t.delta[{"e", x, g}] = {"e", std::string(1, g)};
            t.nu[{"e", x, g}] = std::string(1, x);
        }
    }

    // ------------------------------------------------------------------ D
    TransducerSpec d;
    d.name = "t4d";
    d.alphabet = Alphabet(sigma.symbols(), '$');
    d.stack_alphabet = c.stack_alphabet;
    d.stack_bottom = 'z';
    d.lambda_budget = k + A + 2;
    d.initial_state = b > 0 ? "cnt:0" : "g:0:1";

    auto c_states = std::make_shared<const std::vector<std::string>>(c.sorted_states());
    int width = pda::trailer_width(c);
    Alphabet dsig = d.alphabet;
    std::int64_t bb = b;
    int kk = k;
    int aa = A;

    pda::ProceduralRules rules;
    rules.delta = [=](const std::string& q, std::optional<char> in,
                      char top) -> std::optional<Target> {
        auto keep = [&](std::string next) { return Target{std::move(next), std::string(1, top)}; };
        auto pop = [&](std::string next) { return Target{std::move(next), ""}; };
        auto push = [&](std::string next, char x) {
            return Target{std::move(next), std::string{x, top}};
        };

        // lambda-rules: the pop-flag chain and the chunk prefetch
        if (!in) {
            if (q.rfind("p:", 0) == 0) {
                int j = std::stoi(q.substr(2));
                if (top == 'z') return std::nullopt;  // unreachable on real streams
                return pop(j + 1 < kk ? "p:" + std::to_string(j + 1) : "d:");
            }
            if (q.rfind("d:", 0) == 0) {
                std::string u = q.substr(2);
                if (top == 'z' || static_cast<int>(u.size()) >= aa) return std::nullopt;
                return pop("d:" + u + top);
            }
            return std::nullopt;
        }

        char x = *in;
        if (x == '$') {
            if (q == "done" || q.rfind("t:", 0) == 0) return std::nullopt;
            std::string u = q.rfind("d:", 0) == 0 ? q.substr(2) : std::string{};
            return keep("t:" + u + ":");
        }
        if (q.rfind("t:", 0) == 0) {
            auto sep = q.rfind(':');
            std::string u = q.substr(2, sep - 2);
            std::string digits = q.substr(sep + 1);
            digits.push_back(x);
            if (static_cast<int>(digits.size()) < width) {
                return keep("t:" + u + ":" + digits);
            }
            return keep("done");
        }
        if (q == "done") return std::nullopt;

        if (q.rfind("cnt:", 0) == 0) {
            std::int64_t j = std::stoll(q.substr(4));
            return keep(j + 1 < bb ? "cnt:" + std::to_string(j + 1) : "g:0:1");
        }
        if (q.rfind("g:", 0) == 0) {
            auto sep = q.find(':', 2);
            int i = std::stoi(q.substr(2, sep - 2));
            bool all_ones = q[sep + 1] == '1';
            bool one = all_ones && x == '1';
            if (i + 1 == kk) {
                return push(one ? "p:0" : "g:0:1", x);
            }
            return push("g:" + std::to_string(i + 1) + ":" + (one ? "1" : "0"), x);
        }
        if (q.rfind("d:", 0) == 0) {
            std::string u = q.substr(2);
            if (x == '0') {
                if (static_cast<int>(u.size()) == aa) {
                    return keep("d:");  // token; prefetch refills via lambda
                }
                // partial chunk: the zone is spent, a forward zone begins
                return push("g:1:" + std::string(x == '1' ? "1" : "0"), x);
            }
            if (!u.empty()) {
                return keep("w:" + u);  // mismatch flag
            }
            return push("g:1:" + std::string(x == '1' ? "1" : "0"), x);
        }
        if (q.rfind("w:", 0) == 0) {
            if (x == '1') {
                std::string u = q.substr(2);
                return keep(u.empty() ? "w:" : "w:" + u.substr(1));
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
        if (q.rfind("cnt:", 0) == 0 || q.rfind("g:", 0) == 0 || q == "o") {
            return std::string(1, x);
        }
        if (q.rfind("d:", 0) == 0) {
            if (x == '$') return {};
            std::string u = q.substr(2);
            if (x == '0') {
                // a full chunk is one verified period; a partial chunk is
                // the zone leftover followed by the first forward symbol
                return static_cast<int>(u.size()) == aa ? u : u + "0";
            }
            // '1': either a forward zone starting with 1 (nothing buffered)
            // or the start of a mismatch flag (emission deferred)
            return u.empty() ? std::string(1, '1') : std::string{};
        }
        if (q.rfind("w:", 0) == 0) {
            if (x == '1') {
                std::string u = q.substr(2);
                return u.empty() ? std::string{} : std::string(1, u[0]);
            }
            return {};
        }
        if (q.rfind("t:", 0) == 0) {
            auto sep = q.rfind(':');
            std::string u = q.substr(2, sep - 2);
            std::string digits = q.substr(sep + 1);
            digits.push_back(x);
            if (static_cast<int>(digits.size()) < width) {
                return {};
            }
            std::string final_state = pda::decode_state_trailer_digits(*c_states, dsig, digits);
            if (final_state.size() > 1 && final_state[0] == 'c') {
                int phase = std::stoi(final_state.substr(1));
                int pending = std::min<int>(phase - 1, static_cast<int>(u.size()));
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
