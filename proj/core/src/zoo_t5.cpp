#include "rbc/zoo/zoo.hpp"

#include "rbc/common.hpp"

namespace rbc::zoo {

using pda::TableRules;
using pda::TransducerSpec;

Alphabet t5_alphabet(int t_half) {
    static const std::string digits = "0123456789abcdefghijklmnopqrstuv";
    if (t_half < 1 || 2 * t_half > static_cast<int>(digits.size())) {
        throw ParamOutOfRange("t5 needs 1 <= t <= 16");
    }
    return Alphabet(digits.substr(0, static_cast<std::size_t>(2 * t_half)));
}

TransducerSpec build_t5_visibly(const T5Params& params) {
    if (params.v_prime < 2 || params.v_prime > 64) {
        throw ParamOutOfRange("t5 needs 2 <= vprime <= 64");
    }
    Alphabet sigma = t5_alphabet(params.t_half);
    const int t = params.t_half;
    const int vp = params.v_prime;

    TransducerSpec spec;
    spec.name = "t5";
    spec.alphabet = sigma;
    spec.stack_alphabet = sigma.symbols().substr(0, static_cast<std::size_t>(t)) + "z";
    spec.stack_bottom = 'z';
    spec.lambda_budget = 0;
    spec.rules = TableRules{};
    spec.initial_state = "y";
    auto& table = spec.table();

    auto is_call = [&](char x) { return sigma.index(x) < t; };
    auto shifted = [&](char g) { return sigma.symbol(sigma.index(g) + t); };
    auto mode = [](int i) { return "m" + std::to_string(i); };
    auto flag = [&](int phase, char x) {
        return std::string(static_cast<std::size_t>(phase), '1') + "0" + x;
    };

    std::vector<std::string> compare_states{"y"};
    for (int i = 0; i < vp; ++i) {
        compare_states.push_back(mode(i));
    }

    for (char x : sigma.symbols()) {
        for (char g : spec.stack_alphabet) {
            if (is_call(x)) {
                // every call is pushed and echoed, from any mode
                for (const auto& q : compare_states) {
                    table.delta[{q, x, g}] = {"y", std::string{x, g}};
                    table.nu[{q, x, g}] = std::string(1, x);
                }
                table.delta[{"e", x, g}] = {"e", std::string{x, g}};
                table.nu[{"e", x, g}] = std::string(1, x);
                continue;
            }
            // returns pop and verify; on the empty stack they only flag
            for (int qi = 0; qi < static_cast<int>(compare_states.size()); ++qi) {
                const auto& q = compare_states[static_cast<std::size_t>(qi)];
                int consumed = qi == 0 ? 0 : qi - 1;  // symbols seen this period
                if (g == 'z') {
                    table.delta[{q, x, g}] = {"e", "z"};
                    table.nu[{q, x, g}] = flag(consumed + 1, x);
                } else if (x == shifted(g)) {
                    int next = (consumed + 1) % vp;
                    table.delta[{q, x, g}] = {mode(next), ""};
                    if ((consumed + 1) % vp == 0) {
                        table.nu[{q, x, g}] = "0";
                    }
                } else {
                    table.delta[{q, x, g}] = {"e", ""};
                    table.nu[{q, x, g}] = flag(consumed + 1, x);
                }
            }
            if (g == 'z') {
                table.delta[{"e", x, g}] = {"e", "z"};
            } else {
                table.delta[{"e", x, g}] = {"e", ""};
            }
            table.nu[{"e", x, g}] = std::string(1, x);
        }
    }
    return spec;
}

} // namespace rbc::zoo
