#include "rbc/zoo/zoo.hpp"

#include <deque>
#include <set>

#include "rbc/common.hpp"

namespace rbc::zoo {

using pda::RuleKey;
using pda::TableRules;
using pda::TransducerSpec;
using pda::kLambda;

TransducerSpec tabulate(const TransducerSpec& spec, std::size_t max_states) {
    if (spec.tabulated()) {
        return spec;
    }
    const auto& proc = spec.procedural();

    TransducerSpec out = spec;
    out.rules = TableRules{};
    auto& table = out.table();

    std::string inputs = spec.alphabet.symbols();
    if (spec.alphabet.endmarker()) {
        inputs.push_back(*spec.alphabet.endmarker());
    }

    std::set<std::string> seen{spec.initial_state};
    std::deque<std::string> work{spec.initial_state};
    while (!work.empty()) {
        std::string q = work.front();
        work.pop_front();
        for (char g : spec.stack_alphabet) {
            auto enqueue = [&](const std::string& state) {
                if (seen.insert(state).second) {
                    if (seen.size() > max_states) {
                        throw ParamOutOfRange("tabulation exceeds the state budget");
                    }
                    work.push_back(state);
                }
            };
            if (auto target = proc.delta(q, std::nullopt, g)) {
                table.delta[{q, kLambda, g}] = *target;
                enqueue(target->state);
            }
            for (char x : inputs) {
                if (auto target = proc.delta(q, x, g)) {
                    table.delta[{q, x, g}] = *target;
                    enqueue(target->state);
                    std::string emitted = proc.nu(q, x, g);
                    if (!emitted.empty()) {
                        table.nu[{q, x, g}] = emitted;
                    }
                }
            }
        }
    }
    return out;
}

} // namespace rbc::zoo
