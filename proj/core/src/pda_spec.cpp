#include "rbc/pda/spec.hpp"

#include <algorithm>
#include <set>

namespace rbc::pda {

std::vector<std::string> TransducerSpec::sorted_states() const {
    std::set<std::string> states;
    states.insert(initial_state);
    if (tabulated()) {
        for (const auto& [key, target] : table().delta) {
            states.insert(key.state);
            states.insert(target.state);
        }
        for (const auto& [key, out] : table().nu) {
            (void)out;
            states.insert(key.state);
        }
    }
    return {states.begin(), states.end()};
}

} // namespace rbc::pda
