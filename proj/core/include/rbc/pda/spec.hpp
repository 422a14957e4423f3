#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rbc/alphabet.hpp"

namespace rbc::pda {

// Transition target: successor state plus the string pushed in place of the
// consumed stack top. Push strings are written top-first: push[0] is the new
// top of the stack. An empty push string pops the consumed top outright.
struct Target {
    std::string state;
    std::string push;

    bool operator==(const Target&) const = default;
};

// Key of a tabulated rule. `input == kLambda` marks a lambda-rule.
inline constexpr char kLambda = '\0';

struct RuleKey {
    std::string state;
    char input;     // symbol, endmarker, or kLambda
    char stack_top;

    auto operator<=>(const RuleKey&) const = default;
};

struct TableRules {
    std::map<RuleKey, Target> delta;
    std::map<RuleKey, std::string> nu;  // absent entry emits nothing
};

// Rules given as pure functions over string-encoded states. Semantics are
// identical to tabulated rules; used for parametric state families that are
// too large to materialize.
struct ProceduralRules {
    using DeltaFn = std::function<std::optional<Target>(
        const std::string& state, std::optional<char> input, char stack_top)>;
    using NuFn = std::function<std::string(
        const std::string& state, char input, char stack_top)>;

    DeltaFn delta;
    NuFn nu;
};

// A bounded pushdown compressor as data: states with an initial state, a
// stack alphabet with a bottom symbol, the transition map delta, the output
// map nu, and a per-gap cap on consecutive lambda-rules.
struct TransducerSpec {
    std::string name;
    Alphabet alphabet;
    std::string stack_alphabet;  // distinct chars, must contain stack_bottom
    char stack_bottom = 'z';
    std::string initial_state = "q0";
    int lambda_budget = 0;
    std::variant<TableRules, ProceduralRules> rules;

    bool tabulated() const { return std::holds_alternative<TableRules>(rules); }
    const TableRules& table() const { return std::get<TableRules>(rules); }
    TableRules& table() { return std::get<TableRules>(rules); }
    const ProceduralRules& procedural() const { return std::get<ProceduralRules>(rules); }

    // All states mentioned by a tabulated spec (rules plus the initial
    // state), sorted; the index in this list is the state's canonical id
    // used by the final-state trailer encoding.
    std::vector<std::string> sorted_states() const;
};

// Snapshot of a running machine between steps.
struct MachineConfig {
    std::string state;
    std::string stack;   // bottom at front, top at back; never empty
    int lambda_used = 0; // lambda-rules fired since the last consumed symbol
};

struct TraceStep {
    bool is_lambda = false;
    std::string state_before;
    char input = kLambda;        // consumed symbol; kLambda for lambda-rules
    std::string emitted;
    std::size_t stack_size_after = 0;
    char stack_bottom_after = 0;
};

struct RunResult {
    std::string output;
    std::string final_state;
    std::int64_t consumed = 0;
    std::vector<TraceStep> trace;  // filled only when requested
};

} // namespace rbc::pda
