#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbc/pda/spec.hpp"

namespace rbc::pda {

struct Violation {
    enum class Kind { BottomPreservation, Determinism, LambdaPop, StackSymbol, StateName };
    Kind kind;
    std::string where;
    std::string message;
};

// Checks the three structural invariants of a tabulated spec (bottom
// preservation, lambda/symbol determinism, lambda-rules pop exactly the
// top) plus basic well-formedness of the referenced symbols. Procedural
// specs return no violations here; they are validated lazily during runs.
std::vector<Violation> validate_spec(const TransducerSpec& spec);

// Executable form of a spec. Compiling a tabulated spec builds dense
// dispatch tables; construction is the expensive part, runs are cheap.
// A Machine holds no mutable run state and may be shared across threads.
class Machine {
public:
    explicit Machine(const TransducerSpec& spec);

    const TransducerSpec& spec() const { return *spec_; }

    MachineConfig initial_config(bool run_initial_lambda = true) const;

    // Emits nu(q, b, top), applies delta(q, b, top), then fires the
    // following gap's lambda-rules. Appends to *trace when given.
    std::string step_symbol(MachineConfig& config, char symbol,
                            std::vector<TraceStep>* trace = nullptr,
                            std::int64_t position = -1) const;

    RunResult run(std::string_view input, bool endmarked = false,
                  bool want_trace = false) const;

    struct Compiled;  // dense dispatch tables; defined in the implementation

private:
    void lambda_closure(MachineConfig& config, std::vector<TraceStep>* trace,
                        std::int64_t position) const;
    std::optional<Target> delta(const std::string& state, std::optional<char> input,
                                char top) const;
    std::string nu(const std::string& state, char input, char top) const;

    const TransducerSpec* spec_;
    std::shared_ptr<const Compiled> compiled_;  // null for procedural specs
};

// One-shot convenience wrappers.
std::string step_symbol(const TransducerSpec& spec, MachineConfig& config, char symbol);
RunResult run(const TransducerSpec& spec, std::string_view input, bool endmarked = false,
              bool want_trace = false);

struct IlVerdict {
    bool ok = true;
    // First collision found: two distinct inputs with equal (output, state).
    std::optional<std::pair<std::string, std::string>> counterexample;
};

// Exhaustively maps every w with |w| <= max_len to (C(w), final state) --
// or (C(w$), state before $) when endmarked -- and reports the first
// collision. The endmarker is never part of the enumerated w.
IlVerdict check_il(const TransducerSpec& spec, int max_len, bool endmarked = false);

// Width (in alphabet symbols) of the final-state trailer block for a
// tabulated compressor: ceil(log_|Sigma| |Q|).
int trailer_width(const TransducerSpec& compressor);

// Fixed-width base-|Sigma| encoding of a state's canonical id.
std::string encode_state_trailer(const TransducerSpec& compressor, const std::string& state);
std::string decode_state_trailer(const TransducerSpec& compressor, std::string_view trailer);
std::string decode_state_trailer_digits(const std::vector<std::string>& sorted_states,
                                        const Alphabet& alphabet, std::string_view digits);

struct InverseVerdict {
    bool ok = false;
    std::string compressed;
    std::string final_state;
    std::string decompressed;
};

// Runs C on `input`, then D on C(input) followed by D's endmarker and the
// fixed-width trailer encoding C's final state; ok iff D re-emits `input`.
InverseVerdict run_inverse_pair(const TransducerSpec& c_spec, const TransducerSpec& d_spec,
                                std::string_view input);

enum class SymbolClass { Call, Return, Internal };

struct VisiblyVerdict {
    bool ok = true;
    std::vector<std::string> violations;
};

// ok iff the tabulated spec has no lambda-rules and every symbol transition
// has net stack effect +1 on calls, -1 on returns (0 when the stack holds
// only the bottom symbol), and 0 on internals.
VisiblyVerdict check_visibly(const TransducerSpec& spec,
                             const std::map<char, SymbolClass>& partition);

} // namespace rbc::pda
