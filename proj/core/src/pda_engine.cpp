#include "rbc/pda/engine.hpp"

#include <array>
#include <unordered_map>

#include "rbc/common.hpp"

namespace rbc::pda {

namespace {

std::string describe_key(const RuleKey& key) {
    std::string s = key.state;
    s += " / ";
    s += key.input == kLambda ? '~' : key.input;
    s += " / ";
    s += key.stack_top;
    return s;
}

} // namespace

std::vector<Violation> validate_spec(const TransducerSpec& spec) {
    std::vector<Violation> out;
    if (!spec.tabulated()) {
        return out;  // procedural rules are checked during runs
    }
    const auto& table = spec.table();
    for (const auto& [key, target] : table.delta) {
        if (key.stack_top == spec.stack_bottom) {
            bool keeps_bottom = !target.push.empty() && target.push.back() == spec.stack_bottom;
            if (!keeps_bottom) {
                out.push_back({Violation::Kind::BottomPreservation, describe_key(key),
                               "rule on the bottom symbol must push a string ending in it"});
            }
        }
        if (key.input == kLambda && !target.push.empty()) {
            out.push_back({Violation::Kind::LambdaPop, describe_key(key),
                           "lambda-rule must pop exactly the top (empty push string)"});
        }
        for (char g : target.push) {
            if (spec.stack_alphabet.find(g) == std::string::npos) {
                out.push_back({Violation::Kind::StackSymbol, describe_key(key),
                               std::string("push string uses unknown stack symbol '") + g + "'"});
            }
        }
        if (key.input != kLambda) {
            RuleKey lkey{key.state, kLambda, key.stack_top};
            if (table.delta.count(lkey) > 0) {
                out.push_back({Violation::Kind::Determinism, describe_key(key),
                               "state has both a lambda-rule and a symbol rule on this stack top"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Compiled dispatch for tabulated specs.

struct Machine::Compiled {
    std::unordered_map<std::string, int> state_id;
    std::vector<std::string> state_names;
    std::array<int, 256> input_idx{};
    std::array<int, 256> stack_idx{};
    int n_inputs = 0;
    int n_stack = 0;

    struct Entry {
        int next = -1;
        int push = -1;  // index into pools; -1 on undefined
        int out = -1;
    };
    std::vector<Entry> sym;      // [state][input][stack]
    std::vector<Entry> lambda;   // [state][stack]
    std::vector<std::string> push_pool;
    std::vector<std::string> out_pool;

    int pool_intern(std::vector<std::string>& pool, std::unordered_map<std::string, int>& seen,
                    const std::string& s) {
        auto [it, inserted] = seen.emplace(s, static_cast<int>(pool.size()));
        if (inserted) pool.push_back(s);
        return it->second;
    }

    Entry& sym_entry(int q, int in, int st) { return sym[(q * n_inputs + in) * n_stack + st]; }
    const Entry& sym_entry(int q, int in, int st) const {
        return sym[(q * n_inputs + in) * n_stack + st];
    }
    Entry& lambda_entry(int q, int st) { return lambda[q * n_stack + st]; }
    const Entry& lambda_entry(int q, int st) const { return lambda[q * n_stack + st]; }
};

Machine::Machine(const TransducerSpec& spec) : spec_(&spec) {
    if (!spec.tabulated()) {
        if (!spec.procedural().delta || !spec.procedural().nu) {
            throw ParamOutOfRange("procedural spec must provide delta and nu functions");
        }
        return;
    }
    auto compiled = std::make_shared<Compiled>();
    auto& c = *compiled;

    c.state_names = spec.sorted_states();
    for (std::size_t i = 0; i < c.state_names.size(); ++i) {
        c.state_id.emplace(c.state_names[i], static_cast<int>(i));
    }
    c.input_idx.fill(-1);
    for (char s : spec.alphabet.symbols()) {
        c.input_idx[static_cast<unsigned char>(s)] = c.n_inputs++;
    }
    if (spec.alphabet.endmarker()) {
        c.input_idx[static_cast<unsigned char>(*spec.alphabet.endmarker())] = c.n_inputs++;
    }
    c.stack_idx.fill(-1);
    for (char g : spec.stack_alphabet) {
        c.stack_idx[static_cast<unsigned char>(g)] = c.n_stack++;
    }

    int nq = static_cast<int>(c.state_names.size());
    c.sym.assign(static_cast<std::size_t>(nq) * c.n_inputs * c.n_stack, {});
    c.lambda.assign(static_cast<std::size_t>(nq) * c.n_stack, {});

    std::unordered_map<std::string, int> push_seen, out_seen;
    const auto& table = spec.table();
    for (const auto& [key, target] : table.delta) {
        int q = c.state_id.at(key.state);
        int st = c.stack_idx[static_cast<unsigned char>(key.stack_top)];
        if (st < 0) {
            throw ParamOutOfRange("delta rule uses stack symbol outside the stack alphabet: " +
                                  describe_key(key));
        }
        int push = c.pool_intern(c.push_pool, push_seen, target.push);
        int next = c.state_id.at(target.state);
        if (key.input == kLambda) {
            c.lambda_entry(q, st) = {next, push, -1};
        } else {
            int in = c.input_idx[static_cast<unsigned char>(key.input)];
            if (in < 0) {
                throw ParamOutOfRange("delta rule uses input symbol outside the alphabet: " +
                                      describe_key(key));
            }
            c.sym_entry(q, in, st).next = next;
            c.sym_entry(q, in, st).push = push;
        }
    }
    for (const auto& [key, emitted] : table.nu) {
        if (key.input == kLambda) {
            throw ParamOutOfRange("nu is defined on input symbols only: " + describe_key(key));
        }
        int q = c.state_id.at(key.state);
        int in = c.input_idx[static_cast<unsigned char>(key.input)];
        int st = c.stack_idx[static_cast<unsigned char>(key.stack_top)];
        if (in < 0 || st < 0) {
            throw ParamOutOfRange("nu rule uses symbols outside the alphabets: " +
                                  describe_key(key));
        }
        c.sym_entry(q, in, st).out = c.pool_intern(c.out_pool, out_seen, emitted);
    }
    compiled_ = std::move(compiled);
}

std::optional<Target> Machine::delta(const std::string& state, std::optional<char> input,
                                     char top) const {
    if (compiled_) {
        const auto& c = *compiled_;
        auto qit = c.state_id.find(state);
        if (qit == c.state_id.end()) return std::nullopt;
        int st = c.stack_idx[static_cast<unsigned char>(top)];
        if (st < 0) return std::nullopt;
        const Compiled::Entry* e;
        if (input) {
            int in = c.input_idx[static_cast<unsigned char>(*input)];
            if (in < 0) return std::nullopt;
            e = &c.sym_entry(qit->second, in, st);
        } else {
            e = &c.lambda_entry(qit->second, st);
        }
        if (e->next < 0) return std::nullopt;
        return Target{c.state_names[static_cast<std::size_t>(e->next)],
                      c.push_pool[static_cast<std::size_t>(e->push)]};
    }
    return spec_->procedural().delta(state, input, top);
}

std::string Machine::nu(const std::string& state, char input, char top) const {
    if (compiled_) {
        const auto& c = *compiled_;
        auto qit = c.state_id.find(state);
        if (qit == c.state_id.end()) return {};
        int in = c.input_idx[static_cast<unsigned char>(input)];
        int st = c.stack_idx[static_cast<unsigned char>(top)];
        if (in < 0 || st < 0) return {};
        int out = c.sym_entry(qit->second, in, st).out;
        return out < 0 ? std::string{} : c.out_pool[static_cast<std::size_t>(out)];
    }
    return spec_->procedural().nu(state, input, top);
}

void Machine::lambda_closure(MachineConfig& config, std::vector<TraceStep>* trace,
                             std::int64_t position) const {
    for (;;) {
        if (config.stack.empty()) {
            throw RunError(RunError::Kind::UndefinedTransition, "stack underflow in state " +
                           config.state, position);
        }
        char top = config.stack.back();
        auto target = delta(config.state, std::nullopt, top);
        if (!target) {
            return;
        }
        if (config.lambda_used >= spec_->lambda_budget) {
            throw RunError(RunError::Kind::BudgetExceeded,
                           "lambda-rule applicable after " +
                               std::to_string(spec_->lambda_budget) +
                               " lambda-rules in one gap (state " + config.state + ")",
                           position);
        }
        config.stack.pop_back();
        config.stack.append(target->push.rbegin(), target->push.rend());
        std::string before = std::move(config.state);
        config.state = target->state;
        config.lambda_used += 1;
        if (trace) {
            trace->push_back({true, std::move(before), kLambda, {}, config.stack.size(),
                              config.stack.empty() ? '\0' : config.stack.front()});
        }
    }
}

MachineConfig Machine::initial_config(bool run_initial_lambda) const {
    MachineConfig config{spec_->initial_state, std::string(1, spec_->stack_bottom), 0};
    if (run_initial_lambda) {
        lambda_closure(config, nullptr, -1);
    }
    return config;
}

std::string Machine::step_symbol(MachineConfig& config, char symbol,
                                 std::vector<TraceStep>* trace, std::int64_t position) const {
    if (!spec_->alphabet.contains(symbol) && !spec_->alphabet.is_endmarker(symbol)) {
        throw ParamOutOfRange(std::string("input symbol '") + symbol +
                              "' is neither in the alphabet nor the endmarker");
    }
    if (config.stack.empty()) {
        throw RunError(RunError::Kind::UndefinedTransition,
                       "stack underflow in state " + config.state, position);
    }
    char top = config.stack.back();
    std::string emitted = nu(config.state, symbol, top);
    auto target = delta(config.state, symbol, top);
    if (!target) {
        throw RunError(RunError::Kind::UndefinedTransition,
                       "no transition from state " + config.state + " on symbol '" + symbol +
                           "' with stack top '" + top + "'",
                       position);
    }
    config.stack.pop_back();
    config.stack.append(target->push.rbegin(), target->push.rend());
    std::string before = std::move(config.state);
    config.state = target->state;
    config.lambda_used = 0;
    if (trace) {
        trace->push_back({false, std::move(before), symbol, emitted, config.stack.size(),
                          config.stack.empty() ? '\0' : config.stack.front()});
    }
    lambda_closure(config, trace, position);
    return emitted;
}

namespace {

// Dense-table interpreter; no string lookups in the loop.
struct FastRun {
    const Machine::Compiled& c;
    int budget;
    int state;
    std::string stack;
    int lambda_used = 0;
    std::string output;

    void closure(std::int64_t position) {
        for (;;) {
            if (stack.empty()) {
                throw RunError(RunError::Kind::UndefinedTransition, "stack underflow",
                               position);
            }
            int st = c.stack_idx[static_cast<unsigned char>(stack.back())];
            const auto& e = c.lambda_entry(state, st);
            if (e.next < 0) return;
            if (lambda_used >= budget) {
                throw RunError(RunError::Kind::BudgetExceeded,
                               "lambda-rule applicable after " + std::to_string(budget) +
                                   " lambda-rules in one gap (state " +
                                   c.state_names[static_cast<std::size_t>(state)] + ")",
                               position);
            }
            stack.pop_back();
            const std::string& push = c.push_pool[static_cast<std::size_t>(e.push)];
            stack.append(push.rbegin(), push.rend());
            state = e.next;
            ++lambda_used;
        }
    }

    void step(char symbol, std::int64_t position) {
        int in = c.input_idx[static_cast<unsigned char>(symbol)];
        if (in < 0) {
            throw ParamOutOfRange(std::string("input symbol '") + symbol +
                                  "' is neither in the alphabet nor the endmarker");
        }
        if (stack.empty()) {
            throw RunError(RunError::Kind::UndefinedTransition, "stack underflow", position);
        }
        int st = c.stack_idx[static_cast<unsigned char>(stack.back())];
        const auto& e = c.sym_entry(state, in, st);
        if (e.out >= 0) {
            output += c.out_pool[static_cast<std::size_t>(e.out)];
        }
        if (e.next < 0) {
            throw RunError(RunError::Kind::UndefinedTransition,
                           "no transition from state " +
                               c.state_names[static_cast<std::size_t>(state)] + " on symbol '" +
                               symbol + "' with stack top '" + stack.back() + "'",
                           position);
        }
        stack.pop_back();
        const std::string& push = c.push_pool[static_cast<std::size_t>(e.push)];
        stack.append(push.rbegin(), push.rend());
        state = e.next;
        lambda_used = 0;
        closure(position);
    }
};

} // namespace

RunResult Machine::run(std::string_view input, bool endmarked, bool want_trace) const {
    auto endmarker = spec_->alphabet.endmarker();
    if (endmarked && !endmarker) {
        throw ParamOutOfRange("spec declares no endmarker; cannot run endmarked");
    }

    if (compiled_ && !want_trace) {
        FastRun fast{*compiled_, spec_->lambda_budget,
                     compiled_->state_id.at(spec_->initial_state),
                     std::string(1, spec_->stack_bottom), 0, {}};
        fast.closure(-1);
        for (std::size_t i = 0; i < input.size(); ++i) {
            fast.step(input[i], static_cast<std::int64_t>(i));
        }
        RunResult result;
        result.final_state = compiled_->state_names[static_cast<std::size_t>(fast.state)];
        result.consumed = static_cast<std::int64_t>(input.size());
        if (endmarked) {
            // The reported final state is the state reached on w itself; the
            // endmarker's own transition contributes output only.
            fast.step(*endmarker, static_cast<std::int64_t>(input.size()));
            ++result.consumed;
        }
        result.output = std::move(fast.output);
        return result;
    }

    RunResult result;
    std::vector<TraceStep>* trace = want_trace ? &result.trace : nullptr;

    MachineConfig config{spec_->initial_state, std::string(1, spec_->stack_bottom), 0};
    lambda_closure(config, trace, -1);

    for (std::size_t i = 0; i < input.size(); ++i) {
        result.output += step_symbol(config, input[i], trace, static_cast<std::int64_t>(i));
        ++result.consumed;
    }
    result.final_state = config.state;
    if (endmarked) {
        result.output += step_symbol(config, *endmarker, trace,
                                     static_cast<std::int64_t>(input.size()));
        ++result.consumed;
    }
    return result;
}

std::string step_symbol(const TransducerSpec& spec, MachineConfig& config, char symbol) {
    return Machine(spec).step_symbol(config, symbol);
}

RunResult run(const TransducerSpec& spec, std::string_view input, bool endmarked,
              bool want_trace) {
    return Machine(spec).run(input, endmarked, want_trace);
}

IlVerdict check_il(const TransducerSpec& spec, int max_len, bool endmarked) {
    Machine machine(spec);
    std::unordered_map<std::string, std::string> seen;
    const std::string& symbols = spec.alphabet.symbols();

    std::string w;
    auto visit = [&](auto&& self, int remaining) -> std::optional<IlVerdict> {
        RunResult r;
        try {
            r = machine.run(w, endmarked);
        } catch (const RunError& e) {
            throw RunError(e.kind(), std::string(e.what()) + " (on input \"" + w + "\")",
                           e.position());
        }
        std::string key = r.output;
        key += '\x1e';
        key += r.final_state;
        auto [it, inserted] = seen.emplace(std::move(key), w);
        if (!inserted) {
            IlVerdict v;
            v.ok = false;
            v.counterexample = {it->second, w};
            return v;
        }
        if (remaining > 0) {
            for (char s : symbols) {
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

int trailer_width(const TransducerSpec& compressor) {
    if (!compressor.tabulated()) {
        throw ParamOutOfRange("final-state trailer needs a tabulated compressor");
    }
    auto states = compressor.sorted_states();
    int sigma = compressor.alphabet.size();
    int width = 0;
    std::uint64_t cap = 1;
    while (cap < states.size()) {
        cap *= static_cast<std::uint64_t>(sigma);
        ++width;
    }
    return width == 0 ? 1 : width;
}

std::string encode_state_trailer(const TransducerSpec& compressor, const std::string& state) {
    auto states = compressor.sorted_states();
    std::size_t id = 0;
    for (; id < states.size(); ++id) {
        if (states[id] == state) break;
    }
    if (id == states.size()) {
        throw ParamOutOfRange("state not in compressor: " + state);
    }
    int width = trailer_width(compressor);
    int sigma = compressor.alphabet.size();
    std::string trailer(static_cast<std::size_t>(width), compressor.alphabet.symbol(0));
    for (int pos = width - 1; pos >= 0; --pos) {
        trailer[static_cast<std::size_t>(pos)] =
            compressor.alphabet.symbol(static_cast<int>(id % sigma));
        id /= sigma;
    }
    return trailer;
}

std::string decode_state_trailer(const TransducerSpec& compressor, std::string_view trailer) {
    return decode_state_trailer_digits(compressor.sorted_states(), compressor.alphabet, trailer);
}

std::string decode_state_trailer_digits(const std::vector<std::string>& sorted_states,
                                        const Alphabet& alphabet, std::string_view digits) {
    std::uint64_t id = 0;
    for (char c : digits) {
        id = id * static_cast<std::uint64_t>(alphabet.size()) +
             static_cast<std::uint64_t>(alphabet.index(c));
    }
    if (id >= sorted_states.size()) {
        throw ParamOutOfRange("trailer decodes to no state");
    }
    return sorted_states[static_cast<std::size_t>(id)];
}

InverseVerdict run_inverse_pair(const TransducerSpec& c_spec, const TransducerSpec& d_spec,
                                std::string_view input) {
    auto d_end = d_spec.alphabet.endmarker();
    if (!d_end) {
        throw ParamOutOfRange("inverter spec must declare an endmarker to detect the trailer");
    }
    InverseVerdict verdict;
    RunResult c_run = Machine(c_spec).run(input, false);
    verdict.compressed = c_run.output;
    verdict.final_state = c_run.final_state;

    std::string d_input = c_run.output;
    d_input.push_back(*d_end);
    d_input += encode_state_trailer(c_spec, c_run.final_state);
    RunResult d_run = Machine(d_spec).run(d_input, false);
    verdict.decompressed = d_run.output;
    verdict.ok = d_run.output == input;
    return verdict;
}

VisiblyVerdict check_visibly(const TransducerSpec& spec,
                             const std::map<char, SymbolClass>& partition) {
    VisiblyVerdict verdict;
    if (!spec.tabulated()) {
        verdict.ok = false;
        verdict.violations.push_back("visibly check needs a tabulated spec");
        return verdict;
    }
    for (char s : spec.alphabet.symbols()) {
        if (partition.count(s) == 0) {
            verdict.violations.push_back(std::string("partition does not cover symbol '") + s +
                                         "'");
        }
    }
    for (const auto& [key, target] : spec.table().delta) {
        if (key.input == kLambda) {
            verdict.violations.push_back("lambda-rule present at " + describe_key(key));
            continue;
        }
        auto cls = partition.find(key.input);
        if (cls == partition.end()) {
            continue;  // already reported above (or an endmarker rule)
        }
        int net = static_cast<int>(target.push.size()) - 1;
        switch (cls->second) {
            case SymbolClass::Call:
                if (net != 1) {
                    verdict.violations.push_back("call must push one symbol at " +
                                                 describe_key(key));
                }
                break;
            case SymbolClass::Return:
                if (key.stack_top == spec.stack_bottom) {
                    if (net != 0) {
                        verdict.violations.push_back(
                            "return on the empty stack must leave it unchanged at " +
                            describe_key(key));
                    }
                } else if (net != -1) {
                    verdict.violations.push_back("return must pop one symbol at " +
                                                 describe_key(key));
                }
                break;
            case SymbolClass::Internal:
                if (net != 0) {
                    verdict.violations.push_back("internal symbol must not move the stack at " +
                                                 describe_key(key));
                }
                break;
        }
    }
    verdict.ok = verdict.violations.empty();
    return verdict;
}

} // namespace rbc::pda
