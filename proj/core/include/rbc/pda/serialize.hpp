#pragma once

#include <iosfwd>
#include <string>

#include "rbc/pda/spec.hpp"

namespace rbc::pda {

// Canonical text form of a tabulated spec:
//
//   pdspec v1
//   name <name>
//   alphabet <symbols>
//   endmarker <symbol or ~>
//   stackalphabet <symbols>
//   stackbottom <symbol>
//   initial <state>
//   budget <int>
//   delta
//   <state> <input|~> <stacktop> -> <state> <pushstring|~>
//   ...
//   nu
//   <state> <input> <stacktop> -> <outstring|~>
//   ...
//   end
//
// Entries are sorted by (state, input, stacktop); `~` stands for lambda.
// print(parse(text)) == text for text produced by print.
std::string print_spec(const TransducerSpec& spec);
TransducerSpec parse_spec(const std::string& text);

void save_spec(const TransducerSpec& spec, const std::string& path);
TransducerSpec load_spec(const std::string& path);

} // namespace rbc::pda
