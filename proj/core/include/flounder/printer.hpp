#pragma once

#include <span>
#include <string>

#include "flounder/program.hpp"

namespace flounder {

// Variables without a name in `names` print as _G<id>.
std::string print_term(const Term& t, std::span<const std::string> names = {});
std::string print_body(const Conjunction& body, std::span<const std::string> names = {});
std::string print_clause(const Clause& c);
std::string print_delay(const DelayDecl& d);
// Delay declarations first, then clauses in order.
std::string print_program(const Program& p);
std::string print_goal(const Goal& g);
// "X = t, Y = u" over the bound variables, skipping names starting with _.
std::string print_bindings(const Substitution& s, std::span<const std::string> names);

std::string quote_atom(const std::string& name);

}  // namespace flounder
