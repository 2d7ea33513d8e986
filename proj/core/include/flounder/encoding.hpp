#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flounder/term.hpp"

namespace flounder {

// Alternatives for evar(t): succeeds without bindings on an extraneous-rooted
// term, binds a variable to the next 'VAR'(k), fails otherwise.
std::vector<Substitution> evar_successes(const Term& t, std::uint64_t& next_extraneous);

// Alternatives for enonground(t): no bindings if t already contains an
// extraneous subterm, otherwise one alternative per distinct variable of t,
// first-occurrence order, each binding that variable alone.
std::vector<Substitution> enonground_successes(const Term& t,
                                               std::uint64_t& next_extraneous);

// Lazy forms used by resolution: a variable is bound to 'VAR'(Z) for a fresh
// variable Z = next_var++, so a later unification may still identify two
// such terms.  Z is given a number only when an answer is reported.
std::vector<Substitution> evar_successes_lazy(const Term& t, VarId& next_var);
std::vector<Substitution> enonground_successes_lazy(const Term& t, VarId& next_var);

// Binds each variable that is the argument of a 'VAR' subterm of `terms`, in
// first-occurrence order, to a distinct integer from `first` upwards.
Substitution number_extraneous(std::span<const Term> terms, std::uint64_t first);
// One past the largest k of a ground 'VAR'(k) in `t`; 0 when there is none.
std::uint64_t extraneous_limit(const Term& t);

SymbolId sf_symbol(SymbolId pred);
SymbolId f_symbol(SymbolId pred);
// Removes one trailing _sf or _f.  Returns the symbol unchanged otherwise.
SymbolId strip_suffix(SymbolId pred);
bool has_sf_suffix(SymbolId pred);
bool has_f_suffix(SymbolId pred);

// Rewrites the principal symbol with strip_suffix.
Atom strip_atom(const Atom& a);

}  // namespace flounder
