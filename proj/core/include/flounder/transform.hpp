#pragma once

#include "flounder/encoding.hpp"
#include "flounder/program.hpp"

namespace flounder {

// Delay-free program whose success set encodes the flounder set.  Every
// predicate p becomes p_sf; each delay declaration becomes one delay-tagged
// clause listed before p's clauses.  Builtins with delays (plus/3, leq/2)
// that the program calls get a delay clause and a bridge clause
// plus_sf(A, B, C) :- plus(A, B, C).
Program sf_transform(const Program& p);

struct FOptions {
  // Moves calls to predicates in the head's recursive component to the front
  // of each _f companion (stable).  Off keeps source order.
  bool recursive_first = true;
};

// SF(P) plus a p_f companion for every clause: delay clauses are copied, and
// other clauses get `B, D` where D is the disjunction of B's _sf calls renamed
// to _f, or `fail` when B has no such call.
Program f_transform(const Program& p, const FOptions& options = {});

// Predicates of SF(P) that stand for predicates of P, with their originals.
std::vector<std::pair<SymbolId, SymbolId>> sf_predicate_map(const Program& p);

}  // namespace flounder
