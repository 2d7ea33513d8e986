#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "flounder/engine.hpp"

namespace flounder {

enum class UniverseShape : std::uint8_t {
  // All terms of depth <= depth over the program's function symbols, the
  // extra constants and 'VAR'(0..m-1), which count as constants.
  kHerbrand,
  // Bare 'VAR'(k), plus lists of at most depth-1 elements drawn from the
  // constants and 'VAR'(k), ending in [] or some 'VAR'(k).
  kLists,
};

struct BaseConfig {
  UniverseShape shape = UniverseShape::kHerbrand;
  std::uint32_t depth = 3;
  std::uint32_t extraneous = 8;  // m
  std::vector<Term> constants;   // for kLists: the (non-VAR) element constants
  std::size_t max_universe = 200000;
};

// Finite slice of the extended Herbrand base: atoms p(t1..tn) with ti in U.
class BoundedBase {
 public:
  static BoundedBase build(const Program& p, const BaseConfig& config);

  const std::vector<Term>& universe() const { return universe_; }
  // Subterm closure of the universe; clause variables range over it.
  const std::vector<Term>& domain() const { return domain_; }
  const std::vector<Term>& extraneous_terms() const { return extraneous_; }
  bool contains(const Term& t) const { return members_.count(t) > 0; }
  bool in_domain(const Term& t) const { return domain_set_.count(t) > 0; }
  // contains() for t with every real variable read as 'VAR'(0).  Allocation free.
  bool admits(const Term& t) const;
  const BaseConfig& config() const { return config_; }
  std::string describe() const;

 private:
  BaseConfig config_;
  std::vector<Term> universe_;
  std::vector<Term> domain_;
  std::vector<Term> extraneous_;
  std::unordered_set<Term, TermHash> members_;
  std::unordered_set<Term, TermHash> domain_set_;
  std::unordered_set<Term, TermHash> leaves_;  // list elements or Herbrand constants
  std::set<std::pair<SymbolId, std::uint32_t>> functors_;
  bool admits_at(const Term& t, std::uint32_t depth) const;
};

using AtomSet = std::unordered_set<Atom, TermHash>;

struct FInterpretation {
  AtomSet atoms;
  AtomSet flagged;  // subset of atoms derived through a delay clause
  friend bool operator==(const FInterpretation&, const FInterpretation&) = default;
};

// One application of the immediate consequence operator restricted to the
// base.  Builtin atoms are evaluated directly and never stored.
AtomSet tp_step(const Program& p, const AtomSet& interp, const BoundedBase& base);
// Flag propagation: a head is flagged when its clause is a delay clause or
// some body atom is flagged.
FInterpretation tfp_step(const Program& p, const FInterpretation& interp,
                         const BoundedBase& base);

struct LfpResult {
  FInterpretation value;
  std::vector<std::size_t> atom_deltas;  // new atoms per iteration
  std::vector<std::size_t> flag_deltas;  // newly flagged atoms per iteration
  std::size_t iterations = 0;
};

// Least fixpoints from the empty interpretation, computed semi-naively.  The
// per-iteration deltas match naive iteration of the step functions above.
LfpResult lfp_tp(const Program& p, const BoundedBase& base);
LfpResult lfp_tfp(const Program& p, const BoundedBase& base);

// Flagged atoms of an SF(P) model, renamed back, decoded and reduced modulo
// variants and variable-merging specialisations (p(X, X) next to p(X, Y)).
std::vector<Atom> efs_extract(const FInterpretation& model);

// Sorted listing, one atom per line, flagged atoms prefixed with '*'.
std::string format_interpretation(const FInterpretation& interp, bool flagged_only = false);
std::vector<Atom> sorted_atoms(const AtomSet& atoms);

struct Prop7Options {
  std::uint32_t solve_depth = 64;
  std::size_t max_candidates = 5000000;
  std::size_t max_reported = 10;
};

struct Prop7Report {
  bool holds = false;
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  std::size_t candidates = 0;
  std::size_t iterations = 0;
  std::vector<Atom> only_lhs;  // in SS(SF(P)) but not in EFS(P) u SS(P)
  std::vector<Atom> only_rhs;
  std::string base;
};

// Compares lfp(T_SF(P)) with EFS(P) u SS(P) on the base, for the user
// predicates of P.  The right-hand side is computed atom by atom with the
// SLD and SLDF engines, independently of the fixpoint.
Prop7Report verify_prop7(const Program& p, const BoundedBase& base,
                         const Prop7Options& options = {});

}  // namespace flounder
