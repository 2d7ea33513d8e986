#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flounder/term.hpp"

namespace flounder {

enum class CondTest : std::uint8_t { kVar, kNonground };

struct CondLiteral {
  CondTest test = CondTest::kVar;
  std::uint32_t arg = 0;  // argument position of the declared head
  friend bool operator==(const CondLiteral&, const CondLiteral&) = default;
};

using CondConjunction = std::vector<CondLiteral>;

// Delay condition in disjunctive normal form.  An atom is delayed when some
// disjunct holds.
struct DelayCondition {
  std::vector<CondConjunction> disjuncts;

  bool holds(std::span<const Term> args) const;
  bool empty() const { return disjuncts.empty(); }
  // Adds the disjuncts of `other`, skipping duplicates.
  void merge(const DelayCondition& other);
  friend bool operator==(const DelayCondition&, const DelayCondition&) = default;
};

struct DelayDecl {
  SymbolId predicate = 0;
  std::vector<std::string> arg_names;
  DelayCondition condition;
};

struct BodyGoal;
using Conjunction = std::vector<BodyGoal>;

struct BodyGoal {
  enum class Kind : std::uint8_t { kAtom, kDisjunction };
  Kind kind = Kind::kAtom;
  Atom atom;
  std::vector<Conjunction> branches;
  std::uint32_t index = 0;  // 1-based pre-order position within the body

  static BodyGoal make_atom(Atom a) {
    BodyGoal g;
    g.atom = std::move(a);
    return g;
  }
  static BodyGoal make_disjunction(std::vector<Conjunction> branches);
  bool is_atom() const { return kind == Kind::kAtom; }
};

enum class ClauseTag : std::uint8_t { kOriginal, kDelay };

// Clause variables are numbered 0 .. var_names.size()-1.
struct Clause {
  std::uint32_t id = 0;
  Atom head;
  Conjunction body;
  ClauseTag tag = ClauseTag::kOriginal;
  std::vector<std::string> var_names;

  std::uint32_t num_vars() const {
    return static_cast<std::uint32_t>(var_names.size());
  }
  bool is_fact() const { return body.empty(); }
};

struct Goal {
  Conjunction body;
  std::vector<std::string> var_names;

  std::uint32_t num_vars() const {
    return static_cast<std::uint32_t>(var_names.size());
  }
  static Goal from_atom(const Atom& a, std::vector<std::string> names = {});
};

enum class Builtin : std::uint8_t {
  kNone,
  kTrue,
  kFail,
  kEvar,
  kEnonground,
  kPlus,
  kLeq,
};

// Builtin meaning of a predicate symbol, ignoring user definitions.
Builtin builtin_kind(SymbolId pred);
// Intrinsic delay for builtins with an instantiation requirement.
std::optional<DelayCondition> intrinsic_delay(Builtin b);

// Flattens single-branch disjunctions and renumbers goal indices pre-order.
void normalize_body(Conjunction& body);
void for_each_atom(const Conjunction& body, const std::function<void(const Atom&)>& fn);
std::size_t count_atoms(const Conjunction& body);

class Program {
 public:
  Program() = default;

  // Assigns the next clause id when `c.id` is 0.
  void add_clause(Clause c);
  // Repeated declarations for one predicate are merged disjunctively.
  void add_delay(DelayDecl d);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<DelayDecl>& delays() const { return delays_; }
  const Clause& clause(std::uint32_t id) const;
  std::span<const std::uint32_t> clauses_for(SymbolId pred) const;

  const DelayDecl* delay_for(SymbolId pred) const;
  // Declared condition merged with the builtin's intrinsic one.
  const DelayCondition* effective_delay(SymbolId pred) const;

  // Builtin meaning in this program; user definitions take precedence.
  Builtin builtin(SymbolId pred) const;
  bool defines(SymbolId pred) const;
  // User predicates with clauses or delay declarations, first appearance order.
  const std::vector<SymbolId>& predicates() const { return predicates_; }
  // Predicates called in some clause body, first appearance order.
  std::vector<SymbolId> called_predicates() const;

  bool has_delays() const { return !delays_.empty(); }
  bool is_horn() const;
  // True when the program may define evar/enonground or mention 'VAR'.
  bool encoding_definitions() const { return encoding_definitions_; }
  void set_encoding_definitions(bool v) { encoding_definitions_ = v; }

 private:
  void note_predicate(SymbolId pred);
  void refresh_effective();

  std::vector<Clause> clauses_;
  std::vector<DelayDecl> delays_;
  std::vector<SymbolId> predicates_;
  std::unordered_map<SymbolId, std::vector<std::uint32_t>> by_pred_;
  std::unordered_map<SymbolId, std::size_t> delay_index_;
  std::unordered_map<SymbolId, DelayCondition> effective_;
  std::unordered_map<std::uint32_t, std::size_t> id_index_;
  std::uint32_t next_id_ = 1;
  bool encoding_definitions_ = false;
};

}  // namespace flounder
