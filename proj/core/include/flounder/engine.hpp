#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flounder/program.hpp"

namespace flounder {

// ⟨clause id, goal index⟩; clause 0 stands for the query.
struct AnnotationEntry {
  std::uint32_t clause = 0;
  std::uint32_t goal = 0;
  friend auto operator<=>(const AnnotationEntry&, const AnnotationEntry&) = default;
};
// Most recent resolution first.
using Annotation = std::vector<AnnotationEntry>;

enum class RuleKind : std::uint8_t { kLeftmost, kRightmost, kRandom };

// Safe rules only: every rule picks among callable atoms.
struct ComputationRule {
  RuleKind kind = RuleKind::kLeftmost;
  std::uint64_t seed = 0;

  static ComputationRule leftmost() { return {}; }
  static ComputationRule rightmost() { return {RuleKind::kRightmost, 0}; }
  static ComputationRule random(std::uint64_t seed) { return {RuleKind::kRandom, seed}; }
  std::string name() const;
};

struct Choice {
  enum class Kind : std::uint8_t { kClause, kBuiltin, kBranch };
  Kind kind = Kind::kClause;
  std::uint32_t value = 0;  // clause id, builtin alternative or disjunct
  friend bool operator==(const Choice&, const Choice&) = default;
};

struct DerivationStep {
  Annotation annotation;
  Atom selected;  // as it stood when selected; null for disjunctions
  Choice choice;
};

struct Derivation {
  std::vector<DerivationStep> steps;
};

enum class OutcomeKind : std::uint8_t {
  kSuccess,
  kFloundered,
  kFiniteFailure,
  kDepthExceeded,
  kError,
};

const char* outcome_name(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::kFiniteFailure;
  Substitution answer;  // over the goal variables
  std::vector<Atom> residual;
  Derivation derivation;
  std::uint32_t length = 0;
  bool used_delay_clause = false;
  std::string message;
  // With SolveOptions::track_selected: every selected atom, builtins
  // included, under the final bindings, in selection order.  Computed on
  // call; empty otherwise.
  std::function<std::vector<Atom>()> selected = [] { return std::vector<Atom>{}; };
};

enum class ClauseFilter : std::uint8_t { kAll, kDelayOnly };

struct IntRange {
  long long lo = 0;
  long long hi = 16;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Process default for SolveOptions::check_invariants.  Initialised from the
// FLOUNDER_CHECK_INVARIANTS build option or environment variable.
bool default_invariant_checks();
void set_default_invariant_checks(bool on);
// Total invariant checks performed in this process.
std::uint64_t invariant_checks_performed();

struct SolveOptions {
  ComputationRule rule;
  std::uint32_t depth_bound = 64;
  std::uint64_t answer_limit = 0;  // successes plus flounders; 0 = unlimited
  // When false every atom is callable and under-instantiated builtins
  // enumerate `ints` (plain SLD resolution).
  bool respect_delays = true;
  ClauseFilter filter = ClauseFilter::kAll;
  std::uint32_t clause_cost = 1;
  std::uint32_t builtin_cost = 1;
  bool record_derivations = true;
  bool track_selected = false;
  // When set, a state with an atom the predicate rejects is dropped without
  // an outcome.  Must reject every instance of a rejected atom.
  std::function<bool(const Atom&)> admissible;
  bool report_depth_exceeded = true;
  bool check_invariants = default_invariant_checks();
  IntRange ints;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t emitted = 0;
  bool truncated = false;
  bool stopped = false;  // sink or answer limit ended the search early
};

using OutcomeSink = std::function<bool(const Outcome&)>;

class Engine {
 public:
  explicit Engine(const Program& program, SolveOptions options = {});

  // Depth-first search of the SLDF tree.  The sink returns false to stop.
  SolveStats solve(const Goal& goal, const OutcomeSink& sink);
  std::vector<Outcome> solve_all(const Goal& goal);

  // Re-executes the clause and alternative choices of `d`, keyed by
  // annotation, under another rule.  Throws InvariantViolation when the
  // recorded choices do not cover the new selection order.
  Outcome replay(const Goal& goal, const Derivation& d, const ComputationRule& rule) const;

  const SolveOptions& options() const { return options_; }
  const Program& program() const { return program_; }

 private:
  const Program& program_;
  SolveOptions options_;
};

// An atom is callable when no delay condition of its predicate holds.
bool callable(const Atom& a, const Program& p);

std::vector<Outcome> solve(const Goal& goal, const Program& p,
                           const ComputationRule& rule = {},
                           std::uint32_t depth_bound = 64,
                           std::uint64_t answer_limit = 0);
// Delay declarations ignored.
std::vector<Outcome> solve_sld(const Goal& goal, const Program& p,
                               std::uint32_t depth_bound = 64,
                               std::uint64_t answer_limit = 0);

// The goal's single atom instantiated by the outcome's answer.
Atom answer_atom(const Goal& goal, const Outcome& o);

}  // namespace flounder
