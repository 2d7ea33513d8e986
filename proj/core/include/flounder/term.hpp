#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace flounder {

using VarId = std::uint32_t;
using SymbolId = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

enum class SymbolKind : std::uint8_t { kProgram, kExtraneous };

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::kProgram;
};

// Symbols pre-registered in every table, in this order.
namespace symbols {
inline constexpr SymbolId kVar = 0;  // 'VAR'/1, the only extraneous symbol
inline constexpr SymbolId kNil = 1;
inline constexpr SymbolId kCons = 2;
inline constexpr SymbolId kTrue = 3;
inline constexpr SymbolId kFail = 4;
}  // namespace symbols

// Process-wide interning; safe to call from several threads.
SymbolId intern(std::string_view name, std::uint32_t arity);
const Symbol& symbol(SymbolId id);
inline bool is_extraneous(SymbolId id) { return id == symbols::kVar; }

namespace detail {
struct TermNode;
}

// Immutable, structurally shared term.  Atoms are represented as terms whose
// principal symbol is the predicate.
class Term {
 public:
  enum class Kind : std::uint8_t { kVariable, kCompound, kInteger };

  Term() = default;

  static Term variable(VarId id);
  static Term constant(SymbolId sym);
  static Term compound(SymbolId functor, std::span<const Term> args);
  static Term compound(SymbolId functor, std::initializer_list<Term> args);
  static Term integer(BigInt value);
  static Term integer(long long value) { return integer(BigInt(value)); }
  static Term extraneous(std::uint64_t k);  // 'VAR'(k)
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term list(std::span<const Term> items, Term tail = nil());

  explicit operator bool() const noexcept { return node_ != nullptr; }

  Kind kind() const noexcept;
  bool is_variable() const noexcept { return kind() == Kind::kVariable; }
  bool is_compound() const noexcept { return kind() == Kind::kCompound; }
  bool is_integer() const noexcept { return kind() == Kind::kInteger; }

  VarId var_id() const;
  SymbolId functor() const;
  std::uint32_t arity() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  const BigInt& value() const;

  bool is_ground() const noexcept;
  bool has_extraneous() const noexcept;
  bool is_extraneous_rooted() const noexcept {
    return is_compound() && is_extraneous(functor());
  }
  bool is_cons() const noexcept {
    return is_compound() && functor() == symbols::kCons;
  }
  bool is_nil() const noexcept {
    return is_compound() && functor() == symbols::kNil;
  }
  // One past the largest variable id occurring in the term; 0 when ground.
  VarId var_limit() const noexcept;
  std::size_t hash() const noexcept;
  bool same_node(const Term& other) const noexcept {
    return node_ == other.node_;
  }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  Term::Kind kind = Term::Kind::kVariable;
  bool ground = true;
  bool extraneous = false;
  std::uint32_t id = 0;
  VarId var_limit = 0;
  std::size_t hash = 0;
  boost::container::small_vector<Term, 3> args;
  BigInt value;
};
}  // namespace detail

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline VarId Term::var_id() const { return node_->id; }
inline SymbolId Term::functor() const { return node_->id; }
inline std::uint32_t Term::arity() const {
  return static_cast<std::uint32_t>(node_->args.size());
}
inline std::span<const Term> Term::args() const {
  return {node_->args.data(), node_->args.size()};
}
inline const BigInt& Term::value() const { return node_->value; }
inline bool Term::is_ground() const noexcept { return node_->ground; }
inline bool Term::has_extraneous() const noexcept { return node_->extraneous; }
inline VarId Term::var_limit() const noexcept { return node_->var_limit; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }

using Atom = Term;

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

// Standard order: variables < integers < compounds (arity, name, args).
int compare(const Term& a, const Term& b);
struct TermLess {
  bool operator()(const Term& a, const Term& b) const {
    return compare(a, b) < 0;
  }
};

std::size_t term_size(const Term& t);
std::size_t term_depth(const Term& t);  // constants and variables have depth 1

// Distinct variables in order of first occurrence.
void collect_variables(const Term& t, std::vector<VarId>& out);
std::vector<VarId> variables_of(const Term& t);
bool occurs_in(VarId v, const Term& t);

// Idempotent substitution stored as a sorted flat map.
class Substitution {
 public:
  using Binding = std::pair<VarId, Term>;

  Substitution() = default;

  const Term* lookup(VarId v) const;
  bool contains(VarId v) const { return lookup(v) != nullptr; }
  void bind(VarId v, Term t);
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }
  Substitution restrict_to(std::span<const VarId> vars) const;
  bool is_idempotent() const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::vector<Binding> bindings_;
};

Term apply(const Substitution& s, const Term& t);

// Most general unifier with occurs check.  Variable-variable pairs bind the
// left variable to the right one.
std::optional<Substitution> unify(const Term& a, const Term& b);
// Extends an idempotent substitution; leaves `s` unspecified on failure.
bool unify_into(const Term& a, const Term& b, Substitution& s);

// apply(compose(s1, s2), t) == apply(s2, apply(s1, t)).
Substitution compose(const Substitution& first, const Substitution& second);

// One-way matching: binds only variables of `pattern`.  Variables of
// `instance` are treated as constants, so the two may share ids.
std::optional<Substitution> match(const Term& pattern, const Term& instance);
bool is_instance(const Term& a, const Term& b);  // a == b sigma for some sigma
bool is_variant(const Term& a, const Term& b);
// Variables renumbered 0, 1, ... by first occurrence.
Term canonical_variant(const Term& t);
Term shift_variables(const Term& t, VarId offset);

class ExtraneousGenerator {
 public:
  explicit ExtraneousGenerator(std::uint64_t start = 0) : next_(start) {}
  Term next() { return Term::extraneous(next_++); }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

// Replaces each distinct variable by a fresh 'VAR'(k), left to right.
Term encode(const Term& a, ExtraneousGenerator& gen);
// Replaces maximal extraneous-rooted subterms by variables; equal subterms
// map to the same variable.  New ids start at a.var_limit().
Term decode(const Term& a);

// Principal symbol test used by evar/1.
inline bool extraneous_rooted(const Term& t) { return t.is_extraneous_rooted(); }

}  // namespace flounder
