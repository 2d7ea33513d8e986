#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flounder/program.hpp"

namespace flounder {

// Boolean function over variables 0..arity-1 stored as a truth table.
// Bit v of a valuation is the value of variable v.
class BoolFn {
 public:
  static constexpr std::uint32_t kMaxArity = 10;

  BoolFn() = default;
  explicit BoolFn(std::uint32_t arity, bool value = false);

  static BoolFn constant(std::uint32_t arity, bool value) { return BoolFn(arity, value); }
  static BoolFn variable(std::uint32_t arity, std::uint32_t i);

  std::uint32_t arity() const { return arity_; }
  std::uint64_t rows() const { return std::uint64_t{1} << arity_; }
  bool eval(std::uint64_t valuation) const;
  void set(std::uint64_t valuation, bool value);

  BoolFn operator&(const BoolFn& o) const;
  BoolFn operator|(const BoolFn& o) const;
  BoolFn operator~() const;
  BoolFn iff(const BoolFn& o) const;
  BoolFn implies(const BoolFn& o) const;

  bool is_false() const;
  bool is_true() const;
  bool monotone() const;
  // A satisfying valuation of this & ~other, if any.
  std::optional<std::uint64_t> counterexample(const BoolFn& other) const;

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

  // Prime implicates, with X -> Y pairs merged into <-> where possible.
  // Variables are named A, B, C, ... unless `names` is given.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  std::uint32_t arity_ = 0;
  std::vector<std::uint64_t> bits_;
};

// X <-> (Y1 & ... & Yk) over `arity` variables; k = 0 gives X.
BoolFn abstract_unify(std::uint32_t arity, std::uint32_t x, std::span<const std::uint32_t> ys);
// Groundness behaviour of a builtin call whose arguments are variables
// `args`: evar/enonground -> ~X, plus -> A & B & C, leq -> A & B.
BoolFn abstract_builtin(Builtin b, std::uint32_t arity, std::span<const std::uint32_t> args);

struct GroundnessResult {
  std::vector<SymbolId> order;
  std::map<SymbolId, BoolFn> functions;
  std::uint32_t iterations = 0;

  const BoolFn& of(SymbolId pred) const;
};

// Least fixpoint of the truth-table abstraction of a delay-free program.
GroundnessResult abstract_lfp(const Program& p, std::uint32_t var_cap = BoolFn::kMaxArity);

struct DependencyCheck {
  bool holds = false;
  std::optional<std::uint64_t> counterexample;
};

// Whether the computed function of `pred` implies `dependency`.
DependencyCheck check_dependency(const GroundnessResult& r, SymbolId pred, const BoolFn& dependency);

// Parses formulas over A, B, C, ... with ~ & | -> <-> true false.
BoolFn parse_bool(std::string_view text, std::uint32_t arity);

// "append_sf(A, B, C): (A & B) <-> C"
std::string format_dependency(SymbolId pred, const BoolFn& f);
std::string format_valuation(std::uint64_t valuation, std::uint32_t arity);

}  // namespace flounder
