#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "flounder/engine.hpp"
#include "flounder/parser.hpp"
#include "flounder/printer.hpp"
#include "flounder/term.hpp"

namespace flounder::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(FLOUNDER_CORPUS_DIR) + "/" + name;
}

inline Program corpus(const std::string& name, const ParseOptions& options = {}) {
  return load_program(corpus_path(name), options);
}

inline Term term(std::string_view text) { return parse_term(text); }

inline std::string show(const Term& t) { return print_term(t); }

// Prints with variables renamed A, B, ... by first occurrence.
inline std::string pretty(const Term& t) {
  Term c = canonical_variant(t);
  std::vector<std::string> names;
  for (VarId v = 0; v < c.var_limit(); ++v) {
    std::string n(1, static_cast<char>('A' + v % 26));
    if (v >= 26) n += std::to_string(v / 26);
    names.push_back(n);
  }
  return print_term(c, names);
}

// Small random terms over f/2, g/1, a, b and variables 0..vars-1.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed, VarId vars = 4) : rng_(seed), vars_(vars) {}

  Term term(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 1 ? 5 : 3);
    switch (pick(rng_)) {
      case 0:
      case 1: return Term::variable(std::uniform_int_distribution<VarId>(0, vars_ - 1)(rng_));
      case 2: return Term::constant(a_);
      case 3: return Term::constant(b_);
      case 4: return Term::compound(g_, {term(depth - 1)});
      default: return Term::compound(f_, {term(depth - 1), term(depth - 1)});
    }
  }

  Term ground(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 1 ? 3 : 1);
    switch (pick(rng_)) {
      case 0: return Term::constant(a_);
      case 1: return Term::constant(b_);
      case 2: return Term::compound(g_, {ground(depth - 1)});
      default: return Term::compound(f_, {ground(depth - 1), ground(depth - 1)});
    }
  }

  // Idempotent: the range only uses variables vars..2*vars-1.
  Substitution substitution(int depth) {
    Substitution s;
    for (VarId v = 0; v < vars_; ++v)
      if (coin()) s.bind(v, shift_variables(term(depth), vars_));
    return s;
  }

  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }
  std::mt19937_64& rng() { return rng_; }
  SymbolId f() const { return f_; }
  SymbolId g() const { return g_; }
  SymbolId a() const { return a_; }
  SymbolId b() const { return b_; }

 private:
  std::mt19937_64 rng_;
  VarId vars_;
  SymbolId f_ = intern("f", 2);
  SymbolId g_ = intern("g", 1);
  SymbolId a_ = intern("a", 0);
  SymbolId b_ = intern("b", 0);
};

}  // namespace flounder::testing
