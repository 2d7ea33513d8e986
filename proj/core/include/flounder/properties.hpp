#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flounder/enumerate.hpp"

namespace flounder {

// Type classes of encoded terms.
enum TypeTag : std::uint8_t {
  kListType = 1,            // l: [] or [t|l]
  kIncompleteListType = 2,  // il: [t1, ..., tn|'VAR'(k)], n >= 0
  kVarType = 4,             // v: extraneous-rooted
  kGroundType = 8,          // g: no extraneous symbol
};
using TypeSet = std::uint8_t;

// Classes of a term without real variables.
TypeSet classify(const Term& t);
std::string format_types(TypeSet s);

// Propositional formula over atoms "Xi in T", i >= 1, T in {l, il, v, g}.
class PropFormula {
 public:
  enum class Op : std::uint8_t { kIn, kNot, kAnd, kOr, kImplies, kIff, kTrue, kFalse };

  static PropFormula parse(std::string_view text);

  bool evaluate(std::span<const TypeSet> args) const;
  std::uint32_t max_position() const;  // largest i mentioned
  std::string to_string() const;

 private:
  struct Node {
    Op op = Op::kTrue;
    std::uint32_t position = 0;  // 0-based
    TypeTag type = kListType;
    std::unique_ptr<Node> left, right;
  };
  friend class FormulaParser;

  static bool eval(const Node& n, std::span<const TypeSet> args);
  static std::string print(const Node& n);
  static std::uint32_t max_pos(const Node& n);

  std::shared_ptr<const Node> root_;
};

// True when every instance of `raw` satisfies the formula.  Real variables
// at a list tail are split over [], ['VAR'], 'VAR', [a|'VAR'], a, f('VAR');
// the others only over ground or not.
bool satisfies(const Atom& raw, const PropFormula& f);

struct ModelCheckResult {
  bool holds = true;
  std::optional<AnswerReport> counterexample;
  std::uint64_t answers_checked = 0;
  EnumerationSummary summary;
};

// Checks every enumerated answer of pred(X1, ..., Xn) on a delay-free
// program against the formula.  Stops at the first counterexample.
ModelCheckResult check_model(const Program& p, SymbolId pred, const PropFormula& f,
                             const EnumerateOptions& options = {});

}  // namespace flounder
