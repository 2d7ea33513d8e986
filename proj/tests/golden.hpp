#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "flounder/parser.hpp"
#include "flounder/printer.hpp"

namespace flounder::testing {

// Clauses of `p` printed with variables renamed V0, V1, ... by first textual
// occurrence, keeping only predicates in `keep` (all when empty).  Layout,
// cons notation and variable names no longer matter after this.
inline std::vector<std::string> normalized_clauses(const Program& p,
                                                   const std::set<SymbolId>& keep = {}) {
  std::vector<std::string> out;
  for (const Clause& c : p.clauses()) {
    if (!keep.empty() && !keep.count(c.head.functor())) continue;
    Program one = parse_program(print_clause(c));
    Clause renamed = one.clauses().front();
    for (std::size_t i = 0; i < renamed.var_names.size(); ++i)
      renamed.var_names[i] = "V" + std::to_string(i);
    out.push_back(print_clause(renamed));
  }
  return out;
}

inline std::set<SymbolId> defined_predicates(const Program& p) {
  std::set<SymbolId> out;
  for (const Clause& c : p.clauses()) out.insert(c.head.functor());
  return out;
}

// Golden clauses against the same predicates of `produced`, in order.
inline bool matches_golden(const Program& produced, const Program& golden, std::string* diff) {
  auto want = normalized_clauses(golden);
  auto got = normalized_clauses(produced, defined_predicates(golden));
  if (want == got) return true;
  if (diff) {
    diff->clear();
    for (std::size_t i = 0; i < std::max(want.size(), got.size()); ++i) {
      std::string w = i < want.size() ? want[i] : "<none>";
      std::string g = i < got.size() ? got[i] : "<none>";
      if (w != g) *diff += "  want " + w + "\n  got  " + g + "\n";
    }
  }
  return false;
}

}  // namespace flounder::testing
