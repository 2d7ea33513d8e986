#include "flounder/printer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace flounder {

namespace {

struct Names {
  std::span<const std::string> names;
  const std::map<VarId, int>* counts = nullptr;

  std::string of(VarId v) const {
    if (v < names.size()) {
      const std::string& n = names[v];
      if (counts && !n.empty() && n[0] == '_') {
        auto it = counts->find(v);
        if (it != counts->end() && it->second == 1) return "_";
      }
      return n;
    }
    return "_G" + std::to_string(v);
  }
};

void count_vars(const Term& t, std::map<VarId, int>& counts) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    ++counts[t.var_id()];
    return;
  }
  for (const Term& a : t.args()) count_vars(a, counts);
}

void count_body(const Conjunction& body, std::map<VarId, int>& counts) {
  for_each_atom(body, [&](const Atom& a) { count_vars(a, counts); });
}

void write_term(std::ostream& os, const Term& t, const Names& names) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      os << names.of(t.var_id());
      return;
    case Term::Kind::kInteger:
      os << t.value().str();
      return;
    case Term::Kind::kCompound:
      break;
  }
  if (t.is_cons()) {
    os << '[';
    write_term(os, t.arg(0), names);
    Term rest = t.arg(1);
    while (rest.is_cons()) {
      os << ", ";
      write_term(os, rest.arg(0), names);
      rest = rest.arg(1);
    }
    if (!rest.is_nil()) {
      os << '|';
      write_term(os, rest, names);
    }
    os << ']';
    return;
  }
  const Symbol& s = symbol(t.functor());
  os << quote_atom(s.name);
  if (t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ", ";
    write_term(os, t.arg(i), names);
  }
  os << ')';
}

void write_body(std::ostream& os, const Conjunction& body, const Names& names) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) os << ", ";
    const BodyGoal& g = body[i];
    if (g.is_atom()) {
      write_term(os, g.atom, names);
      continue;
    }
    os << '(';
    for (std::size_t b = 0; b < g.branches.size(); ++b) {
      if (b) os << " ; ";
      write_body(os, g.branches[b], names);
    }
    os << ')';
  }
}

}  // namespace

std::string quote_atom(const std::string& name) {
  bool plain = !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') plain = false;
  if (plain || name == "[]") return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string print_term(const Term& t, std::span<const std::string> names) {
  std::ostringstream os;
  write_term(os, t, Names{names});
  return os.str();
}

std::string print_body(const Conjunction& body, std::span<const std::string> names) {
  std::ostringstream os;
  write_body(os, body, Names{names});
  return os.str();
}

std::string print_clause(const Clause& c) {
  std::map<VarId, int> counts;
  count_vars(c.head, counts);
  count_body(c.body, counts);
  Names names{c.var_names, &counts};
  std::ostringstream os;
  write_term(os, c.head, names);
  if (!c.body.empty()) {
    os << " :- ";
    write_body(os, c.body, names);
  }
  os << '.';
  return os.str();
}

std::string print_delay(const DelayDecl& d) {
  std::ostringstream os;
  os << ":- delay " << quote_atom(symbol(d.predicate).name);
  if (!d.arg_names.empty()) {
    os << '(';
    for (std::size_t i = 0; i < d.arg_names.size(); ++i) {
      if (i) os << ", ";
      os << d.arg_names[i];
    }
    os << ')';
  }
  os << " if ";
  for (std::size_t i = 0; i < d.condition.disjuncts.size(); ++i) {
    if (i) os << " ; ";
    const auto& conj = d.condition.disjuncts[i];
    for (std::size_t j = 0; j < conj.size(); ++j) {
      if (j) os << ", ";
      os << (conj[j].test == CondTest::kVar ? "var(" : "nonground(")
         << d.arg_names[conj[j].arg] << ')';
    }
  }
  os << '.';
  return os.str();
}

std::string print_program(const Program& p) {
  // Each declaration goes just before the first clause of its predicate.
  std::ostringstream os;
  for (const DelayDecl& d : p.delays())
    if (!p.defines(d.predicate)) os << print_delay(d) << '\n';
  std::vector<SymbolId> done;
  SymbolId last = 0;
  for (const Clause& c : p.clauses()) {
    SymbolId pred = c.head.functor();
    if (!done.empty() && pred != last) os << '\n';
    last = pred;
    if (std::find(done.begin(), done.end(), pred) == done.end()) {
      done.push_back(pred);
      if (const DelayDecl* d = p.delay_for(pred)) os << print_delay(*d) << '\n';
    }
    os << print_clause(c) << '\n';
  }
  return os.str();
}

std::string print_goal(const Goal& g) {
  std::ostringstream os;
  write_body(os, g.body, Names{g.var_names});
  return os.str();
}

std::string print_bindings(const Substitution& s, std::span<const std::string> names) {
  std::ostringstream os;
  bool first = true;
  for (VarId v = 0; v < names.size(); ++v) {
    const Term* b = s.lookup(v);
    if (!b || names[v].empty() || names[v][0] == '_') continue;
    if (!first) os << ", ";
    first = false;
    os << names[v] << " = ";
    write_term(os, *b, Names{names});
  }
  return os.str();
}

}  // namespace flounder
