#include "flounder/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace flounder {

namespace {

bool renamed(const Program& p, SymbolId pred) {
  switch (p.builtin(pred)) {
    case Builtin::kTrue:
    case Builtin::kFail:
    case Builtin::kEvar:
    case Builtin::kEnonground:
      return false;
    default:
      return true;
  }
}

Atom rename_atom(const Program& p, const Atom& a, SymbolId (*mangle)(SymbolId)) {
  if (!renamed(p, a.functor())) return a;
  return Term::compound(mangle(a.functor()), a.args());
}

Conjunction rename_body(const Program& p, const Conjunction& body,
                        SymbolId (*mangle)(SymbolId)) {
  Conjunction out;
  for (const BodyGoal& g : body) {
    if (g.is_atom()) {
      out.push_back(BodyGoal::make_atom(rename_atom(p, g.atom, mangle)));
      continue;
    }
    std::vector<Conjunction> branches;
    for (const Conjunction& b : g.branches) branches.push_back(rename_body(p, b, mangle));
    out.push_back(BodyGoal::make_disjunction(std::move(branches)));
  }
  return out;
}

// Predicates of P in SF order: user predicates first, then called builtins
// that carry a delay condition.
std::vector<SymbolId> sf_order(const Program& p) {
  std::vector<SymbolId> order;
  for (SymbolId pred : p.predicates())
    if (renamed(p, pred)) order.push_back(pred);
  for (SymbolId pred : p.called_predicates()) {
    Builtin b = p.builtin(pred);
    if ((b == Builtin::kPlus || b == Builtin::kLeq) &&
        std::find(order.begin(), order.end(), pred) == order.end())
      order.push_back(pred);
  }
  return order;
}

Clause delay_clause(SymbolId pred, const DelayCondition& cond,
                    std::vector<std::string> names) {
  static const SymbolId evar = intern("evar", 1);
  static const SymbolId enonground = intern("enonground", 1);
  std::uint32_t arity = symbol(pred).arity;
  for (std::uint32_t i = static_cast<std::uint32_t>(names.size()); i < arity; ++i)
    names.push_back(std::string(1, static_cast<char>('A' + i % 26)) +
                    (i >= 26 ? std::to_string(i / 26) : ""));
  Clause c;
  c.tag = ClauseTag::kDelay;
  c.var_names = names;
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < arity; ++i) args.push_back(Term::variable(i));
  c.head = Term::compound(sf_symbol(pred), args);
  std::vector<Conjunction> branches;
  for (const CondConjunction& conj : cond.disjuncts) {
    Conjunction branch;
    for (const CondLiteral& lit : conj) {
      SymbolId test = lit.test == CondTest::kVar ? evar : enonground;
      branch.push_back(BodyGoal::make_atom(Term::compound(test, {Term::variable(lit.arg)})));
    }
    branches.push_back(std::move(branch));
  }
  if (branches.size() == 1) {
    c.body = std::move(branches.front());
  } else {
    c.body.push_back(BodyGoal::make_disjunction(std::move(branches)));
  }
  return c;
}

void check_source(const Program& p) {
  for (const Clause& c : p.clauses()) {
    Builtin b = builtin_kind(c.head.functor());
    if (b == Builtin::kEvar || b == Builtin::kEnonground)
      throw std::invalid_argument("source program defines " + symbol(c.head.functor()).name +
                                  "/1");
    bool extraneous = c.head.has_extraneous();
    for_each_atom(c.body, [&](const Atom& a) { extraneous = extraneous || a.has_extraneous(); });
    if (extraneous)
      throw std::invalid_argument("source clause " + std::to_string(c.id) +
                                  " mentions the extraneous symbol 'VAR'");
  }
}

// Strongly connected component ids of the call graph.
std::map<SymbolId, int> components(const Program& p) {
  std::map<SymbolId, std::set<SymbolId>> edges;
  std::set<SymbolId> nodes;
  for (const Clause& c : p.clauses()) {
    SymbolId h = c.head.functor();
    nodes.insert(h);
    for_each_atom(c.body, [&](const Atom& a) {
      edges[h].insert(a.functor());
      nodes.insert(a.functor());
    });
  }
  auto reach = [&](SymbolId from) {
    std::set<SymbolId> seen;
    std::vector<SymbolId> stack{from};
    while (!stack.empty()) {
      SymbolId x = stack.back();
      stack.pop_back();
      for (SymbolId y : edges[x])
        if (seen.insert(y).second) stack.push_back(y);
    }
    return seen;
  };
  std::map<SymbolId, std::set<SymbolId>> reachable;
  for (SymbolId n : nodes) reachable[n] = reach(n);
  std::map<SymbolId, int> comp;
  int next = 0;
  for (SymbolId n : nodes) {
    if (comp.count(n)) continue;
    comp[n] = next;
    for (SymbolId m : nodes)
      if (!comp.count(m) && reachable[n].count(m) && reachable[m].count(n)) comp[m] = next;
    ++next;
  }
  return comp;
}

}  // namespace

std::vector<std::pair<SymbolId, SymbolId>> sf_predicate_map(const Program& p) {
  std::vector<std::pair<SymbolId, SymbolId>> out;
  for (SymbolId pred : sf_order(p)) out.emplace_back(sf_symbol(pred), pred);
  return out;
}

Program sf_transform(const Program& p) {
  check_source(p);
  Program out;
  for (SymbolId pred : sf_order(p)) {
    Builtin b = p.builtin(pred);
    const DelayDecl* decl = p.delay_for(pred);
    const DelayCondition* cond = p.effective_delay(pred);
    if (cond && !cond->empty())
      out.add_clause(delay_clause(pred, *cond, decl ? decl->arg_names : std::vector<std::string>{}));
    for (std::uint32_t id : p.clauses_for(pred)) {
      const Clause& c = p.clause(id);
      Clause r;
      r.head = rename_atom(p, c.head, sf_symbol);
      r.body = rename_body(p, c.body, sf_symbol);
      r.var_names = c.var_names;
      r.tag = ClauseTag::kOriginal;
      out.add_clause(std::move(r));
    }
    if (b == Builtin::kPlus || b == Builtin::kLeq) {
      Clause bridge;
      std::uint32_t arity = symbol(pred).arity;
      std::vector<Term> args;
      for (std::uint32_t i = 0; i < arity; ++i) {
        args.push_back(Term::variable(i));
        bridge.var_names.push_back(decl && i < decl->arg_names.size()
                                       ? decl->arg_names[i]
                                       : std::string(1, static_cast<char>('A' + i)));
      }
      bridge.head = Term::compound(sf_symbol(pred), args);
      bridge.body.push_back(BodyGoal::make_atom(Term::compound(pred, args)));
      out.add_clause(std::move(bridge));
    }
  }
  return out;
}

Program f_transform(const Program& p, const FOptions& options) {
  if (!p.is_horn()) throw std::invalid_argument("f_transform expects a Horn program");
  Program sf = sf_transform(p);
  std::set<SymbolId> sf_preds;
  for (const auto& [sfp, orig] : sf_predicate_map(p)) {
    (void)orig;
    sf_preds.insert(sfp);
  }
  auto comp = components(sf);
  auto to_f = [](SymbolId sfp) { return f_symbol(strip_suffix(sfp)); };

  Program out;
  for (const Clause& c : sf.clauses()) out.add_clause(c);
  for (const Clause& c : sf.clauses()) {
    Clause f;
    f.var_names = c.var_names;
    f.tag = c.tag;
    f.head = Term::compound(to_f(c.head.functor()), c.head.args());
    if (c.tag == ClauseTag::kDelay) {
      f.body = c.body;
      out.add_clause(std::move(f));
      continue;
    }
    Conjunction body = c.body;
    if (options.recursive_first) {
      int own = comp[c.head.functor()];
      std::stable_partition(body.begin(), body.end(), [&](const BodyGoal& g) {
        return g.is_atom() && sf_preds.count(g.atom.functor()) && comp[g.atom.functor()] == own;
      });
    }
    std::vector<Conjunction> disjuncts;
    for (const BodyGoal& g : body)
      if (g.is_atom() && sf_preds.count(g.atom.functor()))
        disjuncts.push_back(
            {BodyGoal::make_atom(Term::compound(to_f(g.atom.functor()), g.atom.args()))});
    if (disjuncts.empty()) {
      f.body.push_back(BodyGoal::make_atom(Term::constant(symbols::kFail)));
    } else {
      f.body = std::move(body);
      f.body.push_back(BodyGoal::make_disjunction(std::move(disjuncts)));
    }
    out.add_clause(std::move(f));
  }
  return out;
}

}  // namespace flounder
