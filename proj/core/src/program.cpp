#include "flounder/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace flounder {

bool DelayCondition::holds(std::span<const Term> args) const {
  for (const auto& conj : disjuncts) {
    bool all = true;
    for (const CondLiteral& lit : conj) {
      const Term& t = args[lit.arg];
      bool ok = lit.test == CondTest::kVar ? t.is_variable() : !t.is_ground();
      if (!ok) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

void DelayCondition::merge(const DelayCondition& other) {
  for (const auto& conj : other.disjuncts)
    if (std::find(disjuncts.begin(), disjuncts.end(), conj) == disjuncts.end())
      disjuncts.push_back(conj);
}

BodyGoal BodyGoal::make_disjunction(std::vector<Conjunction> branches) {
  BodyGoal g;
  g.kind = Kind::kDisjunction;
  g.branches = std::move(branches);
  return g;
}

Goal Goal::from_atom(const Atom& a, std::vector<std::string> names) {
  Goal g;
  g.body.push_back(BodyGoal::make_atom(a));
  g.body.front().index = 1;
  VarId n = a.var_limit();
  for (VarId i = static_cast<VarId>(names.size()); i < n; ++i)
    names.push_back("_G" + std::to_string(i));
  g.var_names = std::move(names);
  return g;
}

Builtin builtin_kind(SymbolId pred) {
  static const SymbolId evar = intern("evar", 1);
  static const SymbolId enonground = intern("enonground", 1);
  static const SymbolId plus = intern("plus", 3);
  static const SymbolId leq = intern("leq", 2);
  if (pred == symbols::kTrue) return Builtin::kTrue;
  if (pred == symbols::kFail) return Builtin::kFail;
  if (pred == evar) return Builtin::kEvar;
  if (pred == enonground) return Builtin::kEnonground;
  if (pred == plus) return Builtin::kPlus;
  if (pred == leq) return Builtin::kLeq;
  return Builtin::kNone;
}

std::optional<DelayCondition> intrinsic_delay(Builtin b) {
  auto var = [](std::uint32_t i) { return CondLiteral{CondTest::kVar, i}; };
  switch (b) {
    case Builtin::kPlus:
      return DelayCondition{{{var(0), var(1)}, {var(0), var(2)}, {var(1), var(2)}}};
    case Builtin::kLeq:
      return DelayCondition{{{var(0)}, {var(1)}}};
    default:
      return std::nullopt;
  }
}

namespace {

void normalize_rec(Conjunction& body, std::uint32_t& next) {
  Conjunction out;
  out.reserve(body.size());
  for (BodyGoal& g : body) {
    if (g.kind == BodyGoal::Kind::kDisjunction && g.branches.size() == 1) {
      for (BodyGoal& inner : g.branches.front()) out.push_back(std::move(inner));
    } else {
      out.push_back(std::move(g));
    }
  }
  // Flattening may expose further single-branch disjunctions.
  bool again = std::any_of(out.begin(), out.end(), [](const BodyGoal& g) {
    return g.kind == BodyGoal::Kind::kDisjunction && g.branches.size() == 1;
  });
  body = std::move(out);
  if (again) {
    std::uint32_t dummy = 0;
    normalize_rec(body, dummy);
  }
  for (BodyGoal& g : body) {
    g.index = ++next;
    if (!g.is_atom())
      for (Conjunction& b : g.branches) normalize_rec(b, next);
  }
}

void atoms_rec(const Conjunction& body, const std::function<void(const Atom&)>& fn) {
  for (const BodyGoal& g : body) {
    if (g.is_atom()) {
      fn(g.atom);
    } else {
      for (const Conjunction& b : g.branches) atoms_rec(b, fn);
    }
  }
}

}  // namespace

void normalize_body(Conjunction& body) {
  std::uint32_t next = 0;
  normalize_rec(body, next);
}

void for_each_atom(const Conjunction& body, const std::function<void(const Atom&)>& fn) {
  atoms_rec(body, fn);
}

std::size_t count_atoms(const Conjunction& body) {
  std::size_t n = 0;
  for_each_atom(body, [&](const Atom&) { ++n; });
  return n;
}

void Program::note_predicate(SymbolId pred) {
  if (std::find(predicates_.begin(), predicates_.end(), pred) == predicates_.end())
    predicates_.push_back(pred);
}

void Program::add_clause(Clause c) {
  if (c.id == 0) c.id = next_id_;
  if (id_index_.count(c.id)) throw std::invalid_argument("duplicate clause id");
  next_id_ = std::max(next_id_, c.id + 1);
  normalize_body(c.body);
  SymbolId pred = c.head.functor();
  note_predicate(pred);
  id_index_[c.id] = clauses_.size();
  by_pred_[pred].push_back(c.id);
  clauses_.push_back(std::move(c));
  if (!delays_.empty()) refresh_effective();
}

void Program::add_delay(DelayDecl d) {
  note_predicate(d.predicate);
  auto it = delay_index_.find(d.predicate);
  if (it != delay_index_.end()) {
    delays_[it->second].condition.merge(d.condition);
  } else {
    DelayDecl fresh = d;
    fresh.condition = DelayCondition{};
    fresh.condition.merge(d.condition);
    delay_index_[d.predicate] = delays_.size();
    delays_.push_back(std::move(fresh));
  }
  refresh_effective();
}

const Clause& Program::clause(std::uint32_t id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) throw std::out_of_range("unknown clause id");
  return clauses_[it->second];
}

std::span<const std::uint32_t> Program::clauses_for(SymbolId pred) const {
  auto it = by_pred_.find(pred);
  if (it == by_pred_.end()) return {};
  return it->second;
}

const DelayDecl* Program::delay_for(SymbolId pred) const {
  auto it = delay_index_.find(pred);
  return it == delay_index_.end() ? nullptr : &delays_[it->second];
}

const DelayCondition* Program::effective_delay(SymbolId pred) const {
  const DelayDecl* d = delay_for(pred);
  if (d) {
    auto it = effective_.find(pred);
    return it == effective_.end() ? &d->condition : &it->second;
  }
  static const DelayCondition plus = *intrinsic_delay(Builtin::kPlus);
  static const DelayCondition leq = *intrinsic_delay(Builtin::kLeq);
  switch (builtin(pred)) {
    case Builtin::kPlus: return &plus;
    case Builtin::kLeq: return &leq;
    default: return nullptr;
  }
}

void Program::refresh_effective() {
  effective_.clear();
  for (const DelayDecl& d : delays_) {
    auto intrinsic = intrinsic_delay(builtin(d.predicate));
    if (!intrinsic) continue;
    intrinsic->merge(d.condition);
    effective_.emplace(d.predicate, std::move(*intrinsic));
  }
}

Builtin Program::builtin(SymbolId pred) const {
  Builtin b = builtin_kind(pred);
  if (b == Builtin::kNone || b == Builtin::kTrue || b == Builtin::kFail) return b;
  return defines(pred) ? Builtin::kNone : b;
}

bool Program::defines(SymbolId pred) const { return by_pred_.count(pred) > 0; }

std::vector<SymbolId> Program::called_predicates() const {
  std::vector<SymbolId> out;
  for (const Clause& c : clauses_)
    for_each_atom(c.body, [&](const Atom& a) {
      if (std::find(out.begin(), out.end(), a.functor()) == out.end())
        out.push_back(a.functor());
    });
  return out;
}

bool Program::is_horn() const {
  for (const Clause& c : clauses_)
    for (const BodyGoal& g : c.body)
      if (!g.is_atom()) return false;
  return true;
}

}  // namespace flounder
