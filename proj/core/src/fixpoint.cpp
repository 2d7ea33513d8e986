#include "flounder/fixpoint.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "flounder/encoding.hpp"
#include "flounder/printer.hpp"
#include "flounder/transform.hpp"

namespace flounder {

// ---------------------------------------------------------------------------
// Bounded base

namespace {

void collect_signature(const Term& t, std::set<std::pair<SymbolId, std::uint32_t>>& functors,
                       std::vector<Term>& constants) {
  if (t.is_variable()) return;
  if (t.is_integer()) {
    if (std::find(constants.begin(), constants.end(), t) == constants.end())
      constants.push_back(t);
    return;
  }
  if (is_extraneous(t.functor())) return;
  if (t.arity() == 0) {
    if (std::find(constants.begin(), constants.end(), t) == constants.end())
      constants.push_back(t);
    return;
  }
  functors.insert({t.functor(), t.arity()});
  for (const Term& a : t.args()) collect_signature(a, functors, constants);
}

void add_subterms(const Term& t, std::vector<Term>& out, std::unordered_set<Term, TermHash>& seen) {
  if (!seen.insert(t).second) return;
  out.push_back(t);
  if (t.is_compound())
    for (const Term& a : t.args()) add_subterms(a, out, seen);
}

}  // namespace

BoundedBase BoundedBase::build(const Program& p, const BaseConfig& config) {
  BoundedBase b;
  b.config_ = config;
  for (std::uint32_t k = 0; k < config.extraneous; ++k)
    b.extraneous_.push_back(Term::extraneous(k));
  auto add = [&](const Term& t) {
    if (b.members_.insert(t).second) {
      b.universe_.push_back(t);
      if (b.universe_.size() > config.max_universe)
        throw std::length_error("bounded base universe exceeds " +
                                std::to_string(config.max_universe) + " terms");
    }
  };

  if (config.shape == UniverseShape::kLists) {
    std::vector<Term> elements = config.constants;
    if (elements.empty()) {
      std::set<std::pair<SymbolId, std::uint32_t>> functors;
      for (const Clause& c : p.clauses()) {
        for (const Term& a : c.head.args()) collect_signature(a, functors, elements);
        for_each_atom(c.body, [&](const Atom& atom) {
          for (const Term& a : atom.args()) collect_signature(a, functors, elements);
        });
      }
      elements.erase(std::remove(elements.begin(), elements.end(), Term::nil()), elements.end());
    }
    b.leaves_.insert(elements.begin(), elements.end());
    for (const Term& e : b.extraneous_) elements.push_back(e);
    std::vector<Term> tails{Term::nil()};
    for (const Term& e : b.extraneous_) tails.push_back(e);
    for (const Term& e : b.extraneous_) add(e);
    // Lists by spine length, built from the tail outwards.
    std::vector<Term> layer = tails;
    for (const Term& t : layer) add(t);
    std::uint32_t max_spine = config.depth == 0 ? 0 : config.depth - 1;
    for (std::uint32_t n = 1; n <= max_spine; ++n) {
      std::vector<Term> next;
      for (const Term& e : elements)
        for (const Term& t : layer) next.push_back(Term::cons(e, t));
      for (const Term& t : next) add(t);
      layer = std::move(next);
    }
  } else {
    std::set<std::pair<SymbolId, std::uint32_t>> functors;
    std::vector<Term> constants = config.constants;
    for (const Clause& c : p.clauses()) {
      for (const Term& a : c.head.args()) collect_signature(a, functors, constants);
      for_each_atom(c.body, [&](const Atom& atom) {
        if (p.builtin(atom.functor()) == Builtin::kEvar ||
            p.builtin(atom.functor()) == Builtin::kEnonground)
          return;
        for (const Term& a : atom.args()) collect_signature(a, functors, constants);
      });
    }
    b.leaves_.insert(constants.begin(), constants.end());
    b.functors_ = functors;
    std::vector<Term> level;
    for (const Term& c : constants) level.push_back(c);
    for (const Term& e : b.extraneous_) level.push_back(e);
    for (const Term& t : level) add(t);
    for (std::uint32_t d = 2; d <= config.depth; ++d) {
      std::vector<Term> prev = b.universe_;
      std::vector<Term> fresh;
      for (const auto& [f, arity] : functors) {
        std::vector<std::size_t> idx(arity, 0);
        if (prev.empty()) break;
        for (;;) {
          std::vector<Term> args;
          for (std::size_t i : idx) args.push_back(prev[i]);
          fresh.push_back(Term::compound(f, args));
          if (fresh.size() > config.max_universe)
            throw std::length_error("bounded base universe exceeds " +
                                    std::to_string(config.max_universe) + " terms");
          std::size_t k = 0;
          while (k < arity && ++idx[k] == prev.size()) idx[k++] = 0;
          if (k == arity) break;
        }
      }
      for (const Term& t : fresh) add(t);
    }
  }

  for (const Term& t : b.universe_) add_subterms(t, b.domain_, b.domain_set_);
  return b;
}

bool BoundedBase::admits_at(const Term& t, std::uint32_t depth) const {
  if (depth == 0) return false;
  if (t.is_variable()) return config_.extraneous > 0;
  if (t.is_extraneous_rooted())
    return t.is_ground() ? members_.count(t) > 0 : config_.extraneous > 0;
  if (config_.shape == UniverseShape::kLists) {
    // Elements are flat, so only the spine length matters.
    Term spine = t;
    for (std::uint32_t n = 0; spine.is_cons(); ++n) {
      if (n + 1 >= depth) return false;
      const Term& e = spine.arg(0);
      if (e.is_variable() || e.is_extraneous_rooted()) {
        if (!admits_at(e, 1)) return false;
      } else if (!leaves_.count(e)) {
        return false;
      }
      spine = spine.arg(1);
    }
    return spine.is_nil() || ((spine.is_variable() || spine.is_extraneous_rooted()) && admits_at(spine, 1));
  }
  if (t.arity() == 0) return leaves_.count(t) > 0;
  if (!functors_.count({t.functor(), t.arity()})) return false;
  for (const Term& a : t.args())
    if (!admits_at(a, depth - 1)) return false;
  return true;
}

bool BoundedBase::admits(const Term& t) const {
  if (t.is_ground()) return contains(t);
  return admits_at(t, config_.depth == 0 ? 1 : config_.depth);
}

std::string BoundedBase::describe() const {
  std::ostringstream os;
  if (config_.shape == UniverseShape::kLists) {
    os << "lists(spine<=" << (config_.depth ? config_.depth - 1 : 0) << ", elements {";
    for (std::size_t i = 0; i < config_.constants.size(); ++i)
      os << (i ? ", " : "") << print_term(config_.constants[i]);
    os << "}";
  } else {
    os << "herbrand(depth<=" << config_.depth;
  }
  os << ", VAR(0.." << (config_.extraneous ? config_.extraneous - 1 : 0) << "), |U|="
     << universe_.size() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Ground evaluation

namespace {

struct Rule {
  Atom head;
  std::vector<Atom> literals;
  std::vector<Atom> builtins;
  std::vector<Builtin> builtin_kinds;
  bool encoding = false;
  std::uint32_t num_vars = 0;
};

void dnf(const Conjunction& body, std::vector<std::vector<Atom>>& out) {
  out.assign(1, {});
  for (const BodyGoal& g : body) {
    if (g.is_atom()) {
      for (auto& alt : out) alt.push_back(g.atom);
      continue;
    }
    std::vector<std::vector<Atom>> next;
    for (const Conjunction& b : g.branches) {
      std::vector<std::vector<Atom>> sub;
      dnf(b, sub);
      for (const auto& prefix : out)
        for (const auto& s : sub) {
          auto merged = prefix;
          merged.insert(merged.end(), s.begin(), s.end());
          next.push_back(std::move(merged));
        }
    }
    out = std::move(next);
  }
}

std::vector<Rule> compile(const Program& p) {
  std::vector<Rule> rules;
  for (const Clause& c : p.clauses()) {
    std::vector<std::vector<Atom>> alts;
    dnf(c.body, alts);
    for (const auto& alt : alts) {
      Rule r;
      r.head = c.head;
      r.num_vars = c.num_vars();
      for (const Atom& a : alt) r.num_vars = std::max(r.num_vars, a.var_limit());
      r.num_vars = std::max(r.num_vars, c.head.var_limit());
      r.encoding = c.tag == ClauseTag::kDelay;
      for (const Atom& a : alt) {
        Builtin b = p.builtin(a.functor());
        if (b == Builtin::kNone) {
          r.literals.push_back(a);
        } else {
          r.builtins.push_back(a);
          r.builtin_kinds.push_back(b);
          if (b == Builtin::kEvar || b == Builtin::kEnonground) r.encoding = true;
        }
      }
      rules.push_back(std::move(r));
    }
  }
  return rules;
}

struct Relation {
  std::vector<Atom> atoms;
  std::unordered_set<Atom, TermHash> set;
  std::vector<std::unordered_map<Term, std::vector<std::uint32_t>, TermHash>> index;

  bool add(const Atom& a) {
    if (!set.insert(a).second) return false;
    auto id = static_cast<std::uint32_t>(atoms.size());
    atoms.push_back(a);
    if (index.size() < a.arity()) index.resize(a.arity());
    for (std::uint32_t i = 0; i < a.arity(); ++i) index[i][a.arg(i)].push_back(id);
    return true;
  }
};

enum class Kind : std::uint8_t { kPresent, kFlagged };

struct Db {
  std::unordered_map<SymbolId, Relation> rel[2];

  Relation* find(Kind k, SymbolId pred) {
    auto& m = rel[static_cast<int>(k)];
    auto it = m.find(pred);
    return it == m.end() ? nullptr : &it->second;
  }
  Relation& get(Kind k, SymbolId pred) { return rel[static_cast<int>(k)][pred]; }
};

struct Source {
  const Relation* rel = nullptr;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool delta = false;
};

class Joiner {
 public:
  using Emit = std::function<void(const Atom&)>;

  explicit Joiner(const BoundedBase& base) : base_(base) {}

  void run(const Rule& r, const std::vector<Source>& sources, const Emit& emit) {
    for (const Source& s : sources)
      if (!s.rel || s.begin >= s.end) return;
    rule_ = &r;
    sources_ = &sources;
    emit_ = &emit;
    binds_.assign(r.num_vars, Term());
    trail_.clear();
    done_.assign(r.literals.size(), false);
    literals(r.literals.size());
  }

 private:
  void bind(VarId v, const Term& t) {
    binds_[v] = t;
    trail_.push_back(v);
  }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      binds_[trail_.back()] = Term();
      trail_.pop_back();
    }
  }

  bool match(const Term& pat, const Term& g) {
    if (pat.is_ground()) return pat == g;
    if (pat.is_variable()) {
      const Term& b = binds_[pat.var_id()];
      if (b) return b == g;
      bind(pat.var_id(), g);
      return true;
    }
    if (!g.is_compound() || g.functor() != pat.functor() || g.arity() != pat.arity())
      return false;
    for (std::size_t i = 0; i < pat.arity(); ++i)
      if (!match(pat.arg(i), g.arg(i))) return false;
    return true;
  }

  // Null when some variable is unbound.
  Term build(const Term& pat) const {
    if (pat.is_ground()) return pat;
    if (pat.is_variable()) return binds_[pat.var_id()];
    std::vector<Term> args;
    args.reserve(pat.arity());
    for (const Term& a : pat.args()) {
      Term x = build(a);
      if (!x) return Term();
      args.push_back(std::move(x));
    }
    return Term::compound(pat.functor(), args);
  }

  Term key(const Term& pat) const {
    if (pat.is_ground()) return pat;
    if (pat.is_variable()) return binds_[pat.var_id()];
    return Term();
  }

  void literals(std::size_t remaining) {
    if (remaining == 0) {
      builtins(0);
      return;
    }
    const Rule& r = *rule_;
    // Delta literal first, then the literal with the most bound arguments.
    std::size_t pick = r.literals.size();
    int best = -1;
    for (std::size_t i = 0; i < r.literals.size(); ++i) {
      if (done_[i]) continue;
      if ((*sources_)[i].delta) {
        pick = i;
        break;
      }
      int bound = 0;
      for (const Term& a : r.literals[i].args())
        if (key(a)) ++bound;
      if (bound > best) {
        best = bound;
        pick = i;
      }
    }
    const Source& src = (*sources_)[pick];
    const Atom& pat = r.literals[pick];
    done_[pick] = true;
    const std::vector<std::uint32_t>* ids = nullptr;
    if (!src.delta) {
      for (std::uint32_t i = 0; i < pat.arity(); ++i) {
        Term k = key(pat.arg(i));
        if (!k) continue;
        if (i >= src.rel->index.size()) {
          done_[pick] = false;
          return;
        }
        auto it = src.rel->index[i].find(k);
        if (it == src.rel->index[i].end()) {
          done_[pick] = false;
          return;
        }
        if (!ids || it->second.size() < ids->size()) ids = &it->second;
      }
    }
    auto visit = [&](std::uint32_t id) {
      const Atom& a = src.rel->atoms[id];
      std::size_t mark = trail_.size();
      bool ok = true;
      for (std::uint32_t i = 0; i < pat.arity() && ok; ++i) ok = match(pat.arg(i), a.arg(i));
      if (ok) literals(remaining - 1);
      undo(mark);
    };
    if (ids) {
      for (std::uint32_t id : *ids) {
        if (id >= src.end) break;
        if (id >= src.begin) visit(id);
      }
    } else {
      for (std::uint32_t id = src.begin; id < src.end; ++id) visit(id);
    }
    done_[pick] = false;
  }

  // Tries every domain value for the first unbound variable of `t`.
  bool generate(const Term& t, std::size_t i) {
    std::vector<VarId> vars;
    collect_variables(t, vars);
    for (VarId v : vars) {
      if (binds_[v]) continue;
      for (const Term& d : base_.domain()) {
        std::size_t mark = trail_.size();
        bind(v, d);
        builtins(i);
        undo(mark);
      }
      return true;
    }
    return false;
  }

  void builtins(std::size_t i) {
    const Rule& r = *rule_;
    if (i == r.builtins.size()) {
      head();
      return;
    }
    const Atom& b = r.builtins[i];
    switch (r.builtin_kinds[i]) {
      case Builtin::kTrue:
        builtins(i + 1);
        return;
      case Builtin::kFail:
      case Builtin::kNone:
        return;
      case Builtin::kEvar: {
        const Term& a = b.arg(0);
        if (a.is_variable() && !binds_[a.var_id()]) {
          for (const Term& e : base_.extraneous_terms()) {
            std::size_t mark = trail_.size();
            bind(a.var_id(), e);
            builtins(i + 1);
            undo(mark);
          }
          return;
        }
        Term t = build(a);
        if (!t) {
          generate(a, i);
          return;
        }
        if (t.is_extraneous_rooted()) builtins(i + 1);
        return;
      }
      case Builtin::kEnonground: {
        Term t = build(b.arg(0));
        if (!t) {
          generate(b.arg(0), i);
          return;
        }
        if (t.has_extraneous()) builtins(i + 1);
        return;
      }
      case Builtin::kPlus: {
        Term x = build(b.arg(0)), y = build(b.arg(1)), z = build(b.arg(2));
        int unbound = !x + !y + !z;
        if (unbound == 0) {
          if (x.is_integer() && y.is_integer() && z.is_integer() &&
              x.value() + y.value() == z.value())
            builtins(i + 1);
          return;
        }
        if (unbound == 1) {
          int k = !x ? 0 : !y ? 1 : 2;
          const Term& pat = b.arg(k);
          const Term& p = k == 0 ? y : x;
          const Term& q = k == 2 ? y : z;
          if (pat.is_variable() && p.is_integer() && q.is_integer()) {
            Term v = Term::integer(k == 2 ? BigInt(p.value() + q.value())
                                          : BigInt(q.value() - p.value()));
            if (!base_.in_domain(v)) return;
            std::size_t mark = trail_.size();
            bind(pat.var_id(), v);
            builtins(i + 1);
            undo(mark);
            return;
          }
          if (pat.is_variable()) return;  // non-integer operand
        }
        generate(b, i);
        return;
      }
      case Builtin::kLeq: {
        Term x = build(b.arg(0)), y = build(b.arg(1));
        if (x && y) {
          if (x.is_integer() && y.is_integer() && x.value() <= y.value()) builtins(i + 1);
          return;
        }
        generate(b, i);
        return;
      }
    }
  }

  void head() {
    const Rule& r = *rule_;
    std::vector<VarId> vars;
    collect_variables(r.head, vars);
    head_vars(vars, 0);
  }

  void head_vars(const std::vector<VarId>& vars, std::size_t k) {
    while (k < vars.size() && binds_[vars[k]]) ++k;
    if (k == vars.size()) {
      const Rule& r = *rule_;
      std::vector<Term> args;
      args.reserve(r.head.arity());
      for (const Term& a : r.head.args()) {
        Term t = build(a);
        if (!base_.contains(t)) return;
        args.push_back(std::move(t));
      }
      (*emit_)(Term::compound(r.head.functor(), args));
      return;
    }
    for (const Term& d : base_.domain()) {
      std::size_t mark = trail_.size();
      bind(vars[k], d);
      head_vars(vars, k + 1);
      undo(mark);
    }
  }

  const BoundedBase& base_;
  const Rule* rule_ = nullptr;
  const std::vector<Source>* sources_ = nullptr;
  const Emit* emit_ = nullptr;
  std::vector<Term> binds_;
  std::vector<VarId> trail_;
  std::vector<bool> done_;
};

Db load(const FInterpretation& interp) {
  Db db;
  for (const Atom& a : sorted_atoms(interp.atoms)) db.get(Kind::kPresent, a.functor()).add(a);
  for (const Atom& a : sorted_atoms(interp.flagged)) db.get(Kind::kFlagged, a.functor()).add(a);
  return db;
}

Source full(Db& db, Kind k, SymbolId pred) {
  Relation* r = db.find(k, pred);
  if (!r) return Source{};
  return Source{r, 0, static_cast<std::uint32_t>(r->atoms.size()), false};
}

// One naive round; heads come out through `emit` tagged by kind.
void naive_round(const std::vector<Rule>& rules, Db& db, const BoundedBase& base, bool flags,
                 const std::function<void(Kind, const Atom&)>& emit) {
  Joiner j(base);
  for (const Rule& r : rules) {
    std::vector<Source> src;
    for (const Atom& l : r.literals) src.push_back(full(db, Kind::kPresent, l.functor()));
    j.run(r, src, [&](const Atom& h) {
      emit(Kind::kPresent, h);
      if (flags && r.encoding) emit(Kind::kFlagged, h);
    });
    if (!flags) continue;
    for (std::size_t i = 0; i < r.literals.size(); ++i) {
      auto s = src;
      s[i] = full(db, Kind::kFlagged, r.literals[i].functor());
      j.run(r, s, [&](const Atom& h) { emit(Kind::kFlagged, h); });
    }
  }
}

LfpResult semi_naive(const Program& p, const BoundedBase& base, bool flags) {
  std::vector<Rule> rules = compile(p);
  Db db;
  LfpResult result;
  // Delta ranges from the previous round, per relation.
  std::map<std::pair<int, SymbolId>, std::pair<std::uint32_t, std::uint32_t>> delta;
  Joiner j(base);
  for (std::size_t round = 1;; ++round) {
    std::vector<Atom> new_present, new_flagged;
    AtomSet seen_present, seen_flagged;
    auto emit = [&](Kind k, const Atom& h) {
      if (k == Kind::kPresent) {
        Relation* r = db.find(Kind::kPresent, h.functor());
        if ((r && r->set.count(h)) || !seen_present.insert(h).second) return;
        new_present.push_back(h);
      } else {
        Relation* r = db.find(Kind::kFlagged, h.functor());
        if ((r && r->set.count(h)) || !seen_flagged.insert(h).second) return;
        new_flagged.push_back(h);
      }
    };
    auto source = [&](Kind k, SymbolId pred, bool is_delta) {
      Relation* r = db.find(k, pred);
      if (!r) return Source{};
      if (!is_delta) return Source{r, 0, static_cast<std::uint32_t>(r->atoms.size()), false};
      auto it = delta.find({static_cast<int>(k), pred});
      if (it == delta.end()) return Source{};
      return Source{r, it->second.first, it->second.second, true};
    };
    for (const Rule& r : rules) {
      std::size_t n = r.literals.size();
      if (n == 0) {
        if (round == 1) {
          j.run(r, {}, [&](const Atom& h) {
            emit(Kind::kPresent, h);
            if (flags && r.encoding) emit(Kind::kFlagged, h);
          });
        }
        continue;
      }
      // Variant -1 reads every literal from the present relations; variant i
      // reads literal i from the flagged relation.
      int last = flags ? static_cast<int>(n) - 1 : -1;
      for (int variant = -1; variant <= last; ++variant) {
        for (std::size_t d = 0; d < n; ++d) {
          std::vector<Source> src;
          for (std::size_t i = 0; i < n; ++i) {
            Kind k = static_cast<int>(i) == variant ? Kind::kFlagged : Kind::kPresent;
            src.push_back(source(k, r.literals[i].functor(), i == d));
          }
          bool flagged_head = variant >= 0;
          j.run(r, src, [&](const Atom& h) {
            if (flagged_head) {
              emit(Kind::kFlagged, h);
            } else {
              emit(Kind::kPresent, h);
              if (flags && r.encoding) emit(Kind::kFlagged, h);
            }
          });
        }
      }
    }
    if (new_present.empty() && new_flagged.empty()) break;
    delta.clear();
    std::sort(new_present.begin(), new_present.end(), TermLess{});
    std::sort(new_flagged.begin(), new_flagged.end(), TermLess{});
    for (const Atom& a : new_present) {
      Relation& r = db.get(Kind::kPresent, a.functor());
      auto key = std::make_pair(static_cast<int>(Kind::kPresent), a.functor());
      auto size = static_cast<std::uint32_t>(r.atoms.size());
      auto [it, inserted] = delta.try_emplace(key, size, size);
      r.add(a);
      it->second.second = size + 1;
      result.value.atoms.insert(a);
    }
    for (const Atom& a : new_flagged) {
      Relation& r = db.get(Kind::kFlagged, a.functor());
      auto key = std::make_pair(static_cast<int>(Kind::kFlagged), a.functor());
      auto size = static_cast<std::uint32_t>(r.atoms.size());
      auto [it, inserted] = delta.try_emplace(key, size, size);
      r.add(a);
      it->second.second = size + 1;
      result.value.flagged.insert(a);
    }
    result.atom_deltas.push_back(new_present.size());
    result.flag_deltas.push_back(new_flagged.size());
    ++result.iterations;
  }
  return result;
}

}  // namespace

AtomSet tp_step(const Program& p, const AtomSet& interp, const BoundedBase& base) {
  FInterpretation in{interp, {}};
  Db db = load(in);
  AtomSet out;
  naive_round(compile(p), db, base, false, [&](Kind k, const Atom& h) {
    if (k == Kind::kPresent) out.insert(h);
  });
  return out;
}

FInterpretation tfp_step(const Program& p, const FInterpretation& interp,
                         const BoundedBase& base) {
  Db db = load(interp);
  FInterpretation out;
  naive_round(compile(p), db, base, true, [&](Kind k, const Atom& h) {
    (k == Kind::kPresent ? out.atoms : out.flagged).insert(h);
  });
  return out;
}

LfpResult lfp_tp(const Program& p, const BoundedBase& base) { return semi_naive(p, base, false); }
LfpResult lfp_tfp(const Program& p, const BoundedBase& base) { return semi_naive(p, base, true); }

std::vector<Atom> sorted_atoms(const AtomSet& atoms) {
  std::vector<Atom> out(atoms.begin(), atoms.end());
  std::sort(out.begin(), out.end(), TermLess{});
  return out;
}

namespace {

void occurrence_list(const Term& t, std::vector<VarId>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) occurrence_list(a, out);
}

}  // namespace

std::vector<Atom> efs_extract(const FInterpretation& model) {
  std::vector<Atom> decoded;
  AtomSet seen;
  for (const Atom& a : sorted_atoms(model.flagged)) {
    Atom d = canonical_variant(decode(strip_atom(a)));
    if (seen.insert(d).second) decoded.push_back(d);
  }
  // Drop p(X, X) when p(X, Y) is present: instances by a variable-to-variable
  // map.  Such pairs share their skeleton, every variable read as one, and
  // differ only in how their variable occurrences are grouped.
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> by_skeleton;
  std::vector<std::vector<VarId>> occurrences(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    occurrence_list(decoded[i], occurrences[i]);
    Substitution one;
    for (VarId v : occurrences[i]) one.bind(v, Term::variable(0));
    by_skeleton[apply(one, decoded[i])].push_back(i);
  }
  // b's grouping strictly refines a's.
  auto finer = [&](const std::vector<VarId>& b, const std::vector<VarId>& a) {
    std::unordered_map<VarId, VarId> to_a;
    bool strict = false;
    std::unordered_map<VarId, VarId> to_b;
    for (std::size_t k = 0; k < b.size(); ++k) {
      auto [it, fresh] = to_a.emplace(b[k], a[k]);
      if (!fresh && it->second != a[k]) return false;
      auto [jt, fresh_b] = to_b.emplace(a[k], b[k]);
      if (!fresh_b && jt->second != b[k]) strict = true;
    }
    return strict;
  };
  std::vector<Atom> out;
  for (const auto& entry : by_skeleton) {
    const std::vector<std::size_t>& group = entry.second;
    for (std::size_t i : group) {
      bool merged = std::any_of(group.begin(), group.end(), [&](std::size_t j) {
        return j != i && finer(occurrences[j], occurrences[i]);
      });
      if (!merged) out.push_back(decoded[i]);
    }
  }
  std::sort(out.begin(), out.end(), TermLess{});
  return out;
}

std::string format_interpretation(const FInterpretation& interp, bool flagged_only) {
  std::ostringstream os;
  for (const Atom& a : sorted_atoms(interp.atoms)) {
    bool f = interp.flagged.count(a) > 0;
    if (flagged_only && !f) continue;
    os << (f ? "* " : "  ") << print_term(a) << '\n';
  }
  return os.str();
}

Prop7Report verify_prop7(const Program& p, const BoundedBase& base, const Prop7Options& options) {
  Prop7Report report;
  report.base = base.describe();
  std::vector<SymbolId> preds;
  for (SymbolId pred : p.predicates())
    if (p.builtin(pred) == Builtin::kNone) preds.push_back(pred);

  Program sf = sf_transform(p);
  LfpResult lfp = lfp_tp(sf, base);
  report.iterations = lfp.iterations;
  AtomSet lhs;
  for (const Atom& a : lfp.value.atoms) {
    Atom s = strip_atom(a);
    if (std::find(preds.begin(), preds.end(), s.functor()) != preds.end()) lhs.insert(s);
  }

  const auto& u = base.universe();
  std::size_t total = 0;
  for (SymbolId pred : preds) {
    std::size_t n = 1;
    for (std::uint32_t i = 0; i < symbol(pred).arity; ++i) n *= u.size();
    total += n;
  }
  if (total > options.max_candidates)
    throw std::length_error("prop7 check needs " + std::to_string(total) +
                            " candidate atoms, above the limit of " +
                            std::to_string(options.max_candidates));
  report.candidates = total;

  // The operational side only counts derivations whose atoms, once the
  // remaining variables are encoded, stay inside the base; these are the
  // derivations the bounded fixpoint can mirror.
  SolveOptions sld;
  sld.respect_delays = false;
  sld.depth_bound = options.solve_depth;
  sld.record_derivations = false;
  sld.report_depth_exceeded = false;
  sld.track_selected = true;
  SolveOptions sldf = sld;
  sldf.respect_delays = true;

  // 'VAR'(0) can stand in for any remaining variable: in both universe
  // shapes it is a member wherever some other term would be, so an atom
  // rejected with it is rejected for every instance.
  auto admissible = [&](const Atom& a, const Substitution& back) {
    Builtin b = p.builtin(a.functor());
    if (b == Builtin::kTrue || b == Builtin::kFail) return true;
    if (back.empty()) {
      for (const Term& t : a.args())
        if (!base.admits(t)) return false;
      return true;
    }
    Term g = apply(back, a);
    for (const Term& t : g.args())
      if (!base.admits(t)) return false;
    return true;
  };
  auto inside = [&](const Outcome& o, const Substitution& back) {
    auto ok = [&](const Atom& a) { return admissible(a, back); };
    std::vector<Atom> selected = o.selected();
    return std::all_of(selected.begin(), selected.end(), ok) &&
           std::all_of(o.residual.begin(), o.residual.end(), ok);
  };
  sld.admissible = [&](const Atom& a) { return admissible(a, Substitution{}); };
  sldf.admissible = sld.admissible;
  Engine sld_engine(p, sld);
  Engine sldf_engine(p, sldf);

  // Candidates are mostly distinct up to renaming, so nothing is cached.
  auto in_efs = [&](const Atom& a) {
    Atom b = canonical_variant(decode(a));
    bool found = false;
    sldf_engine.solve(Goal::from_atom(b), [&](const Outcome& o) {
      if (o.kind != OutcomeKind::kFloundered || !is_variant(apply(o.answer, b), b)) return true;
      Substitution back;
      for (VarId v : variables_of(b)) {
        const Term* t = o.answer.lookup(v);
        back.bind(t ? t->var_id() : v, Term::extraneous(v));
      }
      found = inside(o, back);
      return !found;
    });
    return found;
  };
  auto in_ss = [&](const Atom& a) {
    bool found = false;
    sld_engine.solve(Goal::from_atom(a), [&](const Outcome& o) {
      if (o.kind == OutcomeKind::kSuccess) found = inside(o, Substitution{});
      return !found;
    });
    return found;
  };

  AtomSet rhs;
  for (SymbolId pred : preds) {
    std::uint32_t arity = symbol(pred).arity;
    std::vector<std::size_t> idx(arity, 0);
    std::vector<Term> args(arity);
    for (;;) {
      for (std::uint32_t i = 0; i < arity; ++i) args[i] = u[idx[i]];
      Atom a = Term::compound(pred, args);
      if (in_ss(a) || in_efs(a)) rhs.insert(a);
      std::uint32_t k = 0;
      while (k < arity && ++idx[k] == u.size()) idx[k++] = 0;
      if (k == arity) break;
    }
  }

  report.lhs_size = lhs.size();
  report.rhs_size = rhs.size();
  for (const Atom& a : sorted_atoms(lhs))
    if (!rhs.count(a) && report.only_lhs.size() < options.max_reported) report.only_lhs.push_back(a);
  for (const Atom& a : sorted_atoms(rhs))
    if (!lhs.count(a) && report.only_rhs.size() < options.max_reported) report.only_rhs.push_back(a);
  report.holds = lhs == rhs;
  return report;
}

}  // namespace flounder
