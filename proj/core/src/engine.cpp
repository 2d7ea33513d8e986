#include "flounder/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>

#include "flounder/encoding.hpp"
#include "flounder/printer.hpp"

namespace flounder {

namespace {

bool initial_checks() {
#ifdef FLOUNDER_CHECK_INVARIANTS
  return true;
#else
  const char* env = std::getenv("FLOUNDER_CHECK_INVARIANTS");
  return env && *env && std::string(env) != "0";
#endif
}

std::atomic<bool>& checks_flag() {
  static std::atomic<bool> flag{initial_checks()};
  return flag;
}

std::atomic<std::uint64_t> g_checks{0};

struct AnnNode {
  AnnotationEntry entry;
  std::shared_ptr<const AnnNode> parent;
};
using AnnPtr = std::shared_ptr<const AnnNode>;

AnnPtr extend(const AnnPtr& parent, std::uint32_t clause, std::uint32_t goal) {
  return std::make_shared<const AnnNode>(AnnNode{{clause, goal}, parent});
}

Annotation to_annotation(const AnnPtr& p) {
  Annotation out;
  for (const AnnNode* n = p.get(); n; n = n->parent.get()) out.push_back(n->entry);
  return out;
}

struct Entry;
struct Disj {
  std::vector<std::vector<Entry>> branches;
};

struct Entry {
  Term atom;  // null for a disjunction
  std::shared_ptr<const Disj> disj;
  AnnPtr ann;
  bool is_atom() const { return static_cast<bool>(atom); }
};

struct TrailNode {
  Atom atom;
  std::shared_ptr<const TrailNode> next;
};

struct BindNode {
  VarId var;
  Term value;
  std::shared_ptr<const BindNode> next;
};

std::shared_ptr<const BindNode> push_bindings(std::shared_ptr<const BindNode> head,
                                              const Substitution& th) {
  for (const auto& [v, t] : th)
    head = std::make_shared<const BindNode>(BindNode{v, t, std::move(head)});
  return head;
}

struct State {
  std::vector<Entry> goals;
  Term answer;  // '$answer'(V0, ..., Vn-1)
  // With track_selected: selected atoms as they stood and every binding
  // made since, both most recent first.
  std::shared_ptr<const TrailNode> trail;
  std::shared_ptr<const BindNode> binds;
  VarId next_var = 0;
  std::uint32_t depth = 0;
  bool used_delay = false;
};

struct Child {
  Choice choice;
  State state;
};

Term instantiate(const Term& t, VarId offset, const Substitution& th) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    VarId v = t.var_id() + offset;
    if (const Term* b = th.lookup(v)) return *b;
    return Term::variable(v);
  }
  boost::container::small_vector<Term, 4> args;
  for (const Term& a : t.args()) args.push_back(instantiate(a, offset, th));
  return Term::compound(t.functor(), std::span<const Term>(args.data(), args.size()));
}

Entry apply_entry(const Entry& e, const Substitution& th) {
  if (e.is_atom()) {
    Term a = apply(th, e.atom);
    if (a.same_node(e.atom)) return e;
    return Entry{std::move(a), nullptr, e.ann};
  }
  auto d = std::make_shared<Disj>();
  d->branches.reserve(e.disj->branches.size());
  for (const auto& branch : e.disj->branches) {
    std::vector<Entry> out;
    out.reserve(branch.size());
    for (const Entry& x : branch) out.push_back(apply_entry(x, th));
    d->branches.push_back(std::move(out));
  }
  return Entry{Term(), std::move(d), e.ann};
}

// Annotations are only kept when derivations are recorded.
void build_entries(const Conjunction& body, VarId offset, const Substitution& th,
                   const AnnPtr& parent, std::uint32_t clause, bool annotate,
                   std::vector<Entry>& out) {
  for (const BodyGoal& g : body) {
    AnnPtr ann = annotate ? extend(parent, clause, g.index) : nullptr;
    if (g.is_atom()) {
      out.push_back(Entry{instantiate(g.atom, offset, th), nullptr, std::move(ann)});
      continue;
    }
    auto d = std::make_shared<Disj>();
    for (const Conjunction& b : g.branches) {
      std::vector<Entry> branch;
      build_entries(b, offset, th, parent, clause, annotate, branch);
      d->branches.push_back(std::move(branch));
    }
    out.push_back(Entry{Term(), std::move(d), std::move(ann)});
  }
}

bool clash(const Term& a, const Term& b) {
  if (a.is_variable() || b.is_variable()) return false;
  if (a.kind() != b.kind()) return true;
  if (a.is_integer()) return a.value() != b.value();
  return a.functor() != b.functor() || a.arity() != b.arity();
}

void collect_extraneous(const Term& t, std::vector<Term>& out) {
  if (!t.has_extraneous()) return;
  if (t.is_extraneous_rooted()) {
    out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_extraneous(a, out);
}

Term answer_tuple(VarId n) {
  std::vector<Term> vars;
  for (VarId i = 0; i < n; ++i) vars.push_back(Term::variable(i));
  return Term::compound(intern("$answer", n), vars);
}

State initial_state(const Goal& goal) {
  State s;
  VarId limit = goal.num_vars();
  for_each_atom(goal.body, [&](const Atom& a) { limit = std::max(limit, a.var_limit()); });
  build_entries(goal.body, 0, Substitution{}, nullptr, 0, true, s.goals);
  s.answer = answer_tuple(goal.num_vars());
  s.next_var = limit;
  return s;
}

std::uint64_t goal_extraneous_limit(const Goal& goal) {
  std::uint64_t out = 0;
  for_each_atom(goal.body, [&](const Atom& a) { out = std::max(out, extraneous_limit(a)); });
  return out;
}

// Reported form of a state: 'VAR'(Z) terms left by lazy evar calls are
// numbered from `first`, answer before residual.
struct Reported {
  Substitution answer;
  std::vector<Atom> residual;
  Substitution numbering;
};

Reported report_of(const State& s, std::uint64_t first) {
  Reported r;
  std::vector<Term> terms{s.answer};
  for (const Entry& e : s.goals)
    if (e.is_atom()) terms.push_back(e.atom);
  r.numbering = number_extraneous(terms, first);
  Term answer = r.numbering.empty() ? s.answer : apply(r.numbering, s.answer);
  for (VarId i = 0; i < answer.arity(); ++i) {
    const Term& t = answer.arg(i);
    if (t.is_variable() && t.var_id() == i) continue;
    r.answer.bind(i, t);
  }
  for (std::size_t i = 1; i < terms.size(); ++i)
    r.residual.push_back(r.numbering.empty() ? terms[i] : apply(r.numbering, terms[i]));
  return r;
}

class Resolver {
 public:
  Resolver(const Program& p, const SolveOptions& o) : program_(p), options_(o) {}

  bool entry_callable(const Entry& e) const {
    if (!e.is_atom() || !options_.respect_delays) return true;
    return callable(e.atom, program_);
  }

  std::uint32_t cost(const Entry& e) const {
    if (!e.is_atom()) return 0;
    return program_.builtin(e.atom.functor()) == Builtin::kNone
               ? options_.clause_cost
               : options_.builtin_cost;
  }

  // Children of selecting goals[pos].  Returns false with `error` set on a
  // builtin type error.
  bool expand(const State& s, std::size_t pos, std::vector<Child>& out,
              std::string& error) const {
    const Entry& sel = s.goals[pos];
    if (!sel.is_atom()) {
      for (std::uint32_t b = 0; b < sel.disj->branches.size(); ++b) {
        State n;
        n.goals.reserve(s.goals.size() + sel.disj->branches[b].size());
        n.goals.insert(n.goals.end(), s.goals.begin(), s.goals.begin() + pos);
        n.goals.insert(n.goals.end(), sel.disj->branches[b].begin(),
                       sel.disj->branches[b].end());
        n.goals.insert(n.goals.end(), s.goals.begin() + pos + 1, s.goals.end());
        n.answer = s.answer;
        n.trail = s.trail;
        n.binds = s.binds;
        n.next_var = s.next_var;
        n.depth = s.depth;
        n.used_delay = s.used_delay;
        out.push_back(Child{{Choice::Kind::kBranch, b}, std::move(n)});
      }
      return true;
    }
    const Atom& atom = sel.atom;
    Builtin b = program_.builtin(atom.functor());
    if (b != Builtin::kNone) return expand_builtin(s, pos, b, out, error);

    for (std::uint32_t id : program_.clauses_for(atom.functor())) {
      const Clause& c = program_.clause(id);
      if (options_.filter == ClauseFilter::kDelayOnly && c.tag != ClauseTag::kDelay) continue;
      bool skip = false;
      for (std::size_t i = 0; i < atom.arity() && !skip; ++i)
        skip = clash(atom.arg(i), c.head.arg(i));
      if (skip) continue;
      Term head = shift_variables(c.head, s.next_var);
      auto mgu = unify(atom, head);
      if (!mgu) continue;
      if (options_.check_invariants && c.tag != ClauseTag::kDelay)
        check_extraneous_origin(atom, *mgu, c);
      State n;
      n.goals.reserve(s.goals.size() + c.body.size());
      for (std::size_t i = 0; i < pos; ++i) n.goals.push_back(apply_entry(s.goals[i], *mgu));
      build_entries(c.body, s.next_var, *mgu, sel.ann, c.id, options_.record_derivations,
                    n.goals);
      for (std::size_t i = pos + 1; i < s.goals.size(); ++i)
        n.goals.push_back(apply_entry(s.goals[i], *mgu));
      n.answer = apply(*mgu, s.answer);
      if (options_.track_selected) {
        n.trail = std::make_shared<const TrailNode>(TrailNode{atom, s.trail});
        n.binds = push_bindings(s.binds, *mgu);
      }
      n.next_var = s.next_var + c.num_vars();
      n.depth = s.depth + options_.clause_cost;
      n.used_delay = s.used_delay || c.tag == ClauseTag::kDelay;
      out.push_back(Child{{Choice::Kind::kClause, c.id}, std::move(n)});
    }
    return true;
  }

 private:
  void check_extraneous_origin(const Atom& goal, const Substitution& mgu, const Clause& c) const {
    g_checks.fetch_add(1, std::memory_order_relaxed);
    std::vector<Term> present;
    collect_extraneous(goal, present);
    for (const auto& [v, t] : mgu) {
      (void)v;
      std::vector<Term> found;
      collect_extraneous(t, found);
      for (const Term& e : found)
        if (std::find(present.begin(), present.end(), e) == present.end())
          throw InvariantViolation("extraneous term " + print_term(e) +
                                   " introduced by clause " + std::to_string(c.id));
    }
  }

  void push_builtin_child(const State& s, std::size_t pos, std::uint32_t alt,
                          const Substitution& th, VarId next_var,
                          std::vector<Child>& out) const {
    State n;
    n.goals.reserve(s.goals.size() - 1);
    for (std::size_t i = 0; i < s.goals.size(); ++i)
      if (i != pos) n.goals.push_back(apply_entry(s.goals[i], th));
    n.answer = apply(th, s.answer);
    if (options_.track_selected) {
      n.trail = std::make_shared<const TrailNode>(TrailNode{s.goals[pos].atom, s.trail});
      n.binds = push_bindings(s.binds, th);
    }
    n.next_var = next_var;
    n.depth = s.depth + options_.builtin_cost;
    n.used_delay = s.used_delay;
    out.push_back(Child{{Choice::Kind::kBuiltin, alt}, std::move(n)});
  }

  // Integer candidates for an argument: its value, or the range when unbound.
  bool domain(const Term& t, std::vector<long long>& vals) const {
    vals.clear();
    if (t.is_variable()) {
      for (long long v = options_.ints.lo; v <= options_.ints.hi; ++v) vals.push_back(v);
      return true;
    }
    if (!t.is_integer()) return false;
    vals.push_back(static_cast<long long>(t.value()));
    return true;
  }

  bool expand_builtin(const State& s, std::size_t pos, Builtin b, std::vector<Child>& out,
                      std::string& error) const {
    const Atom& atom = s.goals[pos].atom;
    VarId next = s.next_var;
    switch (b) {
      case Builtin::kTrue:
        push_builtin_child(s, pos, 0, Substitution{}, next, out);
        return true;
      case Builtin::kFail:
        return true;
      case Builtin::kEvar:
      case Builtin::kEnonground: {
        auto alts = b == Builtin::kEvar ? evar_successes_lazy(atom.arg(0), next)
                                        : enonground_successes_lazy(atom.arg(0), next);
        for (std::uint32_t i = 0; i < alts.size(); ++i)
          push_builtin_child(s, pos, i, alts[i], next, out);
        return true;
      }
      case Builtin::kPlus:
      case Builtin::kLeq:
        return expand_arith(s, pos, b, out, error);
      case Builtin::kNone:
        break;
    }
    return true;
  }

  bool expand_arith(const State& s, std::size_t pos, Builtin b, std::vector<Child>& out,
                    std::string& error) const {
    const Atom& atom = s.goals[pos].atom;
    for (const Term& a : atom.args()) {
      if (a.is_variable() || a.is_integer()) continue;
      if (!options_.respect_delays) return true;  // no integer fact matches
      error = symbol(atom.functor()).name + "/" + std::to_string(atom.arity()) +
              ": type error, expected an integer in " + print_term(atom);
      return false;
    }
    std::uint32_t alt = 0;
    auto try_tuple = [&](std::initializer_list<long long> vals) {
      std::vector<Term> ints;
      for (long long v : vals) ints.push_back(Term::integer(v));
      SymbolId tuple = intern("$args", static_cast<std::uint32_t>(ints.size()));
      auto mgu = unify(Term::compound(tuple, atom.args()), Term::compound(tuple, ints));
      if (mgu) push_builtin_child(s, pos, alt++, *mgu, s.next_var, out);
    };
    auto in_range = [&](const BigInt& v) {
      return v >= options_.ints.lo && v <= options_.ints.hi;
    };
    if (b == Builtin::kPlus) {
      const Term &x = atom.arg(0), &y = atom.arg(1), &z = atom.arg(2);
      int vars = x.is_variable() + y.is_variable() + z.is_variable();
      if (vars <= 1) {
        BigInt r;
        if (!x.is_variable() && !y.is_variable()) {
          r = x.value() + y.value();
          if (z.is_variable() || z.value() == r) {
            Substitution th;
            if (z.is_variable()) th.bind(z.var_id(), Term::integer(r));
            push_builtin_child(s, pos, 0, th, s.next_var, out);
          }
        } else if (!x.is_variable()) {
          Substitution th;
          th.bind(y.var_id(), Term::integer(BigInt(z.value() - x.value())));
          push_builtin_child(s, pos, 0, th, s.next_var, out);
        } else {
          Substitution th;
          th.bind(x.var_id(), Term::integer(BigInt(z.value() - y.value())));
          push_builtin_child(s, pos, 0, th, s.next_var, out);
        }
        return true;
      }
      std::vector<long long> dx, dy;
      domain(x, dx);
      domain(y, dy);
      for (long long a : dx)
        for (long long c : dy) {
          BigInt sum = BigInt(a) + c;
          if (z.is_variable() ? !in_range(sum) : z.value() != sum) continue;
          try_tuple({a, c, static_cast<long long>(sum)});
        }
      return true;
    }
    const Term &x = atom.arg(0), &y = atom.arg(1);
    if (!x.is_variable() && !y.is_variable()) {
      if (x.value() <= y.value()) push_builtin_child(s, pos, 0, Substitution{}, s.next_var, out);
      return true;
    }
    std::vector<long long> dx, dy;
    domain(x, dx);
    domain(y, dy);
    for (long long a : dx)
      for (long long c : dy)
        if (a <= c) try_tuple({a, c});
    return true;
  }

  const Program& program_;
  const SolveOptions& options_;
};

std::size_t pick(const ComputationRule& rule, const std::vector<std::size_t>& positions,
                 std::optional<std::mt19937_64>& rng) {
  switch (rule.kind) {
    case RuleKind::kLeftmost:
      return positions.front();
    case RuleKind::kRightmost:
      return positions.back();
    case RuleKind::kRandom:
      if (!rng) rng.emplace(rule.seed);
      return positions[(*rng)() % positions.size()];
  }
  return positions.front();
}

// A variable is bound at most once along a derivation, since its binding is
// applied to the whole state, so the chain is a triangular substitution.
Term resolve(const Term& t, const std::unordered_map<VarId, Term>& env) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    auto it = env.find(t.var_id());
    return it == env.end() ? t : resolve(it->second, env);
  }
  boost::container::small_vector<Term, 4> args;
  for (const Term& a : t.args()) args.push_back(resolve(a, env));
  return Term::compound(t.functor(), std::span<const Term>(args.data(), args.size()));
}

// Selected atoms under the final bindings, numbered consistently with the
// reported answer; 'VAR'(Z) terms seen only here continue the numbering.
std::vector<Atom> final_selected(const std::shared_ptr<const TrailNode>& trail,
                                 const std::shared_ptr<const BindNode>& binds,
                                 const Substitution& numbering, std::uint64_t next) {
  std::unordered_map<VarId, Term> env;
  for (const BindNode* b = binds.get(); b; b = b->next.get()) env.emplace(b->var, b->value);
  std::vector<Atom> out;
  for (const TrailNode* t = trail.get(); t; t = t->next.get())
    out.push_back(apply(numbering, resolve(t->atom, env)));
  std::reverse(out.begin(), out.end());
  Substitution rest = number_extraneous(out, next);
  if (!rest.empty())
    for (Atom& a : out) a = apply(rest, a);
  return out;
}

struct StepRecord {
  AnnPtr ann;
  Atom selected;
  Choice choice;
};

Derivation make_derivation(const std::vector<StepRecord>& path) {
  Derivation d;
  d.steps.reserve(path.size());
  for (const StepRecord& r : path)
    d.steps.push_back(DerivationStep{to_annotation(r.ann), r.selected, r.choice});
  return d;
}

class Search {
 public:
  Search(const Program& p, const SolveOptions& o, const OutcomeSink& sink)
      : options_(o), resolver_(p, o), sink_(sink) {}

  SolveStats run(const Goal& goal) {
    first_extraneous_ = goal_extraneous_limit(goal);
    visit(initial_state(goal));
    if (!stats_.stopped && !any_ && !stats_.truncated) {
      Outcome o;
      o.kind = OutcomeKind::kFiniteFailure;
      sink_(o);
    }
    return stats_;
  }

 private:
  bool emit(Outcome o, const State& s) {
    Reported r = report_of(s, first_extraneous_);
    o.answer = std::move(r.answer);
    if (o.kind != OutcomeKind::kSuccess) o.residual = std::move(r.residual);
    o.length = s.depth;
    o.used_delay_clause = s.used_delay;
    if (options_.track_selected) {
      std::uint64_t next = first_extraneous_ + r.numbering.size();
      o.selected = [trail = s.trail, binds = s.binds, numbering = std::move(r.numbering), next] {
        return final_selected(trail, binds, numbering, next);
      };
    }
    if (options_.record_derivations) o.derivation = make_derivation(path_);
    any_ = true;
    ++stats_.emitted;
    bool counts = o.kind == OutcomeKind::kSuccess || o.kind == OutcomeKind::kFloundered;
    if (!sink_(o)) {
      stats_.stopped = true;
      return false;
    }
    if (counts && options_.answer_limit && ++answers_ >= options_.answer_limit) {
      stats_.stopped = true;
      return false;
    }
    return true;
  }

  bool visit(const State& s) {
    ++stats_.nodes;
    if (options_.admissible)
      for (const Entry& e : s.goals)
        if (e.is_atom() && !options_.admissible(e.atom)) return true;
    if (s.goals.empty()) {
      Outcome o;
      o.kind = OutcomeKind::kSuccess;
      return emit(std::move(o), s);
    }
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < s.goals.size(); ++i)
      if (resolver_.entry_callable(s.goals[i])) positions.push_back(i);
    if (positions.empty()) {
      Outcome o;
      o.kind = OutcomeKind::kFloundered;
      return emit(std::move(o), s);
    }
    std::size_t pos = pick(options_.rule, positions, rng_);
    const Entry& sel = s.goals[pos];
    if (s.depth + resolver_.cost(sel) > options_.depth_bound) {
      stats_.truncated = true;
      if (!options_.report_depth_exceeded) return true;
      Outcome o;
      o.kind = OutcomeKind::kDepthExceeded;
      return emit(std::move(o), s);
    }
    std::vector<Child> children;
    std::string error;
    if (!resolver_.expand(s, pos, children, error)) {
      Outcome o;
      o.kind = OutcomeKind::kError;
      o.message = error;
      return emit(std::move(o), s);
    }
    for (Child& c : children) {
      if (options_.record_derivations) path_.push_back(StepRecord{sel.ann, sel.atom, c.choice});
      bool go_on = visit(c.state);
      if (options_.record_derivations) path_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const SolveOptions& options_;
  Resolver resolver_;
  const OutcomeSink& sink_;
  std::optional<std::mt19937_64> rng_;  // seeded on first random pick
  std::vector<StepRecord> path_;
  SolveStats stats_;
  std::uint64_t answers_ = 0;
  std::uint64_t first_extraneous_ = 0;
  bool any_ = false;
};

}  // namespace

bool default_invariant_checks() { return checks_flag().load(); }
void set_default_invariant_checks(bool on) { checks_flag().store(on); }
std::uint64_t invariant_checks_performed() { return g_checks.load(); }

std::string ComputationRule::name() const {
  switch (kind) {
    case RuleKind::kLeftmost: return "left";
    case RuleKind::kRightmost: return "right";
    case RuleKind::kRandom: return "random(" + std::to_string(seed) + ")";
  }
  return "?";
}

const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kSuccess: return "success";
    case OutcomeKind::kFloundered: return "floundered";
    case OutcomeKind::kFiniteFailure: return "failure";
    case OutcomeKind::kDepthExceeded: return "depth-exceeded";
    case OutcomeKind::kError: return "error";
  }
  return "?";
}

bool callable(const Atom& a, const Program& p) {
  const DelayCondition* d = p.effective_delay(a.functor());
  return !d || !d->holds(a.args());
}

Engine::Engine(const Program& program, SolveOptions options)
    : program_(program), options_(std::move(options)) {}

SolveStats Engine::solve(const Goal& goal, const OutcomeSink& sink) {
  Search search(program_, options_, sink);
  return search.run(goal);
}

std::vector<Outcome> Engine::solve_all(const Goal& goal) {
  std::vector<Outcome> out;
  solve(goal, [&](const Outcome& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

Outcome Engine::replay(const Goal& goal, const Derivation& d,
                       const ComputationRule& rule) const {
  std::map<Annotation, Choice> choices;
  for (const DerivationStep& step : d.steps) choices[step.annotation] = step.choice;
  SolveOptions opts = options_;
  opts.rule = rule;
  opts.record_derivations = true;
  Resolver resolver(program_, opts);
  std::optional<std::mt19937_64> rng;
  State s = initial_state(goal);
  std::vector<StepRecord> path;
  for (;;) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < s.goals.size(); ++i)
      if (resolver.entry_callable(s.goals[i])) positions.push_back(i);
    if (positions.empty()) {
      Outcome o;
      o.kind = s.goals.empty() ? OutcomeKind::kSuccess : OutcomeKind::kFloundered;
      Reported r = report_of(s, goal_extraneous_limit(goal));
      o.answer = std::move(r.answer);
      o.residual = std::move(r.residual);
      o.length = s.depth;
      o.used_delay_clause = s.used_delay;
      o.derivation = make_derivation(path);
      return o;
    }
    if (path.size() >= d.steps.size())
      throw InvariantViolation("replay needs more steps than the recorded derivation");
    std::size_t pos = pick(rule, positions, rng);
    const Entry& sel = s.goals[pos];
    auto it = choices.find(to_annotation(sel.ann));
    if (it == choices.end())
      throw InvariantViolation("replay selected an atom the derivation never resolved");
    std::vector<Child> children;
    std::string error;
    if (!resolver.expand(s, pos, children, error)) throw InvariantViolation(error);
    auto child = std::find_if(children.begin(), children.end(),
                              [&](const Child& c) { return c.choice == it->second; });
    if (child == children.end())
      throw InvariantViolation("recorded choice is not applicable during replay");
    path.push_back(StepRecord{sel.ann, sel.atom, child->choice});
    State next = std::move(child->state);
    s = std::move(next);
  }
}

std::vector<Outcome> solve(const Goal& goal, const Program& p, const ComputationRule& rule,
                           std::uint32_t depth_bound, std::uint64_t answer_limit) {
  SolveOptions o;
  o.rule = rule;
  o.depth_bound = depth_bound;
  o.answer_limit = answer_limit;
  return Engine(p, o).solve_all(goal);
}

std::vector<Outcome> solve_sld(const Goal& goal, const Program& p, std::uint32_t depth_bound,
                               std::uint64_t answer_limit) {
  SolveOptions o;
  o.respect_delays = false;
  o.depth_bound = depth_bound;
  o.answer_limit = answer_limit;
  return Engine(p, o).solve_all(goal);
}

Atom answer_atom(const Goal& goal, const Outcome& o) {
  return apply(o.answer, goal.body.front().atom);
}

}  // namespace flounder
