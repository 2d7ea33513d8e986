#include "flounder/term.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace flounder {

namespace {

class SymbolTable {
 public:
  SymbolTable() {
    add("VAR", 1, SymbolKind::kExtraneous);
    add("[]", 0, SymbolKind::kProgram);
    add(".", 2, SymbolKind::kProgram);
    add("true", 0, SymbolKind::kProgram);
    add("fail", 0, SymbolKind::kProgram);
  }

  SymbolId intern(std::string_view name, std::uint32_t arity) {
    std::string key = make_key(name, arity);
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(key);
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    return add_locked(std::string(name), arity, SymbolKind::kProgram,
                      std::move(key));
  }

  const Symbol& get(SymbolId id) const {
    std::shared_lock lock(mu_);
    if (id >= symbols_.size()) throw std::out_of_range("unknown symbol id");
    return symbols_[id];
  }

 private:
  static std::string make_key(std::string_view name, std::uint32_t arity) {
    std::string key(name);
    key.push_back('\0');
    key += std::to_string(arity);
    return key;
  }

  void add(std::string name, std::uint32_t arity, SymbolKind kind) {
    std::string key = make_key(name, arity);
    add_locked(std::move(name), arity, kind, std::move(key));
  }

  SymbolId add_locked(std::string name, std::uint32_t arity, SymbolKind kind,
                      std::string key) {
    auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{std::move(name), arity, kind});
    index_.emplace(std::move(key), id);
    return id;
  }

  mutable std::shared_mutex mu_;
  std::deque<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

SymbolId intern(std::string_view name, std::uint32_t arity) {
  return table().intern(name, arity);
}

const Symbol& symbol(SymbolId id) { return table().get(id); }

Term Term::variable(VarId id) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::kVariable;
  node->ground = false;
  node->id = id;
  node->var_limit = id + 1;
  node->hash = mix(0x51ed27, id);
  return Term(std::move(node));
}

Term Term::constant(SymbolId sym) { return compound(sym, std::span<const Term>{}); }

Term Term::compound(SymbolId functor, std::span<const Term> args) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::kCompound;
  node->id = functor;
  node->extraneous = is_extraneous(functor);
  std::size_t h = mix(0x7a3c11, functor);
  node->args.reserve(args.size());
  for (const Term& a : args) {
    node->ground = node->ground && a.is_ground();
    node->extraneous = node->extraneous || a.has_extraneous();
    node->var_limit = std::max(node->var_limit, a.var_limit());
    h = mix(h, a.hash());
    node->args.push_back(a);
  }
  node->hash = h;
  return Term(std::move(node));
}

Term Term::compound(SymbolId functor, std::initializer_list<Term> args) {
  return compound(functor, std::span<const Term>(args.begin(), args.size()));
}

Term Term::integer(BigInt value) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::kInteger;
  node->hash = mix(0x1a7e9d, std::hash<std::string>{}(value.str()));
  node->value = std::move(value);
  return Term(std::move(node));
}

Term Term::extraneous(std::uint64_t k) {
  return compound(symbols::kVar,
                  {integer(BigInt(static_cast<unsigned long long>(k)))});
}

Term Term::nil() {
  static const Term n = constant(symbols::kNil);
  return n;
}

Term Term::cons(Term head, Term tail) {
  return compound(symbols::kCons, {std::move(head), std::move(tail)});
}

Term Term::list(std::span<const Term> items, Term tail) {
  Term out = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind) return false;
  switch (x.kind) {
    case Term::Kind::kVariable:
      return x.id == y.id;
    case Term::Kind::kInteger:
      return x.value == y.value;
    case Term::Kind::kCompound:
      if (x.id != y.id || x.args.size() != y.args.size()) return false;
      for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i])) return false;
      return true;
  }
  return false;
}

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  auto rank = [](const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVariable: return 0;
      case Term::Kind::kInteger: return 1;
      case Term::Kind::kCompound: return 2;
    }
    return 3;
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a.is_variable()) {
    if (a.var_id() == b.var_id()) return 0;
    return a.var_id() < b.var_id() ? -1 : 1;
  }
  if (a.is_integer()) {
    if (a.value() == b.value()) return 0;
    return a.value() < b.value() ? -1 : 1;
  }
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  if (a.functor() != b.functor()) {
    int c = symbol(a.functor()).name.compare(symbol(b.functor()).name);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    int c = compare(a.arg(i), b.arg(i));
    if (c != 0) return c;
  }
  return 0;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  if (t.is_compound())
    for (const Term& a : t.args()) n += term_size(a);
  return n;
}

std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  if (t.is_compound())
    for (const Term& a : t.args()) d = std::max(d, term_depth(a));
  return d + 1;
}

void collect_variables(const Term& t, std::vector<VarId>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end())
      out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<VarId> variables_of(const Term& t) {
  std::vector<VarId> out;
  collect_variables(t, out);
  return out;
}

bool occurs_in(VarId v, const Term& t) {
  if (t.is_ground() || v >= t.var_limit()) return false;
  if (t.is_variable()) return t.var_id() == v;
  for (const Term& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

// Substitution

const Term* Substitution::lookup(VarId v) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), v,
      [](const Binding& b, VarId x) { return b.first < x; });
  if (it == bindings_.end() || it->first != v) return nullptr;
  return &it->second;
}

void Substitution::bind(VarId v, Term t) {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), v,
      [](const Binding& b, VarId x) { return b.first < x; });
  if (it != bindings_.end() && it->first == v) {
    it->second = std::move(t);
  } else {
    bindings_.insert(it, Binding{v, std::move(t)});
  }
}

Substitution Substitution::restrict_to(std::span<const VarId> vars) const {
  Substitution out;
  for (const auto& [v, t] : bindings_)
    if (std::find(vars.begin(), vars.end(), v) != vars.end())
      out.bindings_.emplace_back(v, t);
  return out;
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, t] : bindings_) {
    (void)v;
    std::vector<VarId> vs;
    collect_variables(t, vs);
    for (VarId x : vs)
      if (contains(x)) return false;
  }
  return true;
}

Term apply(const Substitution& s, const Term& t) {
  if (s.empty() || t.is_ground()) return t;
  if (t.is_variable()) {
    const Term* b = s.lookup(t.var_id());
    return b ? *b : t;
  }
  if (t.var_limit() <= s.begin()->first) return t;
  auto args = t.args();
  boost::container::small_vector<Term, 4> out;
  bool changed = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    Term a = apply(s, args[i]);
    if (!changed && !a.same_node(args[i])) {
      changed = true;
      out.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (changed) out.push_back(std::move(a));
  }
  if (!changed) return t;
  return Term::compound(t.functor(), std::span<const Term>(out.data(), out.size()));
}

namespace {

// Triangular bindings used while unifying; resolved afterwards.
struct Env {
  boost::container::small_vector<std::pair<VarId, Term>, 8> b;

  const Term* find(VarId v) const {
    for (const auto& p : b)
      if (p.first == v) return &p.second;
    return nullptr;
  }
  Term walk(Term t) const {
    while (t.is_variable()) {
      const Term* n = find(t.var_id());
      if (!n) break;
      t = *n;
    }
    return t;
  }
};

// Bound variables are expanded once per query; shared bindings would
// otherwise be re-walked along every path that reaches them.
bool occurs_env(VarId v, const Term& t, const Env& env,
                boost::container::small_vector<VarId, 8>& seen) {
  if (t.is_ground()) return false;
  if (t.is_variable()) {
    VarId w = t.var_id();
    if (w == v) return true;
    const Term* n = env.find(w);
    if (!n) return false;
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) return false;
    seen.push_back(w);
    return occurs_env(v, *n, env, seen);
  }
  if (env.b.empty() && v >= t.var_limit()) return false;
  for (const Term& a : t.args())
    if (occurs_env(v, a, env, seen)) return true;
  return false;
}

bool occurs_env(VarId v, const Term& t, const Env& env) {
  boost::container::small_vector<VarId, 8> seen;
  return occurs_env(v, t, env, seen);
}

bool unify_env(const Term& x, const Term& y, Env& env) {
  Term a = env.walk(x);
  Term b = env.walk(y);
  if (a.same_node(b)) return true;
  if (a.is_variable()) {
    if (b.is_variable() && b.var_id() == a.var_id()) return true;
    if (occurs_env(a.var_id(), b, env)) return false;
    env.b.emplace_back(a.var_id(), b);
    return true;
  }
  if (b.is_variable()) {
    if (occurs_env(b.var_id(), a, env)) return false;
    env.b.emplace_back(b.var_id(), a);
    return true;
  }
  if (a.kind() != b.kind()) return false;
  if (a.is_integer()) return a.value() == b.value();
  if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
  if (a.is_ground() && b.is_ground()) return a == b;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!unify_env(a.arg(i), b.arg(i), env)) return false;
  return true;
}

Term resolve(const Term& t, const Env& env) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    const Term* n = env.find(t.var_id());
    return n ? resolve(*n, env) : t;
  }
  auto args = t.args();
  boost::container::small_vector<Term, 4> out;
  bool changed = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    Term a = resolve(args[i], env);
    if (!changed && !a.same_node(args[i])) {
      changed = true;
      out.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (changed) out.push_back(std::move(a));
  }
  if (!changed) return t;
  return Term::compound(t.functor(), std::span<const Term>(out.data(), out.size()));
}

Substitution solved_form(const Env& env) {
  Substitution s;
  for (const auto& [v, t] : env.b) {
    Term r = resolve(t, env);
    if (r.is_variable() && r.var_id() == v) continue;
    s.bind(v, std::move(r));
  }
  return s;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Env env;
  if (!unify_env(a, b, env)) return std::nullopt;
  return solved_form(env);
}

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  Env env;
  for (const auto& p : s) env.b.push_back(p);
  if (!unify_env(a, b, env)) return false;
  s = solved_form(env);
  return true;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, t] : first) {
    Term r = apply(second, t);
    if (r.is_variable() && r.var_id() == v) continue;
    out.bind(v, std::move(r));
  }
  for (const auto& [v, t] : second)
    if (!first.contains(v)) out.bind(v, t);
  return out;
}

namespace {

bool match_into(const Term& p, const Term& t, Substitution& s) {
  if (p.is_variable()) {
    if (const Term* b = s.lookup(p.var_id())) return *b == t;
    s.bind(p.var_id(), t);
    return true;
  }
  if (p.kind() != t.kind()) return false;
  if (p.is_integer()) return p.value() == t.value();
  if (p.functor() != t.functor() || p.arity() != t.arity()) return false;
  if (p.is_ground()) return p == t;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!match_into(p.arg(i), t.arg(i), s)) return false;
  return true;
}

Term rename(const Term& t, std::vector<std::pair<VarId, VarId>>& map,
            VarId& next) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    for (const auto& [from, to] : map)
      if (from == t.var_id()) return Term::variable(to);
    map.emplace_back(t.var_id(), next);
    return Term::variable(next++);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename(a, map, next));
  return Term::compound(t.functor(), args);
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& instance) {
  // Shift the pattern so its variables cannot collide with the instance's.
  VarId offset = instance.var_limit();
  Term p = shift_variables(pattern, offset);
  Substitution s;
  if (!match_into(p, instance, s)) return std::nullopt;
  Substitution out;
  for (const auto& [v, t] : s) out.bind(v - offset, t);
  return out;
}

bool is_instance(const Term& a, const Term& b) { return match(b, a).has_value(); }

bool is_variant(const Term& a, const Term& b) {
  return canonical_variant(a) == canonical_variant(b);
}

Term canonical_variant(const Term& t) {
  std::vector<std::pair<VarId, VarId>> map;
  VarId next = 0;
  return rename(t, map, next);
}

Term shift_variables(const Term& t, VarId offset) {
  if (t.is_ground() || offset == 0) return t;
  if (t.is_variable()) return Term::variable(t.var_id() + offset);
  boost::container::small_vector<Term, 4> out;
  for (const Term& a : t.args()) out.push_back(shift_variables(a, offset));
  return Term::compound(t.functor(), std::span<const Term>(out.data(), out.size()));
}

namespace {

Term encode_rec(const Term& t, std::vector<std::pair<VarId, Term>>& map,
                ExtraneousGenerator& gen) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    for (const auto& [v, e] : map)
      if (v == t.var_id()) return e;
    Term e = gen.next();
    map.emplace_back(t.var_id(), e);
    return e;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(encode_rec(a, map, gen));
  return Term::compound(t.functor(), args);
}

Term decode_rec(const Term& t, std::vector<std::pair<Term, VarId>>& map,
                VarId& next) {
  if (!t.has_extraneous()) return t;
  if (t.is_extraneous_rooted()) {
    for (const auto& [e, v] : map)
      if (e == t) return Term::variable(v);
    map.emplace_back(t, next);
    return Term::variable(next++);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(decode_rec(a, map, next));
  return Term::compound(t.functor(), args);
}

}  // namespace

Term encode(const Term& a, ExtraneousGenerator& gen) {
  std::vector<std::pair<VarId, Term>> map;
  return encode_rec(a, map, gen);
}

Term decode(const Term& a) {
  std::vector<std::pair<Term, VarId>> map;
  VarId next = a.var_limit();
  return decode_rec(a, map, next);
}

}  // namespace flounder
