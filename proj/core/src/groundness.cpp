#include "flounder/groundness.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "flounder/printer.hpp"

namespace flounder {

BoolFn::BoolFn(std::uint32_t arity, bool value) : arity_(arity) {
  if (arity > kMaxArity) throw std::length_error("boolean function arity above 10");
  std::uint64_t n = rows();
  bits_.assign((n + 63) / 64, value ? ~std::uint64_t{0} : 0);
  if (value && n % 64) bits_.back() = (std::uint64_t{1} << (n % 64)) - 1;
}

BoolFn BoolFn::variable(std::uint32_t arity, std::uint32_t i) {
  BoolFn f(arity);
  for (std::uint64_t v = 0; v < f.rows(); ++v) f.set(v, (v >> i) & 1);
  return f;
}

bool BoolFn::eval(std::uint64_t v) const { return (bits_[v / 64] >> (v % 64)) & 1; }

void BoolFn::set(std::uint64_t v, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (v % 64);
  if (value) {
    bits_[v / 64] |= mask;
  } else {
    bits_[v / 64] &= ~mask;
  }
}

BoolFn BoolFn::operator&(const BoolFn& o) const {
  BoolFn r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

BoolFn BoolFn::operator|(const BoolFn& o) const {
  BoolFn r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

BoolFn BoolFn::operator~() const {
  BoolFn r(arity_, true);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~bits_[i];
  return r;
}

BoolFn BoolFn::iff(const BoolFn& o) const { return (*this & o) | (~*this & ~o); }
BoolFn BoolFn::implies(const BoolFn& o) const { return ~*this | o; }

bool BoolFn::is_false() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BoolFn::is_true() const { return (~*this).is_false(); }

bool BoolFn::monotone() const {
  for (std::uint64_t v = 0; v < rows(); ++v) {
    if (!eval(v)) continue;
    for (std::uint32_t i = 0; i < arity_; ++i)
      if (!((v >> i) & 1) && !eval(v | (std::uint64_t{1} << i))) return false;
  }
  return true;
}

std::optional<std::uint64_t> BoolFn::counterexample(const BoolFn& other) const {
  for (std::uint64_t v = 0; v < rows(); ++v)
    if (eval(v) && !other.eval(v)) return v;
  return std::nullopt;
}

namespace {

std::string var_name(std::uint32_t i, std::span<const std::string> names) {
  if (i < names.size()) return names[i];
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

struct Clause01 {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::string conj(std::uint32_t mask, std::span<const std::string> names, bool parens) {
  std::vector<std::string> parts;
  for (std::uint32_t i = 0; i < 32; ++i)
    if ((mask >> i) & 1) parts.push_back(var_name(i, names));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " & " : "") + parts[i];
  return parts.size() > 1 && parens ? "(" + s + ")" : s;
}

std::string disj(const Clause01& c, std::span<const std::string> names) {
  std::string s;
  bool first = true;
  for (std::uint32_t i = 0; i < 32; ++i) {
    if ((c.pos >> i) & 1) {
      s += (first ? "" : " | ") + var_name(i, names);
      first = false;
    } else if ((c.neg >> i) & 1) {
      s += (first ? "~" : " | ~") + var_name(i, names);
      first = false;
    }
  }
  return s;
}

}  // namespace

std::string BoolFn::to_string(std::span<const std::string> names) const {
  if (is_true()) return "true";
  if (is_false()) return "false";
  std::vector<std::uint64_t> sat;
  for (std::uint64_t v = 0; v < rows(); ++v)
    if (eval(v)) sat.push_back(v);
  // Prime implicates by increasing size.
  std::vector<Clause01> all;
  std::vector<std::uint32_t> code(arity_, 0);
  for (;;) {
    Clause01 c;
    for (std::uint32_t i = 0; i < arity_; ++i) {
      if (code[i] == 1) c.pos |= 1u << i;
      if (code[i] == 2) c.neg |= 1u << i;
    }
    if (c.pos | c.neg) all.push_back(c);
    std::uint32_t k = 0;
    while (k < arity_ && ++code[k] == 3) code[k++] = 0;
    if (k == arity_) break;
  }
  std::stable_sort(all.begin(), all.end(), [](const Clause01& a, const Clause01& b) {
    return __builtin_popcount(a.pos | a.neg) < __builtin_popcount(b.pos | b.neg);
  });
  std::vector<Clause01> primes;
  for (const Clause01& c : all) {
    bool subsumed = std::any_of(primes.begin(), primes.end(), [&](const Clause01& p) {
      return (p.pos & ~c.pos) == 0 && (p.neg & ~c.neg) == 0;
    });
    if (subsumed) continue;
    bool implied = std::all_of(sat.begin(), sat.end(), [&](std::uint64_t v) {
      return (v & c.pos) != 0 || (~v & c.neg) != 0;
    });
    if (implied) primes.push_back(c);
  }
  std::sort(primes.begin(), primes.end(), [](const Clause01& a, const Clause01& b) {
    std::uint32_t ma = a.pos | a.neg, mb = b.pos | b.neg;
    int la = __builtin_ctz(ma), lb = __builtin_ctz(mb);
    if (__builtin_popcount(ma) != __builtin_popcount(mb))
      return __builtin_popcount(ma) > __builtin_popcount(mb);
    if (la != lb) return la < lb;
    return std::make_pair(a.pos, a.neg) < std::make_pair(b.pos, b.neg);
  });

  std::vector<bool> used(primes.size(), false);
  auto find = [&](std::uint32_t pos, std::uint32_t neg) -> int {
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (!used[i] && primes[i].pos == pos && primes[i].neg == neg) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::string> parts;
  // Merge N -> x with x -> y for every y in N into N <-> x.
  for (std::uint32_t x = 0; x < arity_; ++x) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const Clause01& c = primes[i];
      if (used[i] || c.pos != (1u << x) || c.neg == 0) continue;
      std::vector<int> back;
      for (std::uint32_t y = 0; y < arity_; ++y) {
        if (!((c.neg >> y) & 1)) continue;
        int j = find(1u << y, 1u << x);
        if (j < 0) {
          back.clear();
          break;
        }
        back.push_back(j);
      }
      if (back.empty()) continue;
      used[i] = true;
      for (int j : back) used[j] = true;
      if (back.size() == 1 && __builtin_ctz(c.neg) > static_cast<int>(x))
        parts.push_back(var_name(x, names) + " <-> " + conj(c.neg, names, true));
      else
        parts.push_back(conj(c.neg, names, true) + " <-> " + var_name(x, names));
    }
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (used[i]) continue;
    const Clause01& c = primes[i];
    int npos = __builtin_popcount(c.pos);
    if (npos == 1 && c.neg) {
      parts.push_back(conj(c.neg, names, true) + " -> " + var_name(__builtin_ctz(c.pos), names));
    } else if (npos == 0 && __builtin_popcount(c.neg) > 1) {
      parts.push_back("~(" + conj(c.neg, names, false) + ")");
    } else {
      parts.push_back(disj(c, names));
    }
  }
  if (parts.size() == 1) return parts.front();
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    bool simple = p.find(' ') == std::string::npos;
    out += (i ? " & " : "") + (simple ? p : "(" + p + ")");
  }
  return out;
}

BoolFn abstract_unify(std::uint32_t arity, std::uint32_t x, std::span<const std::uint32_t> ys) {
  BoolFn rhs(arity, true);
  for (std::uint32_t y : ys) rhs = rhs & BoolFn::variable(arity, y);
  return BoolFn::variable(arity, x).iff(rhs);
}

BoolFn abstract_builtin(Builtin b, std::uint32_t arity, std::span<const std::uint32_t> args) {
  BoolFn all(arity, true);
  switch (b) {
    case Builtin::kTrue:
      return all;
    case Builtin::kFail:
      return BoolFn(arity, false);
    case Builtin::kEvar:
    case Builtin::kEnonground:
      return ~BoolFn::variable(arity, args[0]);
    case Builtin::kPlus:
    case Builtin::kLeq:
      for (std::uint32_t a : args) all = all & BoolFn::variable(arity, a);
      return all;
    case Builtin::kNone:
      break;
  }
  throw std::invalid_argument("not a builtin");
}

const BoolFn& GroundnessResult::of(SymbolId pred) const {
  auto it = functions.find(pred);
  if (it == functions.end()) throw std::out_of_range("no groundness function for " + symbol(pred).name);
  return it->second;
}

namespace {

std::uint64_t var_mask(const Term& t) {
  std::uint64_t m = 0;
  for (VarId v : variables_of(t)) m |= std::uint64_t{1} << v;
  return m;
}

struct AbstractGoal {
  SymbolId pred = 0;
  Builtin builtin = Builtin::kNone;
  BoolFn builtin_fn;
  std::vector<std::uint64_t> masks;  // variables of each argument
};

struct AbstractClause {
  SymbolId head = 0;
  std::vector<std::uint64_t> head_masks;
  std::vector<std::vector<AbstractGoal>> alternatives;
  std::uint32_t vars = 0;
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

std::uint32_t position_of(std::uint64_t valuation, const std::vector<std::uint64_t>& masks) {
  std::uint32_t row = 0;
  for (std::size_t i = 0; i < masks.size(); ++i)
    if ((masks[i] & ~valuation) == 0) row |= 1u << i;
  return row;
}

}  // namespace

GroundnessResult abstract_lfp(const Program& p, std::uint32_t var_cap) {
  if (p.has_delays()) throw std::invalid_argument("groundness analysis expects a delay-free program");
  GroundnessResult r;
  std::vector<AbstractClause> clauses;
  auto note = [&](SymbolId pred) {
    if (r.functions.count(pred)) return;
    r.order.push_back(pred);
    r.functions.emplace(pred, BoolFn(symbol(pred).arity, false));
  };
  for (const Clause& c : p.clauses()) {
    if (c.num_vars() > var_cap)
      throw std::length_error("clause " + std::to_string(c.id) + " has " +
                              std::to_string(c.num_vars()) + " variables, above the cap of " +
                              std::to_string(var_cap));
    AbstractClause ac;
    ac.head = c.head.functor();
    ac.vars = std::max(c.num_vars(), c.head.var_limit());
    note(ac.head);
    for (const Term& a : c.head.args()) ac.head_masks.push_back(var_mask(a));
    std::vector<std::vector<Atom>> alts;
    dnf(c.body, alts);
    for (const auto& alt : alts) {
      std::vector<AbstractGoal> goals;
      for (const Atom& a : alt) {
        AbstractGoal g;
        g.pred = a.functor();
        g.builtin = p.builtin(a.functor());
        for (const Term& t : a.args()) {
          g.masks.push_back(var_mask(t));
          ac.vars = std::max(ac.vars, t.var_limit());
        }
        if (g.builtin != Builtin::kNone) {
          std::vector<std::uint32_t> args;
          for (std::uint32_t i = 0; i < a.arity(); ++i) args.push_back(i);
          g.builtin_fn = abstract_builtin(g.builtin, a.arity(), args);
        }
        goals.push_back(std::move(g));
      }
      ac.alternatives.push_back(std::move(goals));
    }
    clauses.push_back(std::move(ac));
  }
  for (const AbstractClause& c : clauses)
    for (const auto& alt : c.alternatives)
      for (const AbstractGoal& g : alt)
        if (g.builtin == Builtin::kNone) note(g.pred);

  for (bool changed = true; changed;) {
    changed = false;
    ++r.iterations;
    std::map<SymbolId, BoolFn> next = r.functions;
    for (const AbstractClause& c : clauses) {
      BoolFn& out = next.at(c.head);
      std::uint64_t n = std::uint64_t{1} << c.vars;
      for (std::uint64_t v = 0; v < n; ++v) {
        bool body = false;
        for (const auto& alt : c.alternatives) {
          bool all = true;
          for (const AbstractGoal& g : alt) {
            std::uint32_t row = position_of(v, g.masks);
            bool ok = g.builtin == Builtin::kNone ? r.functions.at(g.pred).eval(row)
                                                  : g.builtin_fn.eval(row);
            if (!ok) {
              all = false;
              break;
            }
          }
          if (all) {
            body = true;
            break;
          }
        }
        if (body) out.set(position_of(v, c.head_masks), true);
      }
    }
    if (next != r.functions) {
      changed = true;
      r.functions = std::move(next);
    }
  }
  return r;
}

DependencyCheck check_dependency(const GroundnessResult& r, SymbolId pred, const BoolFn& dependency) {
  DependencyCheck out;
  out.counterexample = r.of(pred).counterexample(dependency);
  out.holds = !out.counterexample;
  return out;
}

namespace {

class BoolParser {
 public:
  BoolParser(std::string_view s, std::uint32_t arity) : s_(s), arity_(arity) {}

  BoolFn parse() {
    BoolFn f = iff();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("boolean formula: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  BoolFn iff() {
    BoolFn l = imp();
    while (eat("<->")) l = l.iff(imp());
    return l;
  }
  BoolFn imp() {
    BoolFn l = disj();
    if (eat("->")) return l.implies(imp());
    return l;
  }
  BoolFn disj() {
    BoolFn l = conj();
    while (eat("|")) l = l | conj();
    return l;
  }
  BoolFn conj() {
    BoolFn l = unary();
    while (eat("&")) l = l & unary();
    return l;
  }
  BoolFn unary() {
    if (eat("~")) return ~unary();
    if (eat("(")) {
      BoolFn f = iff();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("true")) return BoolFn(arity_, true);
    if (eat("false")) return BoolFn(arity_, false);
    skip();
    if (pos_ < s_.size() && std::isupper(static_cast<unsigned char>(s_[pos_]))) {
      std::uint32_t i = static_cast<std::uint32_t>(s_[pos_++] - 'A');
      if (i >= arity_) fail("variable out of range");
      return BoolFn::variable(arity_, i);
    }
    fail("expected a variable");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::uint32_t arity_;
};

}  // namespace

BoolFn parse_bool(std::string_view text, std::uint32_t arity) {
  return BoolParser(text, arity).parse();
}

std::string format_dependency(SymbolId pred, const BoolFn& f) {
  const Symbol& s = symbol(pred);
  std::ostringstream os;
  os << quote_atom(s.name);
  if (s.arity) {
    os << '(';
    for (std::uint32_t i = 0; i < s.arity; ++i) os << (i ? ", " : "") << var_name(i, {});
    os << ')';
  }
  os << ": " << f.to_string();
  return os.str();
}

std::string format_valuation(std::uint64_t valuation, std::uint32_t arity) {
  std::string out;
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (i) out += ' ';
    out += var_name(i, {}) + "=" + (((valuation >> i) & 1) ? "1" : "0");
  }
  return out;
}

}  // namespace flounder
