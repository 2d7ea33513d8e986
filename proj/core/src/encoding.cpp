#include "flounder/encoding.hpp"

#include <algorithm>

namespace flounder {

namespace {

template <typename Fresh>
std::vector<Substitution> evar_with(const Term& t, Fresh fresh) {
  std::vector<Substitution> out;
  if (t.is_extraneous_rooted()) {
    out.emplace_back();
  } else if (t.is_variable()) {
    Substitution s;
    s.bind(t.var_id(), fresh());
    out.push_back(std::move(s));
  }
  return out;
}

template <typename Fresh>
std::vector<Substitution> enonground_with(const Term& t, Fresh fresh) {
  std::vector<Substitution> out;
  if (t.has_extraneous()) {
    out.emplace_back();
    return out;
  }
  std::vector<VarId> vars;
  collect_variables(t, vars);
  if (vars.empty()) return out;
  Term e = fresh();
  for (VarId v : vars) {
    Substitution s;
    s.bind(v, e);
    out.push_back(std::move(s));
  }
  return out;
}

void collect_lazy(const Term& t, std::vector<VarId>& out) {
  if (!t.has_extraneous()) return;
  if (t.is_extraneous_rooted()) {
    collect_variables(t, out);
    return;
  }
  for (const Term& a : t.args()) collect_lazy(a, out);
}

}  // namespace

std::vector<Substitution> evar_successes(const Term& t, std::uint64_t& next_extraneous) {
  return evar_with(t, [&] { return Term::extraneous(next_extraneous++); });
}

std::vector<Substitution> enonground_successes(const Term& t,
                                               std::uint64_t& next_extraneous) {
  return enonground_with(t, [&] { return Term::extraneous(next_extraneous++); });
}

std::vector<Substitution> evar_successes_lazy(const Term& t, VarId& next_var) {
  return evar_with(t, [&] {
    return Term::compound(symbols::kVar, {Term::variable(next_var++)});
  });
}

std::vector<Substitution> enonground_successes_lazy(const Term& t, VarId& next_var) {
  return enonground_with(t, [&] {
    return Term::compound(symbols::kVar, {Term::variable(next_var++)});
  });
}

Substitution number_extraneous(std::span<const Term> terms, std::uint64_t first) {
  std::vector<VarId> vars;
  for (const Term& t : terms) collect_lazy(t, vars);
  Substitution out;
  for (VarId v : vars)
    if (!out.lookup(v)) out.bind(v, Term::integer(static_cast<long long>(first++)));
  return out;
}

std::uint64_t extraneous_limit(const Term& t) {
  if (!t.has_extraneous()) return 0;
  if (t.is_extraneous_rooted()) {
    const Term& k = t.arg(0);
    if (k.is_integer() && k.value() >= 0) return static_cast<std::uint64_t>(k.value()) + 1;
    return 0;
  }
  std::uint64_t out = 0;
  for (const Term& a : t.args()) out = std::max(out, extraneous_limit(a));
  return out;
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

SymbolId sf_symbol(SymbolId pred) {
  const Symbol& s = symbol(pred);
  return intern(s.name + "_sf", s.arity);
}

SymbolId f_symbol(SymbolId pred) {
  const Symbol& s = symbol(pred);
  return intern(s.name + "_f", s.arity);
}

bool has_sf_suffix(SymbolId pred) { return ends_with(symbol(pred).name, "_sf"); }
bool has_f_suffix(SymbolId pred) { return ends_with(symbol(pred).name, "_f"); }

SymbolId strip_suffix(SymbolId pred) {
  const Symbol& s = symbol(pred);
  if (ends_with(s.name, "_sf")) return intern(s.name.substr(0, s.name.size() - 3), s.arity);
  if (ends_with(s.name, "_f")) return intern(s.name.substr(0, s.name.size() - 2), s.arity);
  return pred;
}

Atom strip_atom(const Atom& a) {
  SymbolId p = strip_suffix(a.functor());
  if (p == a.functor()) return a;
  return Term::compound(p, a.args());
}

}  // namespace flounder
