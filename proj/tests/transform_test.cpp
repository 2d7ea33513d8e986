#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flounder/encoding.hpp"
#include "flounder/transform.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace flounder;
using flounder::testing::corpus;
using flounder::testing::corpus_path;
using flounder::testing::pretty;
using flounder::testing::show;
using flounder::testing::term;

namespace {

const char* const kPrograms[] = {"fig1.dlp",    "fig2.dlp", "fig3_p1.dlp", "fig3_p2.dlp",
                                 "fig3_p3.dlp", "fig7.dlp", "fig8.dlp",    "nodelays.dlp"};

Conjunction strip_body(const Conjunction& body) {
  Conjunction out;
  for (const BodyGoal& g : body) {
    if (g.is_atom()) {
      out.push_back(BodyGoal::make_atom(strip_atom(g.atom)));
    } else {
      std::vector<Conjunction> branches;
      for (const Conjunction& b : g.branches) branches.push_back(strip_body(b));
      out.push_back(BodyGoal::make_disjunction(std::move(branches)));
    }
  }
  return out;
}

Clause strip_clause(const Clause& c) {
  Clause out = c;
  out.head = strip_atom(c.head);
  out.body = strip_body(c.body);
  return out;
}

bool mentions_evar(const Conjunction& body) {
  bool found = false;
  for_each_atom(body, [&](const Atom& a) {
    Builtin b = builtin_kind(a.functor());
    found = found || b == Builtin::kEvar || b == Builtin::kEnonground;
  });
  return found;
}

}  // namespace

TEST(SfTransform, GoldenSfListing) {
  Program golden = load_program(corpus_path("golden/sf_listing.dlp"));
  std::string diff;
  EXPECT_TRUE(flounder::testing::matches_golden(sf_transform(corpus("fig1.dlp")), golden, &diff)) << diff;
}

TEST(FTransform, GoldenFListing) {
  Program golden = load_program(corpus_path("golden/f_listing.dlp"));
  std::string diff;
  EXPECT_TRUE(flounder::testing::matches_golden(f_transform(corpus("fig1.dlp")), golden, &diff)) << diff;
}

TEST(SfTransform, DelayClauseFromWhen) {
  Program sf = sf_transform(corpus("fig7.dlp"));
  ASSERT_EQ(sf.clauses().size(), 3u);
  EXPECT_EQ(print_clause(sf.clauses()[1]), "q_sf(V) :- evar(V).");
  EXPECT_EQ(sf.clauses()[1].tag, ClauseTag::kDelay);
  EXPECT_FALSE(sf.has_delays());
}

TEST(SfTransform, NoDelaysIsARenaming) {
  Program p = corpus("nodelays.dlp");
  Program sf = sf_transform(p);
  ASSERT_EQ(sf.clauses().size(), p.clauses().size());
  for (std::size_t i = 0; i < p.clauses().size(); ++i) {
    EXPECT_EQ(sf.clauses()[i].tag, ClauseTag::kOriginal);
    EXPECT_EQ(print_clause(strip_clause(sf.clauses()[i])), print_clause(p.clauses()[i]));
  }
}

TEST(SfTransform, DisjunctiveBuiltinDelay) {
  std::string text = print_program(sf_transform(corpus("fig2.dlp")));
  EXPECT_NE(text.find("plus_sf(A, B, C) :- (evar(A), evar(B) ; evar(A), evar(C) ; evar(B), evar(C))."),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("plus_sf(A, B, C) :- plus(A, B, C)."), std::string::npos);
  EXPECT_NE(text.find("leq_sf(A, B) :- (evar(A) ; evar(B))."), std::string::npos);
}

TEST(SfTransform, ClauseCountLaw) {
  // Original clauses map one to one; one delay clause per delayed predicate,
  // and each delayed builtin the program calls adds a delay and a bridge.
  const std::pair<const char*, std::size_t> expected[] = {
      {"fig1.dlp", 7}, {"fig2.dlp", 11}, {"fig3_p1.dlp", 2}, {"fig3_p2.dlp", 2},
      {"fig3_p3.dlp", 3}, {"fig7.dlp", 3}, {"fig8.dlp", 4}, {"nodelays.dlp", 6}};
  for (const auto& [name, size] : expected) {
    Program p = corpus(name);
    Program sf = sf_transform(p);
    EXPECT_EQ(sf.clauses().size(), size) << name;

    std::size_t delay_clauses = 0, bridges = 0;
    std::vector<std::string> kept;
    for (const Clause& c : sf.clauses()) {
      if (c.tag == ClauseTag::kDelay) {
        ++delay_clauses;
        EXPECT_TRUE(mentions_evar(c.body)) << print_clause(c);
      } else if (!p.defines(strip_suffix(c.head.functor()))) {
        ++bridges;
      } else {
        kept.push_back(print_clause(strip_clause(c)));
      }
    }
    std::vector<std::string> original;
    for (const Clause& c : p.clauses()) original.push_back(print_clause(c));
    EXPECT_EQ(kept, original) << name;
    EXPECT_EQ(sf.clauses().size(), p.clauses().size() + delay_clauses + bridges) << name;

    std::size_t delayed = 0;
    for (SymbolId pred : p.predicates())
      if (p.defines(pred) && p.delay_for(pred)) ++delayed;
    EXPECT_EQ(delay_clauses, delayed + bridges) << name;
  }
}

TEST(FTransform, ClauseCountLaw) {
  for (const char* name : kPrograms) {
    Program sf = sf_transform(corpus(name));
    Program f = f_transform(corpus(name));
    EXPECT_EQ(f.clauses().size(), 2 * sf.clauses().size()) << name;
  }
}

TEST(FTransform, FactsNeverFlounder) {
  Program f = f_transform(parse_program("r(a).\ns(X) :- r(X).\n"));
  std::string text = print_program(f);
  EXPECT_NE(text.find("r_f(a) :- fail."), std::string::npos) << text;
  EXPECT_NE(text.find("s_f(X) :- r_sf(X), r_f(X)."), std::string::npos) << text;
}

TEST(FTransform, DelayClausesCopied) {
  Program f = f_transform(corpus("fig7.dlp"));
  std::string text = print_program(f);
  EXPECT_NE(text.find("q_f(V) :- evar(V)."), std::string::npos) << text;
  EXPECT_NE(text.find("p_f(X, Y) :- q_sf(X), q_sf(Y), (q_f(X) ; q_f(Y))."), std::string::npos)
      << text;
}

TEST(FTransform, SourceOrderOption) {
  FOptions o;
  o.recursive_first = false;
  std::string text = print_program(f_transform(corpus("fig1.dlp"), o));
  EXPECT_NE(text.find("(append_f(Cs, [A], Bs) ; reverse_f(As, Cs))"), std::string::npos) << text;
}

TEST(SfPredicateMap, PairsRenamedPredicates) {
  auto map = sf_predicate_map(corpus("fig1.dlp"));
  ASSERT_EQ(map.size(), 3u);
  for (const auto& [sf, orig] : map) EXPECT_EQ(strip_suffix(sf), orig);
}

TEST(Evar, Builtin) {
  std::uint64_t next = 0;
  auto v = evar_successes(term("X"), next);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(show(*v[0].lookup(0)), "'VAR'(0)");
  EXPECT_EQ(next, 1u);
  EXPECT_TRUE(evar_successes(term("[a]"), next).empty());
  EXPECT_TRUE(evar_successes(term("[X]"), next).empty());
  auto e = evar_successes(term("'VAR'(3)"), next);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_TRUE(e[0].empty());
  EXPECT_EQ(next, 1u);
}

TEST(Enonground, Builtin) {
  std::uint64_t next = 5;
  std::vector<std::string> names;
  Term t = parse_term("[A|B]", names);
  auto alts = enonground_successes(t, next);
  ASSERT_EQ(alts.size(), 2u);
  EXPECT_EQ(print_term(apply(alts[0], t), names), "['VAR'(5)|B]");
  EXPECT_EQ(print_term(apply(alts[1], t), names), "[A|'VAR'(5)]");
  EXPECT_EQ(next, 6u);
  EXPECT_TRUE(enonground_successes(term("[a]"), next).empty());
  auto already = enonground_successes(term("f(X, 'VAR'(0))"), next);
  ASSERT_EQ(already.size(), 1u);
  EXPECT_TRUE(already[0].empty());
}

TEST(Evar, FreshnessAcrossADerivation) {
  // Two evar successes in one derivation must not share an extraneous term,
  // or p(X, Y) would wrongly report p(X, X).
  Program sf = sf_transform(corpus("fig7.dlp"));
  Engine engine(sf);
  std::vector<std::string> got;
  for (const Outcome& o : engine.solve_all(parse_goal("p_sf(X, Y)"))) {
    ASSERT_EQ(o.kind, OutcomeKind::kSuccess);
    got.push_back(pretty(decode(answer_atom(parse_goal("p_sf(X, Y)"), o))));
  }
  EXPECT_EQ(got, (std::vector<std::string>{"p_sf(A, B)", "p_sf(A, a)", "p_sf(a, A)",
                                           "p_sf(a, a)"}));
}

TEST(EvarProperty, FreshInEveryDerivation) {
  // Each evar call that binds a variable yields an extraneous term no other
  // call in the derivation produced.
  Program sf = sf_transform(corpus("fig1.dlp"));
  SolveOptions o;
  o.depth_bound = 8;
  o.track_selected = true;
  Engine engine(sf, o);
  int checked = 0;
  for (const char* goal : {"append3_sf(A, B, C, D)", "reverse_sf(A, B)", "append_sf(A, [B], C)"}) {
    engine.solve(parse_goal(goal), [&](const Outcome& out) {
      if (out.kind != OutcomeKind::kSuccess) return true;
      std::size_t binding_calls = 0;
      for (const DerivationStep& s : out.derivation.steps)
        if (s.selected && builtin_kind(s.selected.functor()) == Builtin::kEvar &&
            s.selected.args()[0].is_variable())
          ++binding_calls;
      std::set<std::string> produced;
      for (const Atom& a : out.selected())
        if (builtin_kind(a.functor()) == Builtin::kEvar) produced.insert(show(a.args()[0]));
      EXPECT_EQ(produced.size(), binding_calls) << goal;
      checked += binding_calls > 1;
      return true;
    });
  }
  EXPECT_GT(checked, 20);
}

TEST(DelayOnlySuccessProperty, ImmediateFlounderIsDelayOnlySuccess) {
  // An atom is immediately floundered in P exactly when it succeeds in SF(P)
  // through delay clauses alone.
  std::mt19937_64 rng(21);
  std::vector<std::string> pool_text = {"X", "Y", "[]", "[a]", "[X|Y]", "[a|Y]", "a", "[X]", "3"};
  std::vector<Term> pool;
  std::vector<std::string> names;
  for (const auto& s : pool_text) pool.push_back(parse_term(s, names));
  int delayed = 0, total = 0;
  for (const char* name : kPrograms) {
    Program p = corpus(name);
    Program sf = sf_transform(p);
    SolveOptions o;
    o.filter = ClauseFilter::kDelayOnly;
    o.depth_bound = 4;
    Engine engine(sf, o);
    std::vector<SymbolId> preds = p.predicates();
    for (SymbolId b : p.called_predicates())
      if (intrinsic_delay(p.builtin(b))) preds.push_back(b);
    for (SymbolId pred : preds) {
      std::uint32_t n = symbol(pred).arity;
      for (int i = 0; i < 60; ++i) {
        std::vector<Term> args;
        for (std::uint32_t k = 0; k < n; ++k)
          args.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
        Atom a = n == 0 ? Term::constant(pred) : Term::compound(pred, args);
        Atom a_sf = n == 0 ? Term::constant(sf_symbol(pred)) : Term::compound(sf_symbol(pred), args);
        bool succeeds = false;
        for (const Outcome& out : engine.solve_all(Goal::from_atom(a_sf)))
          succeeds = succeeds || out.kind == OutcomeKind::kSuccess;
        EXPECT_EQ(!callable(a, p), succeeds) << name << ": " << show(a);
        delayed += !callable(a, p);
        ++total;
      }
    }
  }
  EXPECT_GT(delayed, 20);
  EXPECT_GT(total - delayed, 20);
}
