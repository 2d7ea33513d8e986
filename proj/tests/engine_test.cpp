#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "flounder/engine.hpp"
#include "oracles/lists.hpp"
#include "oracles/tree.hpp"
#include "support.hpp"

using namespace flounder;
using flounder::testing::corpus;
using flounder::testing::pretty;
using flounder::testing::show;
using flounder::testing::term;
using flounder::testing::TermGen;

namespace {

std::vector<Outcome> of_kind(const std::vector<Outcome>& all, OutcomeKind k) {
  std::vector<Outcome> out;
  for (const Outcome& o : all)
    if (o.kind == k) out.push_back(o);
  return out;
}

// Answers of one kind as canonical strings, with multiplicity.
std::multiset<std::string> answers(const Goal& g, const std::vector<Outcome>& all, OutcomeKind k) {
  std::multiset<std::string> out;
  for (const Outcome& o : all)
    if (o.kind == k) out.insert(pretty(answer_atom(g, o)));
  return out;
}

struct CorpusGoal {
  const char* file;
  const char* goal;
  std::uint32_t depth;
};

const std::vector<CorpusGoal>& corpus_goals() {
  static const std::vector<CorpusGoal> goals = {
      {"fig1.dlp", "append3(A, B, C, [1, 2])", 30},
      {"fig1.dlp", "append(X, Y, Z)", 30},
      {"fig1.dlp", "append(X, [a], [a|Z])", 30},
      {"fig1.dlp", "append3(X, [b], Y, [a, b|Z])", 14},
      {"fig1.dlp", "reverse([a|X], Y)", 14},
      {"fig1.dlp", "reverse(X, [a|Y])", 14},
      {"fig1.dlp", "reverse([a, b, c], Y)", 30},
      {"fig1.dlp", "reverse(X, [a, b])", 30},
      {"fig2.dlp", "submaxtree(t(nil, 3, t(nil, 5, nil)), T)", 64},
      {"fig2.dlp", "submaxtree(t(nil, X, nil), T)", 64},
      {"fig3_p2.dlp", "p(Y), q(Y)", 10},
      {"fig7.dlp", "p(X, Y)", 10},
      {"fig7.dlp", "p(a, Y)", 10},
      {"fig8.dlp", "p", 12},
  };
  return goals;
}

}  // namespace

TEST(Callable, DelayDeclarations) {
  Program p1 = corpus("fig1.dlp");
  EXPECT_FALSE(callable(term("append(Xs, [a], Zs)"), p1));
  EXPECT_TRUE(callable(term("append([], Ys, Zs)"), p1));
  EXPECT_TRUE(callable(term("append(Xs, Ys, [a])"), p1));
  EXPECT_TRUE(callable(term("append3(A, B, C, D)"), p1));
  Program p2 = corpus("fig2.dlp");
  EXPECT_TRUE(callable(term("plus(1, 2, Z)"), p2));
  EXPECT_FALSE(callable(term("plus(X, 2, Z)"), p2));
  EXPECT_TRUE(callable(term("plus(X, 2, 5)"), p2));
  EXPECT_FALSE(callable(term("leq(X, 2)"), p2));
}

TEST(Solve, Append3SplitsMatchOracle) {
  Program p = corpus("fig1.dlp");
  Goal g = parse_goal("append3(As, Bs, Cs, [1, 2])");
  std::vector<Outcome> out = solve(g, p);
  std::multiset<std::string> got = answers(g, out, OutcomeKind::kSuccess);
  std::multiset<std::string> want;
  SymbolId append3 = intern("append3", 4);
  Term whole = term("[1, 2]");
  for (const auto& parts : oracle::splits(oracle::list_items(whole), 3))
    want.insert(show(Term::compound(append3, {parts[0], parts[1], parts[2], whole})));
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.size(), 6u);
  EXPECT_TRUE(of_kind(out, OutcomeKind::kFloundered).empty());
}

TEST(Solve, AppendFloundersImmediately) {
  Program p = corpus("fig1.dlp");
  Goal g = parse_goal("append(Xs, Ys, Zs)");
  std::vector<Outcome> out = solve(g, p);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, OutcomeKind::kFloundered);
  EXPECT_TRUE(out[0].answer.empty());
  EXPECT_EQ(out[0].length, 0u);
  ASSERT_EQ(out[0].residual.size(), 1u);
  EXPECT_TRUE(is_variant(out[0].residual[0], term("append(A, B, C)")));
}

TEST(Solve, ReverseSingleton) {
  Program p = corpus("fig1.dlp");
  Goal g = parse_goal("reverse([a], Ys)");
  auto succ = of_kind(solve(g, p), OutcomeKind::kSuccess);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(print_bindings(succ[0].answer, g.var_names), "Ys = [a]");
}

TEST(Solve, SuccessAndFlounderTogether) {
  Program p = corpus("fig1.dlp");
  Goal g = parse_goal("append(X, [a], [a|Z])");
  std::vector<Outcome> out = solve(g, p, {}, 20);
  auto succ = of_kind(out, OutcomeKind::kSuccess);
  auto fl = of_kind(out, OutcomeKind::kFloundered);
  ASSERT_EQ(succ.size(), 1u);
  ASSERT_EQ(fl.size(), 1u);
  EXPECT_EQ(print_bindings(succ[0].answer, g.var_names), "X = [], Z = []");
  EXPECT_EQ(pretty(answer_atom(g, fl[0])), "append([a|A], [a], [a|B])");
  for (const Atom& r : fl[0].residual) EXPECT_FALSE(callable(r, p));
}

TEST(Solve, DepthExceededIsReported) {
  Program p = corpus("fig8.dlp");
  Goal g = parse_goal("q(a)");
  std::vector<Outcome> out = solve(g, p, {}, 5);
  EXPECT_EQ(of_kind(out, OutcomeKind::kSuccess).size(), 5u);
  EXPECT_EQ(of_kind(out, OutcomeKind::kDepthExceeded).size(), 1u);
  EXPECT_TRUE(of_kind(out, OutcomeKind::kFiniteFailure).empty());
}

TEST(Solve, FiniteFailure) {
  Program p = corpus("fig1.dlp");
  std::vector<Outcome> out = solve(parse_goal("append([a], [b], [b, a])"), p);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, OutcomeKind::kFiniteFailure);
}

TEST(Solve, IllTypedBuiltinIsAnError) {
  Program p = corpus("fig2.dlp");
  std::vector<Outcome> out = solve(parse_goal("plus(a, 1, Z)"), p);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, OutcomeKind::kError);
  EXPECT_FALSE(out[0].message.empty());
}

TEST(Solve, PlusModes) {
  Program p = corpus("fig2.dlp");
  Goal g = parse_goal("plus(X, 2, 5), plus(3, Y, 10), plus(4, 5, Z)");
  auto succ = of_kind(solve(g, p), OutcomeKind::kSuccess);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(print_bindings(succ[0].answer, g.var_names), "X = 3, Y = 7, Z = 9");
  EXPECT_EQ(of_kind(solve(parse_goal("plus(100000000000000000000, 1, Z)"), p),
                    OutcomeKind::kSuccess)
                .size(),
            1u);
}

TEST(Solve, SubmaxtreeExample) {
  Program p = corpus("fig2.dlp");
  Goal g = parse_goal("submaxtree(t(nil, 3, t(nil, 5, nil)), T)");
  auto succ = of_kind(solve(g, p), OutcomeKind::kSuccess);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(print_bindings(succ[0].answer, g.var_names), "T = t(nil, -2, t(nil, 0, nil))");
}

TEST(Solve, SubmaxtreeAgreesWithTwoPassOracle) {
  Program p = corpus("fig2.dlp");
  std::mt19937_64 rng(5);
  SymbolId sub = intern("submaxtree", 2);
  for (int i = 0; i < 40; ++i) {
    Term tree = oracle::random_tree(rng, 3);
    Atom a = Term::compound(sub, {tree, Term::variable(0)});
    Goal g = Goal::from_atom(a, {"T"});
    std::vector<Outcome> out = solve(g, p, {}, 400);
    auto succ = of_kind(out, OutcomeKind::kSuccess);
    ASSERT_EQ(succ.size(), 1u) << show(tree);
    EXPECT_EQ(*succ[0].answer.lookup(0), oracle::submaxtree(tree)) << show(tree);
    EXPECT_TRUE(of_kind(out, OutcomeKind::kFloundered).empty());
  }
}

TEST(SolveSld, Examples) {
  Program p1 = corpus("fig1.dlp");
  Goal rev = parse_goal("reverse([a, b], X)");
  auto succ = of_kind(solve_sld(rev, p1), OutcomeKind::kSuccess);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(print_bindings(succ[0].answer, rev.var_names), "X = [b, a]");
  EXPECT_EQ(of_kind(solve_sld(parse_goal("append(X, Y, [a])"), p1), OutcomeKind::kSuccess).size(),
            2u);

  Goal py = parse_goal("p(Y)");
  auto a1 = answers(py, solve_sld(py, corpus("fig3_p1.dlp")), OutcomeKind::kSuccess);
  EXPECT_EQ(a1, (std::multiset<std::string>{"p(a)"}));
  auto a2 = answers(py, solve_sld(py, corpus("fig3_p2.dlp")), OutcomeKind::kSuccess);
  EXPECT_EQ(a2, (std::multiset<std::string>{"p(A)"}));
  auto a3 = answers(py, solve_sld(py, corpus("fig3_p3.dlp")), OutcomeKind::kSuccess);
  EXPECT_EQ(a3, (std::multiset<std::string>{"p(A)", "p(a)"}));
}

TEST(SolveSld, IgnoresDelays) {
  Program p = corpus("fig1.dlp");
  auto out = solve_sld(parse_goal("append(X, Y, Z)"), p, 4);
  EXPECT_TRUE(of_kind(out, OutcomeKind::kFloundered).empty());
  EXPECT_EQ(of_kind(out, OutcomeKind::kSuccess).size(), 4u);
}

TEST(Replay, FlounderUnderRightmost) {
  Program p = corpus("fig1.dlp");
  Engine e(p, {});
  Goal g = parse_goal("reverse([a|X], Y)");
  auto fl = of_kind(e.solve_all(g), OutcomeKind::kFloundered);
  ASSERT_FALSE(fl.empty());
  for (const Outcome& o : fl) {
    Outcome r = e.replay(g, o.derivation, ComputationRule::rightmost());
    EXPECT_EQ(r.kind, OutcomeKind::kFloundered);
    EXPECT_EQ(r.length, o.length);
    EXPECT_TRUE(is_variant(answer_atom(g, r), answer_atom(g, o)));
  }
}

TEST(Replay, SuccessUnderRandom) {
  Program p = corpus("fig1.dlp");
  Engine e(p, {});
  Goal g = parse_goal("append3(As, Bs, Cs, [a, b])");
  auto succ = of_kind(e.solve_all(g), OutcomeKind::kSuccess);
  ASSERT_EQ(succ.size(), 6u);
  for (const Outcome& o : succ) {
    Outcome r = e.replay(g, o.derivation, ComputationRule::random(7));
    EXPECT_EQ(r.kind, OutcomeKind::kSuccess);
    EXPECT_EQ(r.length, o.length);
    EXPECT_TRUE(is_variant(answer_atom(g, r), answer_atom(g, o)));
  }
}

TEST(Replay, ImmediateFlounder) {
  Program p = corpus("fig1.dlp");
  Engine e(p, {});
  Goal g = parse_goal("append(X, Y, Z)");
  Outcome o = e.solve_all(g).front();
  Outcome r = e.replay(g, o.derivation, ComputationRule::random(3));
  EXPECT_EQ(r.kind, OutcomeKind::kFloundered);
  EXPECT_EQ(r.length, 0u);
}

TEST(Annotations, ShapeFollowsResolution) {
  Program p = corpus("fig1.dlp");
  auto out = solve(parse_goal("append3(As, Bs, Cs, [a])"), p);
  for (const Outcome& o : out) {
    if (o.kind != OutcomeKind::kSuccess) continue;
    ASSERT_FALSE(o.derivation.steps.empty());
    const Annotation& first = o.derivation.steps[0].annotation;
    ASSERT_EQ(first.size(), 1u);
    EXPECT_EQ(first[0].clause, 0u);
    EXPECT_EQ(first[0].goal, 1u);
    for (const DerivationStep& s : o.derivation.steps) EXPECT_EQ(s.annotation.back().clause, 0u);
  }
}

// Properties.

TEST(EngineProperty, SelectedAtomsWereCallable) {
  for (const CorpusGoal& cg : corpus_goals()) {
    Program p = corpus(cg.file);
    for (const ComputationRule& rule :
         {ComputationRule::leftmost(), ComputationRule::rightmost(), ComputationRule::random(1)}) {
      for (const Outcome& o : solve(parse_goal(cg.goal), p, rule, cg.depth)) {
        for (const DerivationStep& s : o.derivation.steps) {
          if (!s.selected) continue;
          EXPECT_TRUE(callable(s.selected, p)) << cg.goal << ": " << show(s.selected);
        }
        if (o.kind == OutcomeKind::kFloundered) {
          for (const Atom& r : o.residual) EXPECT_FALSE(callable(r, p));
        }
        if (o.kind == OutcomeKind::kSuccess) {
          EXPECT_TRUE(o.residual.empty());
        }
      }
    }
  }
}

TEST(EngineProperty, CallabilityClosedUnderInstantiation) {
  Program p1 = corpus("fig1.dlp");
  Program p2 = corpus("fig2.dlp");
  TermGen gen(21);
  std::vector<SymbolId> preds = {intern("append", 3), intern("reverse", 2), intern("plus", 3),
                                 intern("leq", 2)};
  int checked = 0;
  for (int i = 0; i < 4000; ++i) {
    SymbolId pred = preds[i % preds.size()];
    std::vector<Term> args;
    for (std::uint32_t k = 0; k < symbol(pred).arity; ++k)
      args.push_back(gen.coin() ? Term::integer(static_cast<long long>(i % 5)) : gen.term(2));
    Atom a = Term::compound(pred, args);
    const Program& p = i % preds.size() < 2 ? p1 : p2;
    if (!callable(a, p)) continue;
    ++checked;
    Atom b = apply(gen.substitution(2), a);
    EXPECT_TRUE(callable(b, p)) << show(a) << " -> " << show(b);
  }
  EXPECT_GT(checked, 1000);
}

TEST(EngineProperty, RuleIndependence) {
  for (const CorpusGoal& cg : corpus_goals()) {
    Program p = corpus(cg.file);
    Goal g = parse_goal(cg.goal);
    auto base = solve(g, p, ComputationRule::leftmost(), cg.depth);
    auto succ = answers(g, base, OutcomeKind::kSuccess);
    auto fl = answers(g, base, OutcomeKind::kFloundered);
    for (const ComputationRule& rule :
         {ComputationRule::rightmost(), ComputationRule::random(1), ComputationRule::random(2),
          ComputationRule::random(99)}) {
      auto other = solve(g, p, rule, cg.depth);
      EXPECT_EQ(answers(g, other, OutcomeKind::kSuccess), succ) << cg.goal << " " << rule.name();
      EXPECT_EQ(answers(g, other, OutcomeKind::kFloundered), fl) << cg.goal << " " << rule.name();
    }
  }
}

TEST(EngineProperty, FlounderedAnswersFlounderAgain) {
  // A floundered answer G.theta, run as a goal, flounders with a variant of
  // itself.
  for (const CorpusGoal& cg : corpus_goals()) {
    Program p = corpus(cg.file);
    Goal g = parse_goal(cg.goal);
    if (g.body.size() != 1) continue;
    for (const Outcome& o : solve(g, p, {}, cg.depth)) {
      if (o.kind != OutcomeKind::kFloundered) continue;
      Atom inst = answer_atom(g, o);
      Goal again = Goal::from_atom(inst);
      bool found = false;
      for (const Outcome& r : solve(again, p, {}, cg.depth))
        if (r.kind == OutcomeKind::kFloundered && is_variant(answer_atom(again, r), inst))
          found = true;
      EXPECT_TRUE(found) << cg.goal << " -> " << pretty(inst);
    }
  }
}

TEST(EngineProperty, RenamingFlounderLiftsToGeneralGoal) {
  // If an instance flounders with a renaming answer, the general goal has a
  // floundered answer that it is an instance of.
  Program p = corpus("fig1.dlp");
  std::vector<std::string> fill = {"[]", "[a]", "[U]", "[a|U]", "[U|V]", "U", "[a, b|U]"};
  for (const char* general : {"append(X, Y, Z)", "reverse(X, Y)", "append3(X, Y, Z, W)"}) {
    Goal g = parse_goal(general);
    auto gen_out = solve(g, p, {}, 12);
    std::vector<Atom> gen_fl;
    for (const Outcome& o : gen_out)
      if (o.kind == OutcomeKind::kFloundered) gen_fl.push_back(answer_atom(g, o));
    std::uint32_t n = g.num_vars();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      Substitution th;
      for (std::uint32_t v = 0; v < n; ++v)
        th.bind(v, shift_variables(term(fill[idx[v]]), 100 + 10 * v));
      Atom inst = apply(th, g.body[0].atom);
      Goal ig = Goal::from_atom(inst);
      for (const Outcome& r : solve(ig, p, {}, 12)) {
        if (r.kind != OutcomeKind::kFloundered || !is_variant(answer_atom(ig, r), inst)) continue;
        bool lifted = std::any_of(gen_fl.begin(), gen_fl.end(),
                                  [&](const Atom& a) { return is_instance(inst, a); });
        EXPECT_TRUE(lifted) << pretty(inst);
        break;
      }
      std::uint32_t k = 0;
      while (k < n && ++idx[k] == fill.size()) idx[k++] = 0;
      if (k == n) break;
    }
  }
}

TEST(EngineProperty, ExtraneousTermsOnlyFromDelayClauses) {
  std::uint64_t before = invariant_checks_performed();
  Program p = corpus("fig1.dlp");
  SolveOptions o;
  o.check_invariants = true;
  Engine e(p, o);
  e.solve_all(parse_goal("append3(As, Bs, Cs, [a, b, c])"));
  EXPECT_GT(invariant_checks_performed(), before);
}

TEST(EngineProperty, Deterministic) {
  Program p = corpus("fig1.dlp");
  Goal g = parse_goal("reverse(X, [a|Y])");
  auto a = solve(g, p, ComputationRule::random(42), 12);
  auto b = solve(g, p, ComputationRule::random(42), 12);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].answer, b[i].answer);
  }
}
