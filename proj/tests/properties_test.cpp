#include <gtest/gtest.h>

#include <random>

#include "type_model.hpp"
#include "flounder/properties.hpp"
#include "flounder/transform.hpp"
#include "support.hpp"

using namespace flounder;
using flounder::testing::corpus;
using flounder::testing::show;
using flounder::testing::term;

namespace {

TypeSet types(std::string_view text) { return classify(term(text)); }

Term random_encoded(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 1 ? 5 : 2);
  switch (pick(rng)) {
    case 0: return Term::nil();
    case 1: return term("a");
    case 2: return Term::extraneous(rng() % 3);
    case 3: return Term::compound(intern("f", 1), {random_encoded(rng, depth - 1)});
    default: return Term::cons(random_encoded(rng, depth - 1), random_encoded(rng, depth - 1));
  }
}

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(types("'VAR'(3)"), kVarType | kIncompleteListType);
  EXPECT_EQ(types("[a, b]"), kListType | kGroundType);
  EXPECT_EQ(types("[a|'VAR'(0)]"), kIncompleteListType);
  EXPECT_EQ(types("[]"), kListType | kGroundType);
  EXPECT_EQ(types("a"), kGroundType);
  EXPECT_EQ(types("f('VAR'(0))"), 0);
  EXPECT_EQ(format_types(kVarType | kIncompleteListType), "{il, v}");
}

TEST(Classify, IncompleteListDistinction) {
  // Encoded [X] is a list, encoded [[]|X] an incomplete list.
  EXPECT_EQ(types("['VAR'(0)]"), kListType);
  EXPECT_EQ(types("[[]|'VAR'(0)]"), kIncompleteListType);
}

TEST(ClassifyProperty, Subtyping) {
  std::mt19937_64 rng(51);
  int lists = 0, incomplete = 0;
  for (int i = 0; i < 3000; ++i) {
    Term t = random_encoded(rng, 5);
    TypeSet s = classify(t);
    EXPECT_EQ(s, classify(t));
    if (s & kVarType) {
      EXPECT_TRUE(s & kIncompleteListType) << show(t);
    }
    EXPECT_FALSE((s & kListType) && (s & kIncompleteListType)) << show(t);
    EXPECT_EQ(static_cast<bool>(s & kGroundType), !t.has_extraneous()) << show(t);
    lists += (s & kListType) != 0;
    incomplete += (s & kIncompleteListType) != 0;
  }
  EXPECT_GT(lists, 100);
  EXPECT_GT(incomplete, 100);
}

TEST(PropFormula, ParseEvaluatePrint) {
  PropFormula f = PropFormula::parse("X1 in il & X2 in v");
  EXPECT_EQ(f.max_position(), 2u);
  TypeSet yes[] = {kIncompleteListType, kVarType | kIncompleteListType};
  TypeSet no[] = {kListType | kGroundType, kVarType | kIncompleteListType};
  EXPECT_TRUE(f.evaluate(yes));
  EXPECT_FALSE(f.evaluate(no));
  PropFormula g = PropFormula::parse(f.to_string());
  EXPECT_EQ(g.to_string(), f.to_string());

  PropFormula h = PropFormula::parse("~(X1 in l) -> (X2 in g <-> true) | false");
  TypeSet lg[] = {kListType, 0};
  EXPECT_TRUE(h.evaluate(lg));
  TypeSet none[] = {0, 0};
  EXPECT_FALSE(h.evaluate(none));
}

TEST(PropFormula, ParseErrors) {
  for (const char* bad : {"X1 in q", "X0 in l", "X1 in l &", "(X1 in l", "Y in l", ""})
    EXPECT_THROW(PropFormula::parse(bad), std::invalid_argument) << bad;
}

TEST(Satisfies, RealVariablesRangeOverInstances) {
  PropFormula list2 = PropFormula::parse("X2 in l");
  EXPECT_FALSE(satisfies(term("p('VAR'(0), Y)"), list2));
  EXPECT_TRUE(satisfies(term("p('VAR'(0), [])"), list2));
  // The element of [Y] does not affect the list type, but may be non-ground.
  EXPECT_TRUE(satisfies(term("p(a, [Y])"), list2));
  EXPECT_FALSE(satisfies(term("p(a, [Y])"), PropFormula::parse("X2 in g")));
  EXPECT_TRUE(satisfies(term("p(a, [Y])"), PropFormula::parse("X2 in g | ~(X2 in g)")));
}

TEST(CheckModel, TypeModelHolds) {
  Program f = f_transform(corpus("fig1.dlp"));
  EnumerateOptions o;
  o.max_depth = 12;
  for (const auto& [pred, formula] : flounder::testing::kTypeModel) {
    ModelCheckResult r =
        check_model(f, intern(pred, pred[0] == 'r' ? 2 : 3), PropFormula::parse(formula), o);
    EXPECT_TRUE(r.holds) << pred << ": " << (r.counterexample ? show(r.counterexample->raw) : "");
    EXPECT_GT(r.answers_checked, 2u) << pred;
    EXPECT_EQ(r.summary.deepest, 12u);
  }
}

TEST(CheckModel, ReverseFSecondArgumentIsNotAList) {
  Program f = f_transform(corpus("fig1.dlp"));
  ModelCheckResult r = check_model(f, intern("reverse_f", 2), PropFormula::parse("X2 in l"));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(r.counterexample->depth, 1u);
  EXPECT_EQ(show(r.counterexample->raw), "reverse_f('VAR'(0), 'VAR'(1))");
  EXPECT_EQ(r.answers_checked, 1u);
}

TEST(CheckModel, WeakerAppendModel) {
  // Dropping the last conjunct and weakening <-> to -> still gives a model.
  Program f = f_transform(corpus("fig1.dlp"));
  EXPECT_TRUE(check_model(f, intern("append_f", 3),
                          PropFormula::parse("X1 in il & X3 in il & (X1 in v -> X3 in v)"))
                  .holds);
  EXPECT_TRUE(check_model(f, intern("append_sf", 3),
                          PropFormula::parse("(X1 in il & X3 in il) | (X1 in l & "
                                             "(X2 in l <-> X3 in l))"))
                  .holds);
}
