#include <gtest/gtest.h>

#include <set>

#include "flounder/parser.hpp"
#include "flounder/printer.hpp"
#include "flounder/transform.hpp"
#include "support.hpp"

using namespace flounder;
using flounder::testing::corpus;
using flounder::testing::corpus_path;

namespace {

std::vector<std::string> printed_clauses(const Program& p) {
  std::vector<std::string> out;
  for (const Clause& c : p.clauses()) out.push_back(print_clause(c));
  return out;
}

void expect_error(std::string_view text, int line, int column) {
  try {
    parse_program(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

}  // namespace

TEST(Parse, MultiModedListProgram) {
  Program p = corpus("fig1.dlp");
  EXPECT_EQ(p.delays().size(), 2u);
  EXPECT_EQ(p.clauses().size(), 5u);
  const DelayDecl* d = p.delay_for(intern("append", 3));
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(print_delay(*d), ":- delay append(As, Bs, Cs) if var(As), var(Cs).");
  // A.As is cons.
  EXPECT_EQ(print_clause(p.clauses()[1]), "append([A|As], Bs, [A|Cs]) :- append(As, Bs, Cs).");
}

TEST(Parse, FactAndSugar) {
  Program p = parse_program("p.\nq([a, b|T], 'hello world', -3, [x]).");
  ASSERT_EQ(p.clauses().size(), 2u);
  EXPECT_TRUE(p.clauses()[0].is_fact());
  EXPECT_EQ(print_clause(p.clauses()[0]), "p.");
  EXPECT_EQ(print_clause(p.clauses()[1]), "q([a, b|T], 'hello world', -3, [x]).");
}

TEST(Parse, CommentsAndWhen) {
  Program p = parse_program("% leading\n:- delay q(V) when var(V). % trailing\nq(a).\n");
  ASSERT_EQ(p.delays().size(), 1u);
  EXPECT_EQ(print_delay(p.delays()[0]), ":- delay q(V) if var(V).");
}

TEST(Parse, DisjunctiveCondition) {
  Program p = corpus("fig2.dlp");
  const DelayDecl* d = p.delay_for(intern("plus", 3));
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->condition.disjuncts.size(), 3u);
  EXPECT_EQ(print_delay(*d),
            ":- delay plus(A, B, C) if var(A), var(B) ; var(A), var(C) ; var(B), var(C).");
}

TEST(Parse, RepeatedDeclarationsMerge) {
  Program p = parse_program(
      ":- delay r(A, B) if var(A).\n:- delay r(A, B) if nonground(B).\nr(a, b).");
  ASSERT_EQ(p.delays().size(), 1u);
  EXPECT_EQ(p.delays()[0].condition.disjuncts.size(), 2u);
}

TEST(ParseErrors, Positions) {
  expect_error(":- delay q(V) if var(W).", 1, 22);
  expect_error(":- delay q(V, V) if var(V).", 1, 10);
  expect_error("p(a).\nq(X) :- p(X) p(X).", 2, 14);
  expect_error("p(a", 1, 4);
  expect_error("p(a).\n\nevar(b).", 3, 1);
  expect_error("enonground(X) :- true.", 1, 1);
}

TEST(ParseErrors, EncodingDefinitionsNeedOptIn) {
  EXPECT_THROW(corpus("fig4_encoding.dlp"), ParseError);
  ParseOptions o;
  o.allow_encoding_definitions = true;
  Program p = corpus("fig4_encoding.dlp", o);
  EXPECT_EQ(p.clauses().size(), 4u);
}

TEST(Parse, GoalSyntax) {
  Goal g = parse_goal("append(X, Y, [a]), reverse(Y, Z).");
  EXPECT_EQ(g.body.size(), 2u);
  EXPECT_EQ(g.var_names, (std::vector<std::string>{"X", "Y", "Z"}));
  EXPECT_EQ(print_goal(parse_goal("p(X)")), "p(X)");
}

TEST(Print, EmptyProgram) { EXPECT_EQ(print_program(Program{}), ""); }

TEST(Print, FDisjunction) {
  std::string text = print_program(f_transform(corpus("fig1.dlp")));
  EXPECT_NE(text.find("(reverse_f(As, Cs) ; append_f(Cs, [A], Bs))"), std::string::npos) << text;
  EXPECT_NE(text.find("reverse_f([], []) :- fail."), std::string::npos);
}

TEST(RoundTrip, CorpusIsIdempotent) {
  for (const char* name : {"fig1.dlp", "fig2.dlp", "fig3_p1.dlp", "fig3_p2.dlp", "fig3_p3.dlp",
                           "fig7.dlp", "fig8.dlp", "nodelays.dlp", "fig1_sf.dlp",
                           "fig1_f.dlp"}) {
    Program p = corpus(name);
    std::string once = print_program(p);
    Program q = parse_program(once);
    EXPECT_EQ(print_program(q), once) << name;
    EXPECT_EQ(printed_clauses(q), printed_clauses(p)) << name;
    EXPECT_EQ(q.delays().size(), p.delays().size()) << name;
  }
}

TEST(RoundTrip, TransformedProgramsKeepTags) {
  Program sf = sf_transform(corpus("fig1.dlp"));
  Program back = parse_program(print_program(sf));
  ASSERT_EQ(back.clauses().size(), sf.clauses().size());
  for (std::size_t i = 0; i < sf.clauses().size(); ++i) {
    EXPECT_EQ(back.clauses()[i].tag, sf.clauses()[i].tag) << print_clause(sf.clauses()[i]);
    EXPECT_EQ(back.clauses()[i].id, sf.clauses()[i].id);
  }
}

TEST(ClauseIds, UniqueAndPositive) {
  Program p = corpus("fig2.dlp");
  std::set<std::uint32_t> ids;
  for (const Clause& c : p.clauses()) {
    EXPECT_GE(c.id, 1u);
    EXPECT_TRUE(ids.insert(c.id).second);
    EXPECT_EQ(&p.clause(c.id), &c);
  }
}
