#include <gtest/gtest.h>

#include "corpus.hpp"
#include "mfa/mfa.hpp"

using namespace mfa;

namespace {

std::string data(const std::string& name) { return read_file(std::string(MFA_DATA_DIR) + "/" + name); }

template <class L>
void expect_round_trip(const Automaton<L>& a) {
  std::string text = serialize_automaton(a);
  auto back = parse_automaton<L>(text);
  EXPECT_EQ(back, a);
  EXPECT_EQ(serialize_automaton(back), text);
}

int line_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return static_cast<int>(e.line);
  }
  return -1;
}

}  // namespace

TEST(Io, AutomatonRoundTrips) {
  expect_round_trip(fixtures::fig1());
  expect_round_trip(fixtures::fig2().graph);
  expect_round_trip(fixtures::fig8());
  expect_round_trip(fixtures::ab_star());
  for (const auto& p : corpus::pdas()) expect_round_trip(p.pda.graph);
  for (const auto& t : corpus::transducer_pairs()) {
    expect_round_trip(t.rho.graph);
    expect_round_trip(t.tau.graph);
  }
  expect_round_trip(Automaton<Word>{});
}

TEST(Io, DataFilesMatchFixtures) {
  EXPECT_EQ(parse_automaton<Word>(data("fig1.aut")), fixtures::fig1());
  EXPECT_EQ(parse_pda(data("fig2.pda")).graph, fixtures::fig2().graph);
  EXPECT_EQ(parse_automaton<StackAutomatonLabel>(data("fig8.sa")), fixtures::fig8());
  EXPECT_EQ(parse_automaton<Word>(data("ab_star.aut")), fixtures::ab_star());
  EXPECT_EQ(serialize_grammar(parse_grammar(data("g.cfg"))), serialize_grammar(fixtures::grammar_g()));
  EXPECT_EQ(serialize_group_table(parse_group_table(data("z3.grp"))), serialize_group_table(fixtures::z3()));
  EXPECT_EQ(serialize_schreier(parse_schreier(data("mod2.sch"))), serialize_schreier(fixtures::mod2_schreier()));
}

TEST(Io, GrammarRoundTrips) {
  for (const auto& [name, g] : corpus::grammars()) {
    std::string text = serialize_grammar(g);
    Grammar back = parse_grammar(text);
    EXPECT_EQ(back.productions, g.productions) << name;
    EXPECT_EQ(back.start, g.start) << name;
    EXPECT_EQ(serialize_grammar(back), text) << name;
  }
  Grammar converted = pda_to_cfg(fixtures::fig2());
  EXPECT_EQ(serialize_grammar(parse_grammar(serialize_grammar(converted))), serialize_grammar(converted));
  Grammar cnf = to_cnf(fixtures::grammar_g());
  EXPECT_EQ(serialize_grammar(parse_grammar(serialize_grammar(cnf))), serialize_grammar(cnf));
}

TEST(Io, GroupAndSchreierRoundTrips) {
  for (const auto& g : {fixtures::z2(), fixtures::z3(), fixtures::s3()}) {
    std::string text = serialize_group_table(g);
    EXPECT_EQ(serialize_group_table(parse_group_table(text)), text);
  }
  std::string s = serialize_schreier(fixtures::mod2_schreier());
  EXPECT_EQ(serialize_schreier(parse_schreier(s)), s);
}

TEST(Io, ErrorsCarryLineNumbers) {
  EXPECT_EQ(line_of([] { parse_automaton<Word>("vertex a initial\n\nedge a x b\n"); }), 3);
  EXPECT_EQ(line_of([] { parse_automaton<Word>("monoid word\nvertex a initial\nvertex a\n"); }), 3);
  EXPECT_EQ(line_of([] { parse_automaton<Word>("monoid word-pair\n"); }), 1);
  EXPECT_EQ(line_of([] { parse_pda("vertex a initial\nedge a (P:d) a\n"); }), 2);
  EXPECT_EQ(line_of([] { parse_group_table("elements e\nmul e e = x\n"); }), 2);
  EXPECT_EQ(line_of([] { parse_grammar("S -> a\nfoo\n"); }), 2);
}

TEST(Dot, Fig1) {
  std::string dot = to_dot(fixtures::fig1());
  EXPECT_NE(dot.find("\"v0\";"), std::string::npos);
  EXPECT_NE(dot.find("\"v1\";"), std::string::npos);
  EXPECT_NE(dot.find("__initial"), std::string::npos);
  EXPECT_NE(dot.find("__terminal_v0"), std::string::npos);
  EXPECT_NE(dot.find("__terminal_v1"), std::string::npos);
}

TEST(Dot, EmptyAndPairs) {
  std::string empty = to_dot(Automaton<Word>{});
  EXPECT_EQ(empty.rfind("digraph", 0), 0u);
  EXPECT_EQ(empty.find("__initial"), std::string::npos);
  EXPECT_EQ(empty.back(), '\n');
  EXPECT_NE(to_dot(fixtures::fig2().graph).find("(P:d, a)"), std::string::npos);
}
