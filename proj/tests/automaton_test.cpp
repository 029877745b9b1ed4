#include <gtest/gtest.h>

#include "mfa/mfa.hpp"
#include "oracles.hpp"

using namespace mfa;

namespace {

std::set<Word> words(std::initializer_list<const char*> ws) {
  std::set<Word> out;
  for (const char* w : ws) out.insert(letters(w));
  return out;
}

Automaton<Word> single(const char* w) { return finite_acceptor<Word>({letters(w)}); }

/// Normal form of P_d^i Q_d^j, computed by cancelling counts.
StackAction pq(std::size_t i, std::size_t j) {
  Word d{Symbol("d")};
  return i >= j ? StackAction::pushing(power(d, i - j)) : StackAction::popping(power(d, j - i));
}

}  // namespace

TEST(Enumerate, Fig1UpToTwo) {
  EXPECT_EQ(enumerate_labels(fixtures::fig1(), 2), words({"", "a", "b", "aa", "ab", "bb"}));
}

TEST(Enumerate, NoTerminalsMeansNothing) {
  auto a = fixtures::fig1();
  a.set_terminal(0, false);
  a.set_terminal(1, false);
  EXPECT_TRUE(enumerate_labels(a, 5).empty());
  EXPECT_TRUE(enumerate_labels(Automaton<Word>{}, 5).empty());
}

TEST(Enumerate, Fig2PairsUpToThree) {
  std::set<PdaLabel> expected;
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; i + j <= 3; ++j)
      expected.insert({pq(i, j), concat(power(letters("a"), i), power(letters("b"), j))});
  EXPECT_EQ(enumerate_labels(fixtures::fig2().graph, 3), expected);
}

TEST(Normalize, Fig1) {
  auto n = normalize(fixtures::fig1());
  EXPECT_TRUE(is_normalized(n));
  EXPECT_FALSE(is_normalized(fixtures::fig1()));
  EXPECT_EQ(n.vertex_count(), 4u);
  EXPECT_EQ(enumerate_labels(n, 4), enumerate_labels(fixtures::fig1(), 4));
}

TEST(Normalize, AlreadyNormalUnchanged) {
  auto a = single("ab");
  ASSERT_TRUE(is_normalized(a));
  auto n = normalize(a);
  EXPECT_EQ(n.vertex_count(), a.vertex_count());
  EXPECT_EQ(n.edge_count(), a.edge_count());
}

TEST(Normalize, EmptyTerminalSetGainsIsolatedTerminal) {
  Automaton<Word> a;
  a.set_initial(a.add_vertex("p"));
  a.add_edge(0, letters("a"), 0);
  auto n = normalize(a);
  EXPECT_TRUE(is_normalized(n));
  EXPECT_TRUE(enumerate_labels(n, 4).empty());
}

TEST(Combine, UnionProductStar) {
  auto a = single("a"), b = single("b");
  EXPECT_EQ(enumerate_labels(combine(Combine::union_of, a, &b), 3), words({"a", "b"}));
  EXPECT_EQ(enumerate_labels(combine(Combine::product, a, &b), 3), words({"ab"}));
  EXPECT_EQ(enumerate_labels(combine(Combine::star, a), 5), words({"", "a", "aa", "aaa", "aaaa", "aaaaa"}));
}

TEST(Trim, RemovesDeadComponent) {
  auto a = fixtures::fig1();
  VertexId x = a.add_vertex("x"), y = a.add_vertex("y");
  a.add_edge(x, letters("a"), y);
  a.set_terminal(y);
  VertexId z = a.add_vertex("z");
  a.add_edge(0, letters("c"), z);
  auto t = trim(a);
  EXPECT_EQ(t.vertex_count(), 2u);
  EXPECT_EQ(enumerate_labels(t, 4), enumerate_labels(a, 4));
  auto full = trim(fixtures::fig1());
  EXPECT_EQ(full.vertex_count(), 2u);
  EXPECT_EQ(full.edge_count(), 3u);
}

TEST(Trim, NoTerminals) {
  auto a = fixtures::fig1();
  a.set_terminal(0, false);
  a.set_terminal(1, false);
  auto t = trim(a);
  EXPECT_LE(t.vertex_count(), 1u);
  EXPECT_TRUE(enumerate_labels(t, 4).empty());
}

TEST(Expression, SingleEdgeIsLiteral) {
  auto e = to_expression(single("a"));
  EXPECT_EQ(expr_enumerate(e, 3), words({"a"}));
}

TEST(Expression, Fig1IsAStarBStar) {
  auto e = to_expression(fixtures::fig1());
  std::set<Word> expected;
  for (const auto& w : oracle::all_words({Symbol("a"), Symbol("b")}, 6))
    if (oracle::in_a_star_b_star(w)) expected.insert(w);
  auto back = expr_to_automaton(e);
  EXPECT_EQ(language_upto(back, 6), expected);
  EXPECT_EQ(expr_enumerate(e, 6), enumerate_labels(fixtures::fig1(), 6));
}

TEST(Expression, Fig2OverPairs) {
  auto e = to_expression(fixtures::fig2().graph);
  EXPECT_EQ(expr_enumerate(e, 4), enumerate_labels(fixtures::fig2().graph, 4));
}

TEST(Expression, Evaluation) {
  using E = RationalExpression<Word>;
  EXPECT_EQ(enumerate_labels(expr_to_automaton(E::unit()), 3), words({""}));
  auto u = E::union_of({E::literal({letters("a")}), E::star(E::literal({letters("b")}))});
  EXPECT_EQ(language_upto(expr_to_automaton(u), 3), words({"a", "", "b", "bb", "bbb"}));
  using S = RationalExpression<StackAction>;
  auto p = S::product({S::literal({StackAction::pushing(Symbol("d"))}), S::literal({StackAction::popping(Symbol("d"))})});
  auto vals = enumerate_labels(expr_to_automaton(p), 2);
  ASSERT_EQ(vals.size(), 1u);
  EXPECT_TRUE(vals.begin()->is_one());
}

TEST(MapLabels, Fig2Projections) {
  auto g = fixtures::fig2().graph;
  auto second = map_labels(g, [](const PdaLabel& l) { return l.second; });
  std::set<Word> expected;
  for (const auto& w : oracle::all_words({Symbol("a"), Symbol("b")}, 4))
    if (oracle::in_a_star_b_star(w)) expected.insert(w);
  EXPECT_EQ(language_upto(second, 4), expected);
  auto first = map_labels(g, [](const PdaLabel& l) { return l.first; });
  std::set<StackAction> firsts;
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; i + j <= 3; ++j) firsts.insert(pq(i, j));
  EXPECT_EQ(enumerate_labels(first, 3), firsts);
  auto same = map_labels(fixtures::fig1(), [](const Word& w) { return w; });
  EXPECT_EQ(same, fixtures::fig1());
}

TEST(AutomatonProperty, NormalizeTrimPreserveLabels) {
  std::vector<Automaton<Word>> corpus{fixtures::fig1(), fixtures::ab_star(), single("ab"),
                                      combine(Combine::star, fixtures::fig1())};
  for (const auto& a : corpus) {
    auto base = enumerate_labels(a, 4);
    EXPECT_EQ(enumerate_labels(normalize(a), 4), base);
    EXPECT_EQ(enumerate_labels(trim(a), 4), base);
    EXPECT_EQ(expr_enumerate(to_expression(a), 4), base);
  }
}
