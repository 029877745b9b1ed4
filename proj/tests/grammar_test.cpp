#include <gtest/gtest.h>

#include "corpus.hpp"
#include "mfa/mfa.hpp"
#include "oracles.hpp"

using namespace mfa;

namespace {

std::set<Word> language(std::initializer_list<const char*> ws) {
  std::set<Word> out;
  for (const char* w : ws) out.insert(letters(w));
  return out;
}

std::set<Word> filter(const std::vector<Symbol>& sigma, std::size_t n, const std::function<bool(const Word&)>& p) {
  std::set<Word> out;
  for (const auto& w : oracle::all_words(sigma, n))
    if (p(w)) out.insert(w);
  return out;
}

const std::vector<Symbol> ab{Symbol("a"), Symbol("b")};

}  // namespace

TEST(Grammar, ParseClassifiesSymbols) {
  Grammar g = parse_grammar("S -> a S b | eps\n");
  EXPECT_EQ(g.start, Symbol("S"));
  EXPECT_EQ(g.terminals, (std::set<Symbol>{Symbol("a"), Symbol("b")}));
  EXPECT_EQ(g.nonterminals, (std::set<Symbol>{Symbol("S")}));
  EXPECT_EQ(g.productions.size(), 2u);
  EXPECT_TRUE(g.is_context_free());
  EXPECT_FALSE(g.is_regular());
  EXPECT_FALSE(parse_grammar("S -> a\nS a -> b\n").is_context_free());
  Grammar bad = g;
  bad.start = Symbol("a");
  EXPECT_THROW(bad.validate(), Error);
  bad = g;
  bad.nonterminals.insert(Symbol("a"));
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Regular, OneEdge) {
  auto a = finite_acceptor<Word>({letters("a")});
  auto r = nfa_to_regular(a);
  EXPECT_FALSE(r.dropped_epsilon);
  ASSERT_EQ(r.grammar.productions.size(), 1u);
  EXPECT_EQ(r.grammar.productions[0].rhs, letters("a"));
  EXPECT_TRUE(r.grammar.is_regular());
}

TEST(Regular, Fig1WithoutEpsilon) {
  auto r = nfa_to_regular(fixtures::fig1());
  EXPECT_TRUE(r.dropped_epsilon);
  EXPECT_EQ(generate_bounded(r.grammar, 5),
            filter(ab, 5, [](const Word& w) { return !w.empty() && oracle::in_a_star_b_star(w); }));
  auto back = regular_to_nfa(r.grammar);
  EXPECT_EQ(language_upto(back, 5), generate_bounded(r.grammar, 5));
  auto again = nfa_to_regular(back);
  EXPECT_EQ(generate_bounded(again.grammar, 5), generate_bounded(r.grammar, 5));
}

TEST(NormalizeRhs, AnBn) {
  Grammar n = normalize_rhs(fixtures::anbn_grammar());
  EXPECT_TRUE(is_rhs_normalized(n));
  EXPECT_EQ(serialize_grammar(n), serialize_grammar(fixtures::anbn_normalized()));
  Grammar again = normalize_rhs(n);
  EXPECT_EQ(again.productions, n.productions);
  auto g = fixtures::grammar_g();
  EXPECT_EQ(generate_bounded(normalize_rhs(g), 6), generate_bounded(g, 6));
}

TEST(Cnf, Shape) {
  for (const auto& [name, g] : corpus::grammars()) {
    Grammar c = to_cnf(g);
    EXPECT_TRUE(is_cnf(c)) << name;
    EXPECT_EQ(generate_bounded(c, 6), generate_bounded(g, 6)) << name;
  }
}

TEST(Cyk, Examples) {
  Grammar cnf = to_cnf(fixtures::grammar_g());
  EXPECT_TRUE(cyk(cnf, parse_word("a,a^-1")));
  EXPECT_TRUE(cyk(cnf, Word{}));
  EXPECT_FALSE(cyk(cnf, parse_word("a,b")));
  EXPECT_EQ(generate_bounded(fixtures::anbn_grammar(), 4), language({"", "ab", "aabb"}));
}

TEST(Cyk, ParseTreeYield) {
  CykParser p(to_cnf(fixtures::anbn_grammar()));
  auto t = p.parse(letters("aabb"));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->nodes[0].begin, 0u);
  EXPECT_EQ(t->nodes[0].length, 4u);
  EXPECT_FALSE(p.parse(letters("abab")));
}

TEST(Leftmost, SampleDerivation) {
  auto d = leftmost_derive(fixtures::grammar_g(), parse_word("a,b,b^-1,b^-1,b,a^-1"));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->steps.size(), 6u);
  std::vector<std::string> forms;
  for (const auto& f : d->forms) forms.push_back(format_form(f));
  EXPECT_EQ(forms, (std::vector<std::string>{"S", "a S a^-1", "a S S a^-1", "a b S b^-1 S a^-1", "a b b^-1 S a^-1",
                                             "a b b^-1 b^-1 S b a^-1", "a b b^-1 b^-1 b a^-1"}));
}

TEST(Leftmost, EdgeCases) {
  auto e = leftmost_derive(fixtures::grammar_g(), Word{});
  ASSERT_TRUE(e);
  EXPECT_EQ(e->steps.size(), 1u);
  EXPECT_FALSE(leftmost_derive(fixtures::grammar_g(), parse_word("a,b")));
}

TEST(LeftmostProperty, EveryStepRewritesTheLeftmostNonterminal) {
  auto g = fixtures::grammar_g();
  for (const char* s : {"a,a^-1", "a,b,b^-1,a^-1", "b^-1,b,a,a^-1"}) {
    auto d = leftmost_derive(g, parse_word(s));
    ASSERT_TRUE(d) << s;
    for (std::size_t i = 0; i < d->steps.size(); ++i) {
      const Form& before = d->forms[i];
      std::size_t pos = d->steps[i].position;
      for (std::size_t j = 0; j < pos; ++j) EXPECT_TRUE(g.is_terminal(before[j]));
      EXPECT_TRUE(g.is_nonterminal(before[pos]));
    }
    EXPECT_EQ(d->forms.back(), parse_word(s));
  }
}

TEST(CfgToPda, Languages) {
  PdaRecognizer r(cfg_to_pda(fixtures::anbn_normalized()));
  for (const auto& w : oracle::all_words(ab, 8)) EXPECT_EQ(r.accepts(w), oracle::is_anbn(w));
  Pda g = cfg_to_pda(normalize_rhs(fixtures::grammar_g()));
  for (const auto& w : oracle::all_words(oracle::rank2_letters(), 5))
    EXPECT_EQ(oracle::pda_simulate(g, w), oracle::reduce(w).empty()) << format_word(w);
  Pda eps = cfg_to_pda(parse_grammar("S -> eps\n"));
  EXPECT_TRUE(accepts(eps, Word{}));
  EXPECT_FALSE(oracle::pda_simulate(eps, letters("a")));
}

TEST(PdaToCfg, Languages) {
  EXPECT_EQ(generate_bounded(pda_to_cfg(fixtures::fig2()), 8), filter(ab, 8, [](const Word& w) { return oracle::is_anbn(w); }));
  Pda nfa = corpus::pdas()[1].pda;
  EXPECT_EQ(generate_bounded(pda_to_cfg(nfa), 5), filter(ab, 5, oracle::in_a_star_b_star));
  EXPECT_TRUE(generate_bounded(pda_to_cfg(Pda{}), 5).empty());
}

TEST(RoundTripProperty, GrammarsAndPdas) {
  for (const auto& [name, g] : corpus::grammars()) {
    Pda p = cfg_to_pda(normalize_rhs(g));
    EXPECT_EQ(generate_bounded(pda_to_cfg(p), 5), generate_bounded(g, 5)) << name;
  }
}

TEST(FreeGroupGrammar, Rank2Productions) {
  EXPECT_EQ(serialize_grammar(fixtures::grammar_g()),
            "start S\n"
            "terminals a a^-1 b b^-1\n"
            "nonterminals S\n"
            "S -> eps | S S | a S a^-1 | b S b^-1 | a^-1 S a | b^-1 S b\n");
}

TEST(FreeGroupGrammar, MatchesFreeReduction) {
  auto g = fixtures::grammar_g();
  EXPECT_EQ(generate_bounded(g, 6), filter(oracle::rank2_letters(), 6, [](const Word& w) { return oracle::reduce(w).empty(); }));
  auto g1 = free_group_wp_grammar(SymmetricAlphabet::standard({"a"}));
  std::vector<Symbol> sigma1{Symbol("a"), Symbol("a^-1")};
  EXPECT_EQ(generate_bounded(g1, 8), filter(sigma1, 8, [](const Word& w) { return oracle::reduce(w).empty(); }));
}
