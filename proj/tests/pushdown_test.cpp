#include <gtest/gtest.h>

#include "corpus.hpp"
#include "mfa/mfa.hpp"
#include "oracles.hpp"

using namespace mfa;

namespace {

Word anbn(std::size_t n, const char* a = "a", const char* b = "b") {
  return concat(power(letters(a), n), power(letters(b), n));
}

Pda cndn() {
  return parse_pda("vertex q0 initial\nvertex q1 terminal\nedge q0 (P:d|c) q0\nedge q0 (1|_) q1\nedge q1 (Q:d|d) q1\n");
}

StackGenerator P(const char* s) { return {true, Symbol(s)}; }
StackGenerator Q(const char* s) { return {false, Symbol(s)}; }

}  // namespace

TEST(DeAccelerate, OneStepIsFixpoint) {
  EXPECT_TRUE(is_one_step(fixtures::fig2()));
  Pda d = de_accelerate(fixtures::fig2());
  EXPECT_EQ(d.graph.vertex_count(), fixtures::fig2().graph.vertex_count());
  EXPECT_EQ(d.graph.edge_count(), fixtures::fig2().graph.edge_count());
}

TEST(DeAccelerate, SplitsIntoChain) {
  Pda p = parse_pda("vertex s initial\nvertex t terminal\nedge s (P:d,e|a,b) t\n");
  EXPECT_FALSE(is_one_step(p));
  Pda d = de_accelerate(p);
  EXPECT_TRUE(is_one_step(d));
  ASSERT_EQ(d.graph.edge_count(), 4u);
  std::vector<PdaLabel> chain;
  VertexId v = d.graph.initial();
  while (!d.graph.out_edges(v).empty()) {
    const auto& e = d.graph.edge(d.graph.out_edges(v)[0]);
    chain.push_back(e.label);
    v = e.target;
  }
  std::vector<PdaLabel> expected{{StackAction::pushing(Symbol("d")), {}},
                                 {StackAction::pushing(Symbol("e")), {}},
                                 {StackAction::one(), letters("a")},
                                 {StackAction::one(), letters("b")}};
  EXPECT_EQ(chain, expected);
  EXPECT_EQ(enumerate_labels(d.graph, 4), enumerate_labels(p.graph, 4));
}

TEST(PdaAccepts, Fig2) {
  EXPECT_TRUE(accepts(fixtures::fig2(), letters("aaabbb")));
  EXPECT_FALSE(accepts(fixtures::fig2(), letters("aabbb")));
  EXPECT_TRUE(accepts(fixtures::fig2(), Word{}));
}

TEST(PdaAcceptsProperty, AgreesWithSimulation) {
  for (const auto& [name, p] : corpus::pdas()) {
    PdaRecognizer r(p);
    auto sigma = p.input_alphabet();
    for (const auto& w : oracle::all_words({sigma.begin(), sigma.end()}, 6))
      EXPECT_EQ(r.accepts(w), oracle::pda_simulate(p, w)) << name << " " << format_word(w);
  }
}

TEST(CombineCf, Product) {
  Pda second = cndn();
  Pda cat = combine_cf(CfCombine::product, fixtures::fig2(), &second);
  PdaRecognizer r(cat);
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m) EXPECT_TRUE(r.accepts(concat(anbn(n), anbn(m, "c", "d"))));
  EXPECT_FALSE(r.accepts(letters("aabcdd")));
  EXPECT_FALSE(r.accepts(letters("cdab")));
}

TEST(CombineCf, Star) {
  PdaRecognizer r(combine_cf(CfCombine::star, fixtures::fig2()));
  EXPECT_TRUE(r.accepts(letters("abaabb")));
  EXPECT_TRUE(r.accepts(Word{}));
  EXPECT_FALSE(r.accepts(letters("abba")));
  EXPECT_FALSE(r.accepts(letters("aab")));
}

TEST(CombineCf, UnionWithEmpty) {
  Pda empty{};
  PdaRecognizer u(combine_cf(CfCombine::union_of, fixtures::fig2(), &empty));
  PdaRecognizer f(fixtures::fig2());
  for (const auto& w : oracle::all_words({Symbol("a"), Symbol("b")}, 6)) EXPECT_EQ(u.accepts(w), f.accepts(w));
}

TEST(Dyck, Cases) {
  std::vector<StackGenerator> pq{P("d"), Q("d")};
  auto a = dyck_analyze(pq);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->nodes[0].kind, DyckAnalysis::Kind::wrap);
  EXPECT_EQ(a->nodes[0].length, 2u);

  std::vector<StackGenerator> nested{P("d"), P("e"), Q("e"), Q("d")};
  auto b = dyck_analyze(nested);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->nodes[0].kind, DyckAnalysis::Kind::wrap);
  EXPECT_EQ(b->long_subword, (std::pair<std::size_t, std::size_t>{1, 2}));

  std::vector<StackGenerator> split{P("d"), Q("d"), P("e"), P("e"), Q("e"), Q("e")};
  auto c = dyck_analyze(split);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->nodes[0].kind, DyckAnalysis::Kind::split);
  EXPECT_EQ(c->long_subword, (std::pair<std::size_t, std::size_t>{2, 4}));

  std::vector<StackGenerator> bad{P("d"), Q("e")};
  EXPECT_FALSE(dyck_analyze(bad));
  std::vector<StackGenerator> backwards{Q("d"), P("d")};
  EXPECT_FALSE(dyck_analyze(backwards));
}

TEST(DyckProperty, MatchesBracketCheckUpToSix) {
  const std::vector<StackGenerator> gens{P("d"), Q("d"), P("e"), Q("e")};
  std::vector<std::vector<StackGenerator>> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto w = words[i];
    bool one = oracle::balanced(w);
    EXPECT_EQ(dyck_analyze(w).has_value(), one);
    EXPECT_EQ(evaluate(w).is_one(), one);
    if (w.size() < 6)
      for (const auto& g : gens) {
        auto x = w;
        x.push_back(g);
        words.push_back(std::move(x));
      }
  }
}

TEST(CflPump, AnBn) {
  auto p = pump_cfl(fixtures::anbn_grammar(), anbn(4));
  EXPECT_FALSE(p.v.empty());
  EXPECT_EQ(p.v.size(), p.x.size());
  EXPECT_EQ(p.v, power(letters("a"), p.v.size()));
  EXPECT_EQ(p.x, power(letters("b"), p.x.size()));
  for (std::size_t i = 0; i <= 3; ++i) EXPECT_TRUE(oracle::is_anbn(p.pumped(i)));
  EXPECT_THROW(pump_cfl(fixtures::anbn_grammar(), letters("aab")), Error);
}

TEST(CflPumpProperty, CorpusSplitsPump) {
  for (const auto& [name, g] : corpus::grammars()) {
    CykParser parser(to_cnf(g));
    for (const auto& z : generate_bounded(g, 6)) {
      if (z.size() < 4) continue;
      CflPump p;
      try {
        p = pump_cfl(g, z);
      } catch (const Error&) {
        continue;
      }
      EXPECT_TRUE(parser.accepts(p.pumped(0))) << name << " " << format_word(z);
      EXPECT_LE(p.v.size() + p.w.size() + p.x.size(), p.k);
    }
  }
}

TEST(CflPump, AnBnCnHasNoDecomposition) {
  for (std::size_t k = 1; k <= 5; ++k) {
    Word z = concat(anbn(k), power(letters("c"), k));
    EXPECT_FALSE(find_cfl_pumping(z, k, oracle::is_anbncn).has_value()) << k;
  }
  EXPECT_TRUE(find_cfl_pumping(anbn(2), 2, [](const Word& w) { return oracle::is_anbn(w); }).has_value());
}
