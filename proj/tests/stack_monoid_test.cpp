#include <gtest/gtest.h>

#include <random>

#include "mfa/mfa.hpp"
#include "oracles.hpp"

using namespace mfa;

namespace {

const Symbol d("d"), e("e"), f("f");

StackAction P(const char* w) { return StackAction::pushing(letters(w)); }
StackAction Q(const char* w) { return StackAction::popping(letters(w)); }

}  // namespace

TEST(StackAction, AppliesAsPartialFunction) {
  EXPECT_EQ(apply_action(P("d"), Word{}), Word{d});
  EXPECT_EQ(apply_action(Q("e"), letters("de")), Word{d});
  EXPECT_EQ(apply_action(Q("e"), letters("ed")), std::nullopt);
  ReadStackAction qep{false, {d}, true, {e}};
  EXPECT_EQ(apply_action(qep, Word{d}), Word{e});
  EXPECT_EQ(apply_action(qep, letters("ed")), std::nullopt);
}

TEST(StackAction, McfRules) {
  EXPECT_TRUE(mcf_multiply(P("d"), Q("d")).is_one());
  EXPECT_EQ(mcf_multiply(Q("d"), Q("e")), Q("ed"));
  EXPECT_TRUE(mcf_multiply(P("d"), Q("e")).zero);
  EXPECT_EQ(mcf_multiply(P("de"), Q("e")), P("d"));
  EXPECT_EQ(mcf_multiply(P("d"), Q("ed")), Q("e"));
  EXPECT_EQ(mcf_multiply(StackAction::one(), P("d")), P("d"));
}

TEST(StackAction, M1Rules) {
  ReadStackAction qdepe{false, {d}, true, {e}}, qeepf{false, {e}, true, {f}}, qdepf{false, {d}, true, {f}};
  EXPECT_EQ(m1_multiply(qdepe, qeepf), qdepf);
  ReadStackAction w{false, letters("dd"), true, letters("de")};
  EXPECT_EQ(m1_multiply(ReadStackAction::one(), w), w);
  // Popping something unrelated to what was pushed after the barrier.
  ReadStackAction qpy{false, letters("ee"), false, {f}};
  EXPECT_TRUE(m1_multiply(w, qpy).zero);
  EXPECT_TRUE(m1_multiply(ReadStackAction::empty_test(), ReadStackAction::empty_test()).is_empty_test());
}

TEST(StackAction, PairRules) {
  auto ep = StackPairAction::make(ReadStackAction::empty_test(), ReadStackAction::pushing(d));
  auto pq = StackPairAction::make(ReadStackAction::pushing(d), ReadStackAction::popping(d));
  auto prod = msa_multiply(ep, pq);
  EXPECT_EQ(prod.down, (ReadStackAction{false, {}, true, {d}}));
  EXPECT_TRUE(prod.up.is_one());
  for (const auto& g : msa_generators({d, e})) {
    EXPECT_EQ(msa_multiply(StackPairAction::one(), g), g);
    EXPECT_EQ(msa_multiply(g, StackPairAction::one()), g);
  }
  EXPECT_TRUE(StackPairAction::make(ReadStackAction::null(), ReadStackAction::one()).is_zero());
}

TEST(StackAction, MiddleEntryIsBarrierIffCountsMatch) {
  for (std::size_t j = 0; j <= 4; ++j)
    for (std::size_t k = 0; k <= 4; ++k) {
      ReadStackAction x = ReadStackAction::empty_test();
      for (std::size_t i = 0; i < j; ++i) x = m1_multiply(x, ReadStackAction::pushing(d));
      for (std::size_t i = 0; i < k; ++i) x = m1_multiply(x, ReadStackAction::popping(d));
      x = m1_multiply(x, ReadStackAction::empty_test());
      EXPECT_EQ(x.is_empty_test(), j == k) << j << " " << k;
    }
}

TEST(StackAction, FormatParseRoundTrip) {
  for (const char* s : {"1", "0", "P:d", "Q:d,e", "Q:d.P:e", "Q:d.E.P:e,f", "E"}) {
    EXPECT_EQ(format_action(parse_read_action(s)), s);
  }
  EXPECT_EQ(format_action(parse_stack_action("Q:d.P:e")), "Q:d.P:e");
  EXPECT_THROW(parse_stack_action("E"), Error);
}

TEST(StackActionProperty, McfMatchesPartialFunctions) {
  std::mt19937 rng(7);
  const std::vector<Symbol> sigma{d, e};
  auto probes = oracle::stacks(sigma, 9);
  for (int i = 0; i < 300; ++i) {
    StackAction x{false, oracle::random_word(rng, sigma, 4), oracle::random_word(rng, sigma, 4)};
    StackAction y{false, oracle::random_word(rng, sigma, 4), oracle::random_word(rng, sigma, 4)};
    ASSERT_TRUE(oracle::composition_matches(x, y, mcf_multiply(x, y), probes));
  }
}

TEST(StackActionProperty, M1MatchesPartialFunctionsAndIsAssociative) {
  std::mt19937 rng(11);
  std::bernoulli_distribution coin(0.5);
  const std::vector<Symbol> sigma{d, e};
  auto probes = oracle::stacks(sigma, 9);
  auto gen = [&] {
    return ReadStackAction{false, oracle::random_word(rng, sigma, 4), coin(rng), oracle::random_word(rng, sigma, 4)};
  };
  for (int i = 0; i < 300; ++i) {
    auto x = gen(), y = gen(), z = gen();
    ASSERT_TRUE(oracle::composition_matches(x, y, m1_multiply(x, y), probes));
    ASSERT_EQ(m1_multiply(m1_multiply(x, y), z), m1_multiply(x, m1_multiply(y, z)));
  }
}

TEST(StackActionProperty, ZeroAbsorbs) {
  auto z = StackAction::null();
  for (const auto& x : {P("d"), Q("de"), StackAction::one()}) {
    EXPECT_TRUE(mcf_multiply(z, x).zero);
    EXPECT_TRUE(mcf_multiply(x, z).zero);
  }
}
