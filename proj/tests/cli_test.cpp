#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "mfa/mfa.hpp"

using namespace mfa;

namespace {

struct Result {
  int code;
  std::string out, err;
};

std::string path(const std::string& name) { return std::string(MFA_DATA_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.starts_with("@")) a = path(a.substr(1));
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Examples) {
  auto r = run({"pda-accept", "@fig2.pda", "aabb"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "accept\n");
  r = run({"stack-accept", "@fig8.sa", "aabbcc", "--budget", "100000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "accept\n");
  r = run({"accept", "@fig1.aut", "ba"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "reject\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"accept", "@missing.aut", "a"}).code, 2);
  EXPECT_EQ(run({"demo", "nope"}).code, 2);
  EXPECT_EQ(run({"stack-accept", "@fig8.sa", "aaabbbccc", "--budget", "3"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MalformedFileReportsLine) {
  std::string bad = testing::TempDir() + "/bad.aut";
  {
    std::ofstream f(bad);
    f << "vertex a initial\nedge a x nowhere\n";
  }
  std::ostringstream out, err;
  EXPECT_EQ(cli::run({"accept", bad, "x"}, out, err), 2);
  EXPECT_NE(err.str().find("line 2"), std::string::npos) << err.str();
}

TEST(Cli, AdaptersMatchLibrary) {
  auto fig1 = fixtures::fig1();
  EXPECT_EQ(run({"det", "@fig1.aut"}).out, serialize_automaton(determinize(fig1).to_automaton()));
  EXPECT_EQ(run({"min", "@fig1.aut"}).out, serialize_automaton(minimize(determinize(fig1)).to_automaton()));
  EXPECT_EQ(run({"to-regex", "@fig1.aut"}).out, to_expression(fig1).to_string() + "\n");
  EXPECT_EQ(run({"to-dot", "@fig1.aut"}).out, to_dot(fig1));
  EXPECT_EQ(run({"--format", "dot", "det", "@fig1.aut"}).out, to_dot(determinize(fig1).to_automaton()));
  EXPECT_EQ(run({"pda2cfg", "@fig2.pda"}).out, serialize_grammar(pda_to_cfg(fixtures::fig2())));
  EXPECT_EQ(run({"cfg2pda", "@anbn.cfg"}).out,
            serialize_automaton(cfg_to_pda(normalize_rhs(fixtures::anbn_grammar())).graph));
  EXPECT_EQ(run({"wp-finite", "@z3.grp"}).out, serialize_automaton(wp_dfa(fixtures::z3()).to_automaton()));
  auto swap = parse_transducer(read_file(path("swap.td")));
  EXPECT_EQ(run({"invert", "@swap.td"}).out, serialize_automaton(inverse(swap).graph));
  auto dbl = parse_transducer(read_file(path("double.td")));
  EXPECT_EQ(run({"compose", "@double.td", "@swap.td"}).out, serialize_automaton(compose(dbl, swap).graph));
  EXPECT_EQ(run({"pda-star", "@fig2.pda"}).out, serialize_automaton(combine_cf(CfCombine::star, fixtures::fig2()).graph));
}

TEST(Cli, Decisions) {
  EXPECT_EQ(run({"equiv", "@ab.aut", "@ab.aut"}).out, "equivalent\n");
  auto diff = run({"equiv", "@ab.aut", "@ba.aut"});
  EXPECT_EQ(diff.code, 1);
  EXPECT_EQ(diff.out.rfind("different ", 0), 0u);
  EXPECT_EQ(run({"cfg-accept", "@g.cfg", "a,b,b^-1,a^-1"}).code, 0);
  EXPECT_EQ(run({"cfg-accept", "@g.cfg", "a,b"}).code, 1);
  EXPECT_EQ(run({"family-accept", "@fig2.pda", "aabb"}).out, "accept\n");
  EXPECT_EQ(run({"family-accept", "@fig2.pda", "aab"}).code, 1);
  EXPECT_EQ(run({"family-accept", "--monoid", "trivial", "@even.fam", "abab"}).code, 0);
  EXPECT_EQ(run({"family-accept", "--monoid", "msa", "@fig8.sa", "abc"}).code, 0);
  EXPECT_EQ(run({"wp-finite", "@z3.grp", "aaa"}).code, 0);
  EXPECT_EQ(run({"wp-finite", "@z3.grp", "aa"}).code, 1);
  EXPECT_EQ(run({"schreier-rewrite", "@mod2.sch", "a,b,a^-1,b^-1"}).code, 1);
  EXPECT_EQ(run({"schreier-rewrite", "@mod2.sch", "a,b,b^-1,a^-1"}).code, 0);
}

TEST(Cli, Listings) {
  EXPECT_EQ(run({"cfg-gen", "@anbn.cfg", "4"}).out, "_\na,b\na,a,b,b\n");
  EXPECT_EQ(run({"apply", "@double.td", "ab", "--list", "4"}).out, "a,a,b\n");
  EXPECT_EQ(run({"subgroup-gens", "@ab_star.aut"}).out, "a\na,b,a^-1\n");
  EXPECT_EQ(run({"howson", "a,a", "a,a,a"}).out, "a,a,a,a,a,a\na^-1,a^-1,a^-1,a^-1,a^-1,a^-1\n");
  EXPECT_EQ(run({"howson", "a", "b"}).out, "trivial\n");
  auto pump = run({"pump", "@fig1.aut", "aaab"});
  EXPECT_EQ(pump.code, 0);
  EXPECT_EQ(run({"pump", "@fig1.aut", "ab"}).code, 1);
  auto cfl = run({"cfl-pump", "@anbn.cfg", "aaaabbbb"});
  EXPECT_EQ(cfl.code, 0);
  EXPECT_EQ(cfl.out, "a,a | a | a,b | b | b,b\n");
  auto leftmost = run({"leftmost", "@g.cfg", "a,b,b^-1,b^-1,b,a^-1"});
  EXPECT_EQ(leftmost.code, 0);
  EXPECT_NE(leftmost.out.find("=> a b b^-1 b^-1 b a^-1"), std::string::npos);
  auto dyck = run({"dyck", "P:d,P:e,Q:e,Q:d"});
  EXPECT_EQ(dyck.out, "wrap [0,4)\n  wrap [1,3)\nsubword [1,3)\n");
  EXPECT_EQ(run({"dyck", "P:d,Q:e"}).code, 1);
}

TEST(Cli, Demos) {
  for (const char* d : {"fig1", "fig2", "fig8", "grammar-G", "howson"}) {
    auto r = run({"demo", d});
    EXPECT_EQ(r.code, 0) << d << "\n" << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
}

TEST(Cli, WorkspaceNamesAreUnique) {
  cli::Workspace ws;
  ws.load(path("fig1.aut"));
  EXPECT_NO_THROW(ws.load(path("fig1.aut")));
  std::string other = testing::TempDir() + "/fig1.aut";
  {
    std::ofstream f(other);
    f << read_file(path("fig1.aut"));
  }
  EXPECT_THROW(ws.load(other), Error);
}
