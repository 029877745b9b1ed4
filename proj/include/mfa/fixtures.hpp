#pragma once

#include <string>
#include <vector>

#include "mfa/group.hpp"
#include "mfa/io.hpp"
#include "mfa/pda.hpp"

// Worked examples as in-memory values. The same objects are stored as
// text under data/.
namespace mfa::fixtures {

namespace detail {

template <LabelMonoid L>
struct Builder {
  Automaton<L> aut;
  VertexId v(const std::string& name) {
    auto found = aut.find_vertex(name);
    return found ? *found : aut.add_vertex(name);
  }
  Builder& edge(const std::string& from, const std::string& label, const std::string& to) {
    VertexId a = v(from), b = v(to);
    aut.add_edge(a, parse_label<L>(label), b);
    return *this;
  }
};

}  // namespace detail

/// a*b*: v0 (initial, terminal) with loop a, v0 -b-> v1, loop b at v1,
/// v1 terminal.
inline Automaton<Word> fig1() {
  detail::Builder<Word> b;
  b.v("v0");
  b.v("v1");
  b.edge("v0", "a", "v0").edge("v0", "b", "v1").edge("v1", "b", "v1");
  b.aut.set_initial(0);
  b.aut.set_terminal(0);
  b.aut.set_terminal(1);
  return b.aut;
}

/// {a^n b^n}: loop (P_d, a) at q0, q0 -(1, eps)-> q1, loop (Q_d, b) at q1.
inline Pda fig2() {
  detail::Builder<PdaLabel> b;
  b.v("q0");
  b.v("q1");
  b.edge("q0", "(P:d|a)", "q0").edge("q0", "(1|_)", "q1").edge("q1", "(Q:d|b)", "q1");
  b.aut.set_initial(0);
  b.aut.set_terminal(1);
  return {b.aut};
}

/// {a^n b^n c^n} as an automaton over M_sa x Sigma*.
inline Automaton<StackAutomatonLabel> fig8() {
  detail::Builder<StackAutomatonLabel> b;
  b.edge("q0", "((E|P:e)|_)", "q1")
      .edge("q1", "((E|P:d)|a)", "q1")
      .edge("q1", "(1|_)", "q2")
      .edge("q2", "((P:d|Q:d)|b)", "q2")
      .edge("q2", "((P:e|Q:e)|_)", "q3")
      .edge("q3", "((Q:e|P:e)|_)", "q4")
      .edge("q4", "((Q:d|P:d)|c)", "q4")
      .edge("q4", "(1|_)", "q5")
      .edge("q5", "((E|Q:d)|_)", "q5")
      .edge("q5", "((E|Q:e)|_)", "q6");
  b.aut.set_initial(0);
  b.aut.set_terminal(*b.aut.find_vertex("q6"));
  return b.aut;
}

/// Accept set of stack automata: first component E, second 1.
inline bool stack_accepts(const StackPairAction& a) {
  return !a.is_zero() && a.down.is_empty_test() && a.up.is_one();
}

inline FamilyAcceptor<StackPairAction> fig8_acceptor() { return {fig8(), stack_accepts}; }

inline SymmetricAlphabet rank2() { return SymmetricAlphabet::standard({"a", "b"}); }

/// S -> eps | SS | a S a^-1 | b S b^-1 | a^-1 S a | b^-1 S b.
inline Grammar grammar_g() { return free_group_wp_grammar(rank2()); }

/// S -> eps | a S b.
inline Grammar anbn_grammar() { return parse_grammar("S -> eps | a S b\n"); }

/// The same language with right-hand sides normalized.
inline Grammar anbn_normalized() { return parse_grammar("S -> eps | A S B\nA -> a\nB -> b\n"); }

inline FiniteGroupTable z2() { return FiniteGroupTable::cyclic(2); }
inline FiniteGroupTable z3() { return FiniteGroupTable::cyclic(3, true); }
inline FiniteGroupTable s3() { return FiniteGroupTable::symmetric3(); }

/// Index-2 subgroup of F(a, b) of words with even a-exponent sum: cosets
/// H and Ha, a and a^-1 swap them, b and b^-1 fix both.
inline SchreierDiagram mod2_schreier() {
  return parse_schreier(
      "vertex H initial terminal\n"
      "vertex Ha\n"
      "edge H a Ha tree\n"
      "edge H a^-1 Ha\n"
      "edge H b H\n"
      "edge H b^-1 H\n"
      "edge Ha a H\n"
      "edge Ha a^-1 H\n"
      "edge Ha b Ha\n"
      "edge Ha b^-1 Ha\n");
}

/// a b* over F(a, b): p0 -a-> pt with a loop b at pt.
inline Automaton<Word> ab_star() {
  detail::Builder<Word> b;
  b.edge("p0", "a", "pt").edge("pt", "b", "pt");
  b.aut.set_initial(0);
  b.aut.set_terminal(1);
  return b.aut;
}

}  // namespace mfa::fixtures
