#pragma once

#include <deque>
#include <functional>
#include <set>
#include <tuple>
#include <utility>

#include "mfa/automaton.hpp"
#include "mfa/transducer.hpp"

namespace mfa {

/// An automaton over M x Sigma* read as a language acceptor: w is accepted
/// when some successful path is labelled (m, w) with m in the accept set.
template <LabelMonoid M>
struct FamilyAcceptor {
  Automaton<std::pair<M, Word>> graph;
  std::function<bool(const M&)> accept;
};

enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "accept";
    case Verdict::no: return "reject";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct SearchStats {
  std::size_t expanded = 0;
};

/// Breadth-first search over (vertex, input position, monoid value) with a
/// visited set. `no` is only reported after the reachable space has been
/// exhausted; hitting `budget` expansions yields `unknown`. Values that are
/// the monoid's zero are dropped unless `prune_zero` is off.
template <LabelMonoid M>
Verdict accepts_bounded(const FamilyAcceptor<M>& f, const Word& w, std::size_t budget, bool prune_zero = true,
                        SearchStats* stats = nullptr) {
  if (f.graph.empty()) return Verdict::no;
  using State = std::tuple<VertexId, std::size_t, M>;
  std::set<State> seen;
  std::deque<State> queue;
  State start{f.graph.initial(), 0, unit_of<M>()};
  seen.insert(start);
  queue.push_back(start);
  std::size_t expanded = 0;
  Verdict verdict = Verdict::no;
  while (!queue.empty()) {
    if (expanded >= budget) {
      verdict = Verdict::unknown;
      break;
    }
    auto [v, pos, value] = std::move(queue.front());
    queue.pop_front();
    ++expanded;
    if (pos == w.size() && f.graph.is_terminal(v) && f.accept(value)) {
      verdict = Verdict::yes;
      break;
    }
    for (std::size_t e : f.graph.out_edges(v)) {
      const auto& edge = f.graph.edge(e);
      const Word& part = edge.label.second;
      if (!starts_with_at(w, pos, part)) continue;
      M next = multiply(value, edge.label.first);
      if (prune_zero && monoid_traits<M>::is_zero(next)) continue;
      State s{edge.target, pos + part.size(), std::move(next)};
      if (seen.insert(s).second) queue.push_back(std::move(s));
    }
  }
  if (stats) stats->expanded = expanded;
  return verdict;
}

/// L as the image of the accept set under {x} x L: a leading (x, eps) edge
/// followed by L with unit monoid components.
template <LabelMonoid M>
FamilyAcceptor<M> embed_rational(const Automaton<Word>& lang, const M& x, std::function<bool(const M&)> accept) {
  using P = std::pair<M, Word>;
  Automaton<P> g;
  VertexId start = g.add_vertex("embed");
  g.set_initial(start);
  if (!lang.empty()) {
    VertexId off = g.absorb_vertices(lang);
    g.add_edge(start, P{x, Word{}}, off + lang.initial());
    for (const auto& e : lang.edges()) g.add_edge(off + e.source, P{unit_of<M>(), e.label}, off + e.target);
    for (VertexId t : lang.terminals()) g.set_terminal(off + t);
  }
  return {std::move(g), std::move(accept)};
}

/// Union at a fresh initial vertex. Both acceptors are assumed to share the
/// same accept set; the first one's predicate is kept.
template <LabelMonoid M>
FamilyAcceptor<M> family_union(const FamilyAcceptor<M>& f, const FamilyAcceptor<M>& g) {
  return {combine(Combine::union_of, f.graph, &g.graph), f.accept};
}

/// Image of the accepted language under a transduction: the relation of f
/// composed with tau, lifted to M x Sigma* labels.
template <LabelMonoid M>
FamilyAcceptor<M> family_transduce(const FamilyAcceptor<M>& f, const Transducer& tau) {
  std::set<Symbol> sigma;
  for (const auto& e : f.graph.edges()) sigma.insert(e.label.second.begin(), e.label.second.end());
  for (Symbol s : sigma)
    if (!tau.input_alphabet.contains(s))
      throw AlphabetMismatch("transduce: letter '" + s.name() + "' is not in the transducer's input alphabet");
  return {compose_relations<M>(f.graph, tau.graph), f.accept};
}

enum class FamilyCombine { union_of, transduce };

/// Union / transduction closure; the argument matching `kind` must be set.
template <LabelMonoid M>
FamilyAcceptor<M> closure_combine(FamilyCombine kind, const FamilyAcceptor<M>& f, const FamilyAcceptor<M>* other,
                                  const Transducer* tau) {
  if (kind == FamilyCombine::union_of) {
    if (!other) throw Error("closure_combine: union needs a second acceptor");
    return family_union(f, *other);
  }
  if (!tau) throw Error("closure_combine: transduce needs a transducer");
  return family_transduce(f, *tau);
}

}  // namespace mfa
