#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mfa/automaton.hpp"
#include "mfa/dfa.hpp"

namespace mfa {

/// Rational relation between free monoids, as an automaton over pairs of
/// words, together with its input and output alphabets.
struct Transducer {
  Automaton<WordPair> graph;
  std::set<Symbol> input_alphabet;
  std::set<Symbol> output_alphabet;

  /// Alphabets are taken from the labels when not given.
  static Transducer from(Automaton<WordPair> g) {
    Transducer t{std::move(g), {}, {}};
    for (const auto& e : t.graph.edges()) {
      t.input_alphabet.insert(e.label.first.begin(), e.label.first.end());
      t.output_alphabet.insert(e.label.second.begin(), e.label.second.end());
    }
    return t;
  }
};

inline std::set<Symbol> letters_of(const Automaton<Word>& aut) {
  std::set<Symbol> s;
  for (const auto& e : aut.edges()) s.insert(e.label.begin(), e.label.end());
  return s;
}

/// Pairs (w, v) with |w| <= max_left and |v| <= max_right.
inline std::set<WordPair> enumerate_relation(const Transducer& t, std::size_t max_left, std::size_t max_right) {
  return enumerate_within<WordPair>(t.graph, [=](const WordPair& p) {
    return p.first.size() <= max_left && p.second.size() <= max_right;
  });
}

inline Transducer inverse(const Transducer& t) {
  auto g = map_labels(t.graph, [](const WordPair& p) { return WordPair{p.second, p.first}; });
  return {std::move(g), t.output_alphabet, t.input_alphabet};
}

/// {(w, w) : w in L}: each a-edge becomes an (a, a)-edge.
inline Transducer identity_on(const Automaton<Word>& lang) {
  auto g = map_labels(lang, [](const Word& w) { return WordPair{w, w}; });
  auto sigma = letters_of(lang);
  return {std::move(g), sigma, sigma};
}

/// L x L' as the product (L x {eps})({eps} x L').
inline Transducer cross(const Automaton<Word>& left, const Automaton<Word>& right) {
  auto l = map_labels(left, [](const Word& w) { return WordPair{w, {}}; });
  auto r = map_labels(right, [](const Word& w) { return WordPair{{}, w}; });
  return {combine(Combine::product, l, &r), letters_of(left), letters_of(right)};
}

/// Partial homomorphism given on generators m_i of its domain:
/// {(m_1, m_1 rho), ..., (m_k, m_k rho)}*, as a single-vertex flower.
inline Transducer partial_hom(const std::vector<WordPair>& assignments) {
  Automaton<WordPair> g;
  VertexId v = g.add_vertex("h");
  g.set_initial(v);
  g.set_terminal(v);
  for (const auto& p : assignments) g.add_edge(v, p, v);
  return Transducer::from(std::move(g));
}

namespace detail {

template <class A>
std::vector<A> left_factors(const A& a) {
  if (is_unit(a)) return {};
  return {a};
}

template <>
inline std::vector<Word> left_factors<Word>(const Word& w) {
  std::vector<Word> out;
  for (Symbol s : w) out.push_back(Word{s});
  return out;
}

}  // namespace detail

/// Splits each edge (u, v) with more than one factor on a side into a chain
/// alternating left factors and right letters, left first, so every label
/// carries at most one generator per side.
template <LabelMonoid A>
Automaton<std::pair<A, Word>> one_step(const Automaton<std::pair<A, Word>>& aut) {
  using P = std::pair<A, Word>;
  Automaton<P> out;
  out.absorb_vertices(aut);
  if (aut.empty()) return out;
  out.set_initial(aut.initial());
  for (VertexId t : aut.terminals()) out.set_terminal(t);
  for (const auto& e : aut.edges()) {
    auto lefts = detail::left_factors(e.label.first);
    const Word& right = e.label.second;
    if (lefts.size() <= 1 && right.size() <= 1) {
      out.add_edge(e.source, e.label, e.target);
      continue;
    }
    std::vector<P> chain;
    for (std::size_t i = 0; i < std::max(lefts.size(), right.size()); ++i) {
      if (i < lefts.size()) chain.push_back({lefts[i], Word{}});
      if (i < right.size()) chain.push_back({unit_of<A>(), Word{right[i]}});
    }
    VertexId cur = e.source;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      VertexId mid = out.add_vertex();
      out.add_edge(cur, chain[i], mid);
      cur = mid;
    }
    out.add_edge(cur, chain.back(), e.target);
  }
  return out;
}

/// Composite of rho (A x Sigma*) with tau (Sigma* x Delta*). Both sides are
/// brought to one-step form, given padding loops (1, eps) / (eps, eps) on
/// copies, and combined by the pair-vertex product construction: an edge
/// (p,q) -(a,c)-> (p',q') for each rho edge p -(a,b)-> p' and tau edge
/// q -(b,c)-> q' agreeing on b in Sigma u {eps}.
template <LabelMonoid A>
Automaton<std::pair<A, Word>> compose_relations(const Automaton<std::pair<A, Word>>& rho_in,
                                                const Automaton<WordPair>& tau_in) {
  using P = std::pair<A, Word>;
  Automaton<P> result;
  if (rho_in.empty() || tau_in.empty()) {
    result.set_initial(result.add_vertex("start"));
    return result;
  }
  auto rho = one_step(rho_in);
  auto tau = one_step(tau_in);
  for (VertexId v = 0; v < rho.vertex_count(); ++v) rho.add_edge(v, P{unit_of<A>(), Word{}}, v);
  for (VertexId v = 0; v < tau.vertex_count(); ++v) tau.add_edge(v, WordPair{}, v);
  const std::size_t rho_pad = rho.edge_count() - rho.vertex_count();
  const std::size_t tau_pad = tau.edge_count() - tau.vertex_count();

  std::map<std::pair<VertexId, VertexId>, VertexId> index;
  std::vector<std::pair<VertexId, VertexId>> states;
  auto intern = [&](VertexId p, VertexId q) {
    auto [it, inserted] = index.try_emplace({p, q}, 0);
    if (inserted) {
      it->second = result.add_vertex("(" + rho.name(p) + "," + tau.name(q) + ")");
      states.push_back({p, q});
      if (rho.is_terminal(p) && tau.is_terminal(q)) result.set_terminal(it->second);
    }
    return it->second;
  };
  result.set_initial(intern(rho.initial(), tau.initial()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    VertexId from = index.at({p, q});
    for (std::size_t re : rho.out_edges(p)) {
      const auto& r = rho.edge(re);
      for (std::size_t te : tau.out_edges(q)) {
        const auto& t = tau.edge(te);
        if (re >= rho_pad && te >= tau_pad) continue;  // both padding: a useless unit loop
        if (r.label.second != t.label.first) continue;
        VertexId to = intern(r.target, t.target);
        result.add_edge(from, P{r.label.first, t.label.second}, to);
      }
    }
  }
  return trim(result);
}

inline Transducer compose(const Transducer& rho, const Transducer& tau) {
  for (Symbol s : rho.output_alphabet)
    if (!tau.input_alphabet.contains(s))
      throw AlphabetMismatch("compose: letter '" + s.name() + "' of the middle alphabet is unknown to the second transducer");
  return {compose_relations<Word>(rho.graph, tau.graph), rho.input_alphabet, tau.output_alphabet};
}

/// L restricted to letters of `keep`: edges using other letters can never
/// contribute to an image and are dropped.
inline Automaton<Word> restrict_letters(const Automaton<Word>& lang, const std::set<Symbol>& keep) {
  Automaton<Word> out;
  out.absorb_vertices(lang);
  if (lang.empty()) return out;
  out.set_initial(lang.initial());
  for (VertexId t : lang.terminals()) out.set_terminal(t);
  for (const auto& e : lang.edges()) {
    bool ok = true;
    for (Symbol s : e.label) ok = ok && keep.contains(s);
    if (ok) out.add_edge(e.source, e.label, e.target);
  }
  return out;
}

/// L rho, the second projection of the composite of the identity on L with rho.
inline Automaton<Word> image(const Automaton<Word>& lang, const Transducer& t) {
  Transducer id = identity_on(restrict_letters(lang, t.input_alphabet));
  id.input_alphabet = id.output_alphabet = t.input_alphabet;
  Transducer c = compose(id, t);
  return trim(map_labels(c.graph, [](const WordPair& p) { return p.second; }));
}

/// L intersected with the language of R, as the image of L under the
/// identity relation on R.
inline Automaton<Word> intersect_rational(const Automaton<Word>& lang, const Dfa& r) {
  return image(lang, identity_on(r.to_automaton()));
}

}  // namespace mfa
