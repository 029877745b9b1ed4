#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfa/automaton.hpp"
#include "mfa/dfa.hpp"
#include "mfa/grammar.hpp"
#include "mfa/symmetric.hpp"
#include "mfa/transducer.hpp"

namespace mfa {

/// Multiply, invert, identity and equality: all the group structure the
/// subgroup constructions need.
template <class G>
concept ComputableGroup = requires(const G& g, const typename G::element_type& x) {
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.multiply(x, x) } -> std::convertible_to<typename G::element_type>;
  { g.invert(x) } -> std::convertible_to<typename G::element_type>;
  { x == x } -> std::convertible_to<bool>;
};

/// Free group on a symmetric alphabet, elements as freely reduced words.
struct FreeGroup {
  using element_type = Word;
  SymmetricAlphabet pairs;

  Word identity() const { return {}; }
  Word multiply(const Word& a, const Word& b) const { return free_multiply(a, b, pairs); }
  Word invert(const Word& a) const { return pairs.inverse(a); }
};

/// Finite group given by its multiplication table, with an assignment of
/// letters to elements.
class FiniteGroupTable {
 public:
  using element_type = std::size_t;

  FiniteGroupTable(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table,
                   std::map<Symbol, std::size_t> generators)
      : names_(std::move(elements)), table_(std::move(table)), gens_(std::move(generators)) {
    const std::size_t n = names_.size();
    if (n == 0) throw Error("group table: no elements");
    if (table_.size() != n) throw Error("group table: wrong number of rows");
    for (const auto& row : table_) {
      if (row.size() != n) throw Error("group table: wrong number of columns");
      for (auto x : row)
        if (x >= n) throw Error("group table: product out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw Error("group table: not associative at (" + names_[a] + "," + names_[b] + "," + names_[c] + ")");
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) id = e;
    }
    if (!id) throw Error("group table: no identity element");
    identity_ = *id;
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (inverse_[a] == n) throw Error("group table: element " + names_[a] + " has no inverse");
    for (const auto& [x, g] : gens_) {
      if (g >= n) throw Error("group table: generator '" + x.name() + "' assigned out of range");
      const std::string& nm = x.name();
      std::string partner = nm.ends_with("^-1") && nm.size() > 3 ? nm.substr(0, nm.size() - 3) : nm + "^-1";
      auto it = gens_.find(Symbol(partner));
      if (it != gens_.end() && it->second != inverse_[g])
        throw Error("group table: '" + nm + "' and '" + partner + "' are not assigned inverse elements");
    }
  }

  /// Z/n with a -> 1, and a^-1 -> n-1 when `symmetric`.
  static FiniteGroupTable cyclic(std::size_t n, bool symmetric = false) {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(i == 0 ? "e" : "a" + (i == 1 ? std::string() : std::to_string(i)));
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    std::map<Symbol, std::size_t> gens{{Symbol("a"), n > 1 ? 1 : 0}};
    if (symmetric) gens.emplace(Symbol("a^-1"), n > 1 ? n - 1 : 0);
    return FiniteGroupTable(std::move(names), std::move(t), std::move(gens));
  }

  /// S_3 generated by a 3-cycle a and a transposition b; elements are
  /// named by their shortlex-least words in a, b.
  static FiniteGroupTable symmetric3() {
    using Perm = std::array<int, 3>;
    auto compose = [](const Perm& x, const Perm& y) { return Perm{y[x[0]], y[x[1]], y[x[2]]}; };  // x then y
    const Perm id{0, 1, 2}, a{1, 2, 0}, b{1, 0, 2};
    std::vector<Perm> elems{id};
    std::vector<std::string> names{"e"};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (auto [g, c] : {std::pair{a, "a"}, std::pair{b, "b"}}) {
        Perm p = compose(elems[i], g);
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
          elems.push_back(p);
          names.push_back((names[i] == "e" ? std::string() : names[i]) + c);
        }
      }
    auto index = [&](const Perm& p) {
      return static_cast<std::size_t>(std::find(elems.begin(), elems.end(), p) - elems.begin());
    };
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) t[i][j] = index(compose(elems[i], elems[j]));
    return FiniteGroupTable(std::move(names), std::move(t), {{Symbol("a"), index(a)}, {Symbol("b"), index(b)}});
  }

  std::size_t order() const { return names_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }
  std::size_t invert(std::size_t a) const { return inverse_.at(a); }
  const std::string& element_name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::string>& element_names() const { return names_; }
  const std::map<Symbol, std::size_t>& generators() const { return gens_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  std::vector<Symbol> alphabet() const {
    std::vector<Symbol> out;
    for (const auto& [x, g] : gens_) out.push_back(x);
    std::sort(out.begin(), out.end(), name_less);
    return out;
  }

  std::size_t evaluate(const Word& w) const {
    std::size_t acc = identity_;
    for (Symbol x : w) {
      auto it = gens_.find(x);
      if (it == gens_.end()) throw AlphabetMismatch("letter '" + x.name() + "' has no group element");
      acc = multiply(acc, it->second);
    }
    return acc;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::map<Symbol, std::size_t> gens_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// States are the group elements; reading x multiplies on the right by its
/// element; the identity is initial and the only accepting state.
inline Dfa wp_dfa(const FiniteGroupTable& g) {
  auto sigma = g.alphabet();
  std::vector<std::vector<std::size_t>> next(g.order());
  for (std::size_t s = 0; s < g.order(); ++s)
    for (Symbol x : sigma) next[s].push_back(g.multiply(s, g.generators().at(x)));
  std::vector<bool> accepting(g.order(), false);
  accepting[g.identity()] = true;
  return Dfa(sigma, std::move(next), std::move(accepting), g.identity(), g.element_names());
}

/// Vertex count of the trimmed automaton: an upper bound for the order of
/// a group whose word problem it accepts.
inline std::size_t order_bound(const Automaton<Word>& wp) { return trim(wp).vertex_count(); }
inline std::size_t order_bound(const Dfa& wp) { return order_bound(wp.to_automaton()); }

/// Generators of the subgroup generated by the accepted set: the label z of
/// the spanning-tree path to the terminal, then x h y^-1 for each edge
/// p -h-> q off the tree, where x and y are the tree labels of p and q. The
/// tree is breadth-first from the initial vertex, edges taken by id.
/// Several terminals are first joined to one new terminal by identity edges.
template <ComputableGroup G>
std::vector<typename G::element_type> subgroup_generators(const Automaton<typename G::element_type>& input,
                                                          const G& group) {
  using E = typename G::element_type;
  if (input.empty()) return {};
  Automaton<E> aut = input;
  auto terms = aut.terminals();
  if (terms.size() > 1) {
    VertexId fin = aut.add_vertex("final");
    for (VertexId t : terms) {
      aut.add_edge(t, group.identity(), fin);
      aut.set_terminal(t, false);
    }
    aut.set_terminal(fin);
  }
  aut = trim(aut);
  auto terminal = aut.terminals();
  if (terminal.empty()) return {};

  std::vector<std::optional<E>> label(aut.vertex_count());
  std::vector<bool> tree_edge(aut.edge_count(), false);
  label[aut.initial()] = group.identity();
  std::deque<VertexId> queue{aut.initial()};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (std::size_t e : aut.out_edges(v)) {
      const auto& edge = aut.edge(e);
      if (label[edge.target]) continue;
      label[edge.target] = group.multiply(*label[v], edge.label);
      tree_edge[e] = true;
      queue.push_back(edge.target);
    }
  }
  std::vector<E> out{*label[terminal[0]]};
  for (std::size_t e = 0; e < aut.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    const auto& edge = aut.edge(e);
    out.push_back(group.multiply(group.multiply(*label[edge.source], edge.label), group.invert(*label[edge.target])));
  }
  return out;
}

/// Adds an empty edge p -> q whenever some path p -> q has a label that
/// freely reduces to the empty word (least fixpoint of: reflexive,
/// transitive, empty edges, and p -x-> r ~> s -x^-1-> q), then keeps only
/// freely reduced words by a product with the automaton remembering the
/// last letter read.
inline Automaton<Word> reduction_closure(const Automaton<Word>& input, const SymmetricAlphabet& pairs) {
  Automaton<Word> aut = split_letters(input);
  if (aut.empty()) return aut;
  const std::size_t n = aut.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) r[v][v] = true;
  for (const auto& e : aut.edges())
    if (e.label.empty()) r[e.source][e.target] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (r[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (r[k][j] && !r[i][j]) r[i][j] = changed = true;
    for (const auto& e1 : aut.edges()) {
      if (e1.label.empty()) continue;
      Symbol inv = pairs.inverse(e1.label[0]);
      for (const auto& e2 : aut.edges())
        if (e2.label.size() == 1 && e2.label[0] == inv && r[e1.target][e2.source] && !r[e1.source][e2.target])
          r[e1.source][e2.target] = changed = true;
    }
  }

  // Product with the reduced-word automaton; state = (vertex, last letter).
  Automaton<Word> out;
  std::map<std::pair<VertexId, Symbol>, VertexId> index;
  std::vector<std::pair<VertexId, Symbol>> states;
  auto intern = [&](VertexId v, Symbol last) {
    auto [it, fresh] = index.try_emplace({v, last}, 0);
    if (fresh) {
      it->second = out.add_vertex(aut.name(v) + (last.valid() ? "/" + last.name() : ""));
      states.push_back({v, last});
      if (aut.is_terminal(v)) out.set_terminal(it->second);
    }
    return it->second;
  };
  out.set_initial(intern(aut.initial(), Symbol{}));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [v, last] = states[i];
    VertexId from = index.at(states[i]);
    for (VertexId q = 0; q < n; ++q)
      if (q != v && r[v][q]) out.add_edge(from, Word{}, intern(q, last));
    for (std::size_t e : aut.out_edges(v)) {
      const auto& edge = aut.edge(e);
      if (edge.label.empty()) continue;
      Symbol x = edge.label[0];
      if (last.valid() && pairs.inverse(last) == x) continue;
      out.add_edge(from, edge.label, intern(edge.target, x));
    }
  }
  return trim(out);
}

/// Freely reduced words representing elements of the subgroup generated by
/// `gens`: the reduction closure of a one-vertex flower with a loop per
/// generator and per inverse.
inline Automaton<Word> subgroup_language(const std::vector<Word>& gens, const SymmetricAlphabet& pairs) {
  Automaton<Word> flower;
  VertexId o = flower.add_vertex("o");
  flower.set_initial(o);
  flower.set_terminal(o);
  for (const auto& g : gens) {
    if (g.empty()) continue;
    flower.add_edge(o, g, o);
    flower.add_edge(o, pairs.inverse(g), o);
  }
  return reduction_closure(flower, pairs);
}

/// Product of two automata with single-letter or empty labels; empty edges
/// move one side at a time.
inline Automaton<Word> intersect_epsilon(const Automaton<Word>& a, const Automaton<Word>& b) {
  Automaton<Word> out;
  if (a.empty() || b.empty()) {
    out.set_initial(out.add_vertex("start"));
    return out;
  }
  std::map<std::pair<VertexId, VertexId>, VertexId> index;
  std::vector<std::pair<VertexId, VertexId>> states;
  auto intern = [&](VertexId p, VertexId q) {
    auto [it, fresh] = index.try_emplace({p, q}, 0);
    if (fresh) {
      it->second = out.add_vertex("(" + a.name(p) + "," + b.name(q) + ")");
      states.push_back({p, q});
      if (a.is_terminal(p) && b.is_terminal(q)) out.set_terminal(it->second);
    }
    return it->second;
  };
  out.set_initial(intern(a.initial(), b.initial()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    VertexId from = index.at(states[i]);
    for (std::size_t e : a.out_edges(p)) {
      const auto& ea = a.edge(e);
      if (ea.label.empty()) {
        out.add_edge(from, Word{}, intern(ea.target, q));
        continue;
      }
      for (std::size_t f : b.out_edges(q)) {
        const auto& eb = b.edge(f);
        if (eb.label == ea.label) out.add_edge(from, ea.label, intern(ea.target, eb.target));
      }
    }
    for (std::size_t f : b.out_edges(q)) {
      const auto& eb = b.edge(f);
      if (eb.label.empty()) out.add_edge(from, Word{}, intern(p, eb.target));
    }
  }
  return trim(out);
}

/// Generators of the intersection of two finitely generated subgroups of a
/// free group: subgroup_generators over the product of their subgroup
/// languages, without trivial or repeated elements.
inline std::vector<Word> howson_intersection(const std::vector<Word>& gens1, const std::vector<Word>& gens2,
                                             const SymmetricAlphabet& pairs) {
  auto both = intersect_epsilon(subgroup_language(gens1, pairs), subgroup_language(gens2, pairs));
  std::vector<Word> out;
  for (auto& g : subgroup_generators(both, FreeGroup{pairs}))
    if (!g.empty() && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Schreier diagrams

/// Cosets of a subgroup H as vertices (the initial vertex is H itself),
/// one out-edge per coset and letter, and a spanning tree directed away
/// from H. Every edge off the tree carries a letter of the subgroup
/// alphabet; when the reverse edge (q -x^-1-> p) is also off the tree the
/// two letters are named d and d^-1, and when it is on the tree the letter
/// stands for the identity and is recorded in `trivial`.
struct SchreierDiagram {
  Automaton<Word> graph;
  std::set<std::size_t> tree;
  SymmetricAlphabet sigma;
  std::map<std::size_t, Symbol> delta;
  std::set<Symbol> trivial;

  static SchreierDiagram make(Automaton<Word> graph, std::set<std::size_t> tree, SymmetricAlphabet sigma) {
    SchreierDiagram d{std::move(graph), std::move(tree), std::move(sigma), {}, {}};
    d.validate();
    d.name_subgroup_letters();
    return d;
  }

  VertexId base() const { return graph.initial(); }

  std::optional<std::size_t> edge_from(VertexId v, Symbol x) const {
    for (std::size_t e : graph.out_edges(v))
      if (graph.edge(e).label == Word{x}) return e;
    return std::nullopt;
  }

  /// Letters of the subgroup alphabet other than the trivial ones, paired.
  SymmetricAlphabet subgroup_pairs() const {
    std::set<Symbol> letters;
    for (const auto& [e, d] : delta)
      if (!trivial.contains(d)) letters.insert(d);
    return SymmetricAlphabet::infer(letters);
  }

 private:
  void validate() const {
    if (graph.empty()) throw Error("schreier: no cosets");
    for (const auto& e : graph.edges())
      if (e.label.size() != 1 || !sigma.contains(e.label[0])) throw Error("schreier: edge labels must be single letters of the alphabet");
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
      for (Symbol x : sigma.letters()) {
        std::size_t count = 0;
        for (std::size_t e : graph.out_edges(v)) count += graph.edge(e).label[0] == x ? 1 : 0;
        if (count != 1)
          throw Error("schreier: coset " + graph.name(v) + " needs exactly one edge labelled " + x.name());
      }
    auto terms = graph.terminals();
    if (terms.size() != 1 || terms[0] != graph.initial()) throw Error("schreier: the base coset must be initial and the only terminal");
    std::vector<std::size_t> tree_in(graph.vertex_count(), 0);
    for (std::size_t e : tree) {
      if (e >= graph.edge_count()) throw Error("schreier: tree edge out of range");
      ++tree_in[graph.edge(e).target];
    }
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
      if (tree_in[v] != (v == graph.initial() ? 0u : 1u)) throw Error("schreier: tree edges do not form a spanning tree at " + graph.name(v));
    std::vector<bool> seen(graph.vertex_count(), false);
    std::vector<VertexId> stack{graph.initial()};
    seen[graph.initial()] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (std::size_t e : graph.out_edges(v))
        if (tree.contains(e) && !seen[graph.edge(e).target]) {
          seen[graph.edge(e).target] = true;
          stack.push_back(graph.edge(e).target);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw Error("schreier: tree does not reach every coset");
  }

  void name_subgroup_letters() {
    std::size_t k = 0;
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      if (tree.contains(e) || delta.contains(e)) continue;
      const auto& edge = graph.edge(e);
      std::size_t rev = *edge_from(edge.target, sigma.inverse(edge.label[0]));
      Symbol d("d" + std::to_string(++k));
      delta[e] = d;
      if (tree.contains(rev)) trivial.insert(d);
      else if (rev != e) delta[rev] = Symbol(d.name() + "^-1");
      else trivial.insert(d);  // x = x^-1 loop cannot occur with a fixed-point-free involution
    }
  }
};

/// Tree edges become (a, eps), every other edge (a, d) with its subgroup
/// letter; the base coset is initial and terminal.
inline Transducer schreier_transducer(const SchreierDiagram& d) {
  Automaton<WordPair> g;
  g.absorb_vertices(d.graph);
  g.set_initial(d.base());
  g.set_terminal(d.base());
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e) {
    const auto& edge = d.graph.edge(e);
    Word out = d.tree.contains(e) ? Word{} : Word{d.delta.at(e)};
    g.add_edge(edge.source, WordPair{edge.label, out}, edge.target);
  }
  Transducer t = Transducer::from(std::move(g));
  t.input_alphabet = d.sigma.letter_set();
  return t;
}

/// The image of w under a transducer that is a partial function reading one
/// letter per edge: follows the unique matching edges.
inline std::optional<Word> apply_function(const Transducer& t, const Word& w) {
  if (t.graph.empty()) return std::nullopt;
  VertexId v = t.graph.initial();
  Word out;
  for (Symbol x : w) {
    std::optional<std::size_t> next;
    for (std::size_t e : t.graph.out_edges(v))
      if (t.graph.edge(e).label.first == Word{x}) {
        next = e;
        break;
      }
    if (!next) return std::nullopt;
    const auto& edge = t.graph.edge(*next);
    out.insert(out.end(), edge.label.second.begin(), edge.label.second.end());
    v = edge.target;
  }
  if (!t.graph.is_terminal(v)) return std::nullopt;
  return out;
}

/// w lies in the word problem of G when w rho is defined and lies in the
/// word problem of H.
inline bool wp_lift(const SchreierDiagram& d, const std::function<bool(const Word&)>& member_h, const Word& w) {
  auto image = apply_function(schreier_transducer(d), w);
  return image && member_h(*image);
}

/// Word problem of the subgroup when G is free: the subgroup is free on the
/// non-trivial letters, so membership is the free-group grammar over them
/// after erasing trivial letters.
inline std::function<bool(const Word&)> free_subgroup_membership(const SchreierDiagram& d) {
  auto pairs = d.subgroup_pairs();
  std::shared_ptr<CykParser> parser;
  if (pairs.rank() > 0) parser = std::make_shared<CykParser>(to_cnf(free_group_wp_grammar(pairs)));
  auto trivial = d.trivial;
  return [parser, trivial](const Word& w) {
    Word kept;
    for (Symbol s : w)
      if (!trivial.contains(s)) kept.push_back(s);
    return parser ? parser->accepts(kept) : kept.empty();
  };
}

}  // namespace mfa
