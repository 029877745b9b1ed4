#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfa/automaton.hpp"

namespace mfa {

/// Complete deterministic automaton over a finite alphabet: every state has
/// exactly one transition per letter. The alphabet is kept sorted by name.
class Dfa {
 public:
  Dfa(std::vector<Symbol> alphabet, std::vector<std::vector<std::size_t>> next, std::vector<bool> accepting,
      std::size_t initial, std::vector<std::string> names = {})
      : alphabet_(std::move(alphabet)), next_(std::move(next)), accepting_(std::move(accepting)), initial_(initial),
        names_(std::move(names)) {
    std::vector<std::size_t> order(alphabet_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return name_less(alphabet_[a], alphabet_[b]); });
    std::vector<Symbol> sorted;
    for (auto i : order) sorted.push_back(alphabet_[i]);
    for (auto& row : next_) {
      if (row.size() != alphabet_.size()) throw Error("dfa: transition row does not cover the alphabet");
      std::vector<std::size_t> r;
      for (auto i : order) r.push_back(row[i]);
      row = std::move(r);
      for (auto t : row)
        if (t >= next_.size()) throw Error("dfa: transition target out of range");
    }
    alphabet_ = std::move(sorted);
    for (std::size_t i = 1; i < alphabet_.size(); ++i)
      if (alphabet_[i] == alphabet_[i - 1]) throw Error("dfa: repeated letter");
    if (accepting_.size() != next_.size() || (initial_ >= next_.size() && !next_.empty()))
      throw Error("dfa: inconsistent state count");
    if (next_.empty()) throw Error("dfa: at least one state required");
    names_.resize(next_.size());
    for (std::size_t s = 0; s < names_.size(); ++s)
      if (names_[s].empty()) names_[s] = "s" + std::to_string(s);
  }

  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return next_.size(); }
  std::size_t initial() const { return initial_; }
  bool accepting(std::size_t s) const { return accepting_[s]; }
  const std::string& state_name(std::size_t s) const { return names_[s]; }

  std::optional<std::size_t> letter_index(Symbol a) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == a) return i;
    return std::nullopt;
  }

  std::size_t step(std::size_t s, std::size_t letter) const { return next_[s][letter]; }

  std::optional<std::size_t> run(const Word& w) const {
    std::size_t s = initial_;
    for (Symbol a : w) {
      auto i = letter_index(a);
      if (!i) return std::nullopt;
      s = next_[s][*i];
    }
    return s;
  }

  bool accepts(const Word& w) const {
    auto s = run(w);
    return s && accepting_[*s];
  }

  Automaton<Word> to_automaton() const {
    Automaton<Word> out;
    for (std::size_t s = 0; s < next_.size(); ++s) out.add_vertex(names_[s]);
    out.set_initial(initial_);
    for (std::size_t s = 0; s < next_.size(); ++s) {
      if (accepting_[s]) out.set_terminal(s);
      for (std::size_t i = 0; i < alphabet_.size(); ++i) out.add_edge(s, Word{alphabet_[i]}, next_[s][i]);
    }
    return out;
  }

 private:
  std::vector<Symbol> alphabet_;
  std::vector<std::vector<std::size_t>> next_;
  std::vector<bool> accepting_;
  std::size_t initial_;
  std::vector<std::string> names_;
};

/// Letters occurring in edge labels, sorted by name.
inline std::vector<Symbol> alphabet_of(const Automaton<Word>& aut) {
  std::set<Symbol> s;
  for (const auto& e : aut.edges()) s.insert(e.label.begin(), e.label.end());
  std::vector<Symbol> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), name_less);
  return out;
}

/// Splits every multi-letter edge into a chain of single-letter edges.
inline Automaton<Word> split_letters(const Automaton<Word>& aut) {
  Automaton<Word> out;
  out.absorb_vertices(aut);
  if (aut.empty()) return out;
  out.set_initial(aut.initial());
  for (VertexId t : aut.terminals()) out.set_terminal(t);
  for (const auto& e : aut.edges()) {
    VertexId cur = e.source;
    for (std::size_t i = 0; i + 1 < e.label.size(); ++i) {
      VertexId mid = out.add_vertex();
      out.add_edge(cur, Word{e.label[i]}, mid);
      cur = mid;
    }
    out.add_edge(cur, e.label.empty() ? Word{} : Word{e.label.back()}, e.target);
  }
  return out;
}

/// Vertices reachable from `from` through empty-labelled edges.
inline std::set<VertexId> epsilon_closure(const Automaton<Word>& aut, std::set<VertexId> from) {
  std::vector<VertexId> stack(from.begin(), from.end());
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t e : aut.out_edges(v)) {
      const auto& edge = aut.edge(e);
      if (edge.label.empty() && from.insert(edge.target).second) stack.push_back(edge.target);
    }
  }
  return from;
}

/// Subset construction over the reachable subsets, after epsilon closure.
/// The empty subset becomes the sink when it is reachable.
inline Dfa determinize(const Automaton<Word>& input, std::optional<std::vector<Symbol>> alphabet = std::nullopt) {
  Automaton<Word> nfa = split_letters(input);
  std::vector<Symbol> sigma = alphabet ? *alphabet : alphabet_of(nfa);
  std::sort(sigma.begin(), sigma.end(), name_less);
  for (Symbol a : alphabet_of(nfa))
    if (std::find(sigma.begin(), sigma.end(), a) == sigma.end())
      throw AlphabetMismatch("determinize: letter '" + a.name() + "' outside the given alphabet");

  std::map<std::set<VertexId>, std::size_t> index;
  std::vector<std::set<VertexId>> subsets;
  std::vector<std::vector<std::size_t>> next;
  auto intern = [&](std::set<VertexId> s) {
    auto [it, inserted] = index.try_emplace(s, subsets.size());
    if (inserted) subsets.push_back(std::move(s));
    return it->second;
  };
  std::set<VertexId> start;
  if (!nfa.empty()) start = epsilon_closure(nfa, {nfa.initial()});
  intern(start);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<std::size_t> row;
    for (Symbol a : sigma) {
      std::set<VertexId> moved;
      for (VertexId v : subsets[i])
        for (std::size_t e : nfa.out_edges(v)) {
          const auto& edge = nfa.edge(e);
          if (edge.label.size() == 1 && edge.label[0] == a) moved.insert(edge.target);
        }
      row.push_back(intern(epsilon_closure(nfa, std::move(moved))));
    }
    next.push_back(std::move(row));
  }
  std::vector<bool> accepting;
  std::vector<std::string> names;
  for (const auto& s : subsets) {
    bool acc = false;
    std::string name = "{";
    for (VertexId v : s) {
      acc = acc || nfa.is_terminal(v);
      if (name.size() > 1) name += ',';
      name += nfa.name(v);
    }
    accepting.push_back(acc);
    names.push_back(s.empty() ? "sink" : name + "}");
  }
  return Dfa(std::move(sigma), std::move(next), std::move(accepting), 0, std::move(names));
}

/// Square boolean matrix: a binary relation on automaton vertices.
struct Relation {
  std::size_t n = 0;
  std::vector<std::uint8_t> bits;

  static Relation identity(std::size_t n) {
    Relation r{n, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) r.bits[i * n + i] = 1;
    return r;
  }
  bool at(std::size_t i, std::size_t j) const { return bits[i * n + j] != 0; }

  /// Composite: first this relation, then `o`.
  Relation then(const Relation& o) const {
    Relation r{n, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, k))
          for (std::size_t j = 0; j < n; ++j)
            if (o.at(k, j)) r.bits[i * n + j] = 1;
    return r;
  }

  auto operator<=>(const Relation&) const = default;
};

struct TransitionMonoidOptions {
  std::size_t max_elements = 1'000'000;
};

/// Finite monoid of vertex relations recognising a language: the carrier,
/// the letter assignment sigma, and the accept set X. Products are
/// computed on demand by relation composition.
class TransitionMonoid {
 public:
  std::vector<Relation> elements;
  std::size_t unit = 0;
  std::map<Symbol, std::size_t> generator;
  std::vector<bool> accept;

  std::size_t size() const { return elements.size(); }

  std::size_t multiply(std::size_t x, std::size_t y) const {
    Relation r = elements.at(x).then(elements.at(y));
    auto it = index_.find(r);
    if (it == index_.end()) throw Error("transition monoid: carrier not closed");
    return it->second;
  }

  std::optional<std::size_t> evaluate(const Word& w) const {
    std::size_t x = unit;
    for (Symbol a : w) {
      auto it = generator.find(a);
      if (it == generator.end()) return std::nullopt;
      x = multiply(x, it->second);
    }
    return x;
  }

  bool recognizes(const Word& w) const {
    auto x = evaluate(w);
    return x && accept[*x];
  }

  std::size_t intern(const Relation& r) {
    auto [it, inserted] = index_.try_emplace(r, elements.size());
    if (inserted) {
      elements.push_back(r);
      accept.push_back(false);
    }
    return it->second;
  }

 private:
  std::map<Relation, std::size_t> index_;
};

namespace detail {

inline TransitionMonoid close_transition_monoid(const Relation& unit, const std::map<Symbol, Relation>& letters,
                                                const std::function<bool(const Relation&)>& accepting,
                                                const TransitionMonoidOptions& opts) {
  TransitionMonoid tm;
  tm.unit = tm.intern(unit);
  for (const auto& [a, r] : letters) tm.generator[a] = tm.intern(unit.then(r));
  for (std::size_t i = 0; i < tm.elements.size(); ++i) {
    for (const auto& [a, r] : letters) {
      tm.intern(tm.elements[i].then(r));
      if (tm.elements.size() > opts.max_elements)
        throw ResourceLimit("transition monoid exceeds " + std::to_string(opts.max_elements) + " elements");
    }
  }
  for (std::size_t i = 0; i < tm.elements.size(); ++i) tm.accept[i] = accepting(tm.elements[i]);
  return tm;
}

}  // namespace detail

inline TransitionMonoid transition_monoid(const Dfa& dfa, const TransitionMonoidOptions& opts = {}) {
  std::size_t n = dfa.state_count();
  std::map<Symbol, Relation> letters;
  for (std::size_t i = 0; i < dfa.alphabet().size(); ++i) {
    Relation r{n, std::vector<std::uint8_t>(n * n, 0)};
    for (std::size_t s = 0; s < n; ++s) r.bits[s * n + dfa.step(s, i)] = 1;
    letters[dfa.alphabet()[i]] = r;
  }
  std::size_t init = dfa.initial();
  return detail::close_transition_monoid(
      Relation::identity(n), letters,
      [&](const Relation& r) {
        for (std::size_t t = 0; t < n; ++t)
          if (r.at(init, t) && dfa.accepting(t)) return true;
        return false;
      },
      opts);
}

/// Same construction for a nondeterministic automaton over letters; empty
/// edges are absorbed by closing each relation under epsilon moves, so the
/// unit of the monoid is the epsilon-closure relation.
inline TransitionMonoid transition_monoid(const Automaton<Word>& input, const TransitionMonoidOptions& opts = {}) {
  Automaton<Word> nfa = split_letters(input);
  std::size_t n = nfa.vertex_count();
  Relation closure{n, std::vector<std::uint8_t>(n * n, 0)};
  for (VertexId v = 0; v < n; ++v)
    for (VertexId t : epsilon_closure(nfa, {v})) closure.bits[v * n + t] = 1;
  std::map<Symbol, Relation> letters;
  for (Symbol a : alphabet_of(nfa)) {
    Relation r{n, std::vector<std::uint8_t>(n * n, 0)};
    for (const auto& e : nfa.edges())
      if (e.label.size() == 1 && e.label[0] == a) r.bits[e.source * n + e.target] = 1;
    letters[a] = r.then(closure);
  }
  VertexId init = nfa.empty() ? 0 : nfa.initial();
  return detail::close_transition_monoid(
      closure, letters,
      [&](const Relation& r) {
        for (VertexId t = 0; t < n; ++t)
          if (r.at(init, t) && nfa.is_terminal(t)) return true;
        return false;
      },
      opts);
}

/// The automaton with vertices F, initial vertex 1, terminal vertices X
/// and edges x -a-> x(a sigma).
inline Dfa recognizer_to_dfa(const TransitionMonoid& tm, const std::vector<Symbol>& alphabet) {
  std::vector<std::vector<std::size_t>> next(tm.size());
  for (Symbol a : alphabet)
    if (!tm.generator.contains(a)) throw Error("recognizer_to_dfa: no image assigned to letter '" + a.name() + "'");
  for (std::size_t x = 0; x < tm.size(); ++x)
    for (Symbol a : alphabet) next[x].push_back(tm.multiply(x, tm.generator.at(a)));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < tm.size(); ++x) names.push_back("m" + std::to_string(x));
  return Dfa(alphabet, std::move(next), tm.accept, tm.unit, std::move(names));
}

enum class BoolOp { complement, intersect, union_of };

namespace detail {

inline void require_same_alphabet(const Dfa& a, const Dfa& b) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("automata are over different alphabets");
}

template <class Accept>
Dfa product_dfa(const Dfa& a, const Dfa& b, Accept accept) {
  require_same_alphabet(a, b);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> states;
  std::vector<std::vector<std::size_t>> next;
  auto intern = [&](std::pair<std::size_t, std::size_t> s) {
    auto [it, inserted] = index.try_emplace(s, states.size());
    if (inserted) states.push_back(s);
    return it->second;
  };
  intern({a.initial(), b.initial()});
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<std::size_t> row;
    for (std::size_t l = 0; l < a.alphabet().size(); ++l)
      row.push_back(intern({a.step(states[i].first, l), b.step(states[i].second, l)}));
    next.push_back(std::move(row));
  }
  std::vector<bool> acc;
  std::vector<std::string> names;
  for (auto [x, y] : states) {
    acc.push_back(accept(a.accepting(x), b.accepting(y)));
    names.push_back("(" + a.state_name(x) + "," + b.state_name(y) + ")");
  }
  return Dfa(a.alphabet(), std::move(next), std::move(acc), 0, std::move(names));
}

}  // namespace detail

inline Dfa boolean(BoolOp op, const Dfa& a, const Dfa* b = nullptr) {
  if (op == BoolOp::complement) {
    std::vector<std::vector<std::size_t>> next(a.state_count());
    std::vector<bool> acc;
    std::vector<std::string> names;
    for (std::size_t s = 0; s < a.state_count(); ++s) {
      for (std::size_t l = 0; l < a.alphabet().size(); ++l) next[s].push_back(a.step(s, l));
      acc.push_back(!a.accepting(s));
      names.push_back(a.state_name(s));
    }
    return Dfa(a.alphabet(), std::move(next), std::move(acc), a.initial(), std::move(names));
  }
  if (b == nullptr) throw Error("boolean: second operand required");
  if (op == BoolOp::intersect) return detail::product_dfa(a, *b, [](bool x, bool y) { return x && y; });
  return detail::product_dfa(a, *b, [](bool x, bool y) { return x || y; });
}

/// Moore partition refinement on the reachable part. States of the result
/// are numbered in breadth-first order from the initial state.
inline Dfa minimize(const Dfa& dfa) {
  const std::size_t k = dfa.alphabet().size();
  std::vector<std::size_t> reach{dfa.initial()};
  std::vector<bool> seen(dfa.state_count(), false);
  seen[dfa.initial()] = true;
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (std::size_t l = 0; l < k; ++l) {
      std::size_t t = dfa.step(reach[i], l);
      if (!seen[t]) seen[t] = true, reach.push_back(t);
    }

  std::vector<std::size_t> cls(dfa.state_count(), 0);
  for (auto s : reach) cls[s] = dfa.accepting(s) ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_index;
    std::vector<std::size_t> next_cls(dfa.state_count(), 0);
    for (auto s : reach) {
      std::vector<std::size_t> sig{cls[s]};
      for (std::size_t l = 0; l < k; ++l) sig.push_back(cls[dfa.step(s, l)]);
      auto [it, _] = sig_index.try_emplace(sig, sig_index.size());
      next_cls[s] = it->second;
    }
    bool stable = sig_index.size() == classes;
    classes = sig_index.size();
    cls = std::move(next_cls);
    if (stable) break;
  }

  std::vector<std::optional<std::size_t>> number(classes);
  std::vector<std::size_t> rep;
  std::deque<std::size_t> queue{dfa.initial()};
  number[cls[dfa.initial()]] = 0;
  rep.push_back(dfa.initial());
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < k; ++l) {
      std::size_t t = dfa.step(s, l);
      if (!number[cls[t]]) {
        number[cls[t]] = rep.size();
        rep.push_back(t);
        queue.push_back(t);
      }
    }
  }
  std::vector<std::vector<std::size_t>> next;
  std::vector<bool> acc;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    std::vector<std::size_t> row;
    for (std::size_t l = 0; l < k; ++l) row.push_back(*number[cls[dfa.step(rep[i], l)]]);
    next.push_back(std::move(row));
    acc.push_back(dfa.accepting(rep[i]));
    names.push_back("m" + std::to_string(i));
  }
  return Dfa(dfa.alphabet(), std::move(next), std::move(acc), 0, std::move(names));
}

/// Shortest word (shortlex by letter name) accepted by exactly one of the
/// two automata, or nothing when they are equivalent.
inline std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b) {
  detail::require_same_alphabet(a, b);
  using State = std::pair<std::size_t, std::size_t>;
  std::map<State, std::pair<State, std::size_t>> parent;
  std::deque<State> queue{{a.initial(), b.initial()}};
  std::set<State> seen{queue.front()};
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (a.accepting(s.first) != b.accepting(s.second)) {
      Word w;
      for (State cur = s; cur != State{a.initial(), b.initial()};) {
        auto [prev, l] = parent.at(cur);
        w.push_back(a.alphabet()[l]);
        cur = prev;
      }
      return reversed(std::move(w));
    }
    for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
      State t{a.step(s.first, l), b.step(s.second, l)};
      if (seen.insert(t).second) {
        parent[t] = {s, l};
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

inline bool equivalent(const Dfa& a, const Dfa& b) { return !distinguishing_word(a, b).has_value(); }

struct PumpSplit {
  Word x, y, z;
};

/// Splits an accepted word longer than the state count at the first state
/// repeated along its run: y labels that loop, so x y^i z stays accepted.
inline PumpSplit pump_decompose(const Dfa& dfa, const Word& w) {
  const std::size_t n = dfa.state_count();
  if (!dfa.accepts(w)) throw Error("pump_decompose: word is not accepted");
  if (w.size() <= n) throw Error("pump_decompose: word length must exceed the state count " + std::to_string(n));
  std::map<std::size_t, std::size_t> first_visit;
  std::size_t s = dfa.initial();
  first_visit[s] = 0;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    s = dfa.step(s, *dfa.letter_index(w[pos]));
    auto [it, inserted] = first_visit.try_emplace(s, pos + 1);
    if (!inserted) {
      std::size_t i = it->second, j = pos + 1;
      return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
              Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j)),
              Word(w.begin() + static_cast<std::ptrdiff_t>(j), w.end())};
    }
  }
  throw Error("pump_decompose: no repeated state (unreachable for |w| > n)");
}

}  // namespace mfa
