#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls the library code path it is checking.

#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mfa/mfa.hpp"

namespace oracle {

using mfa::Symbol;
using mfa::Word;

// ---------------------------------------------------------------------------
// Stack actions as partial functions on stack words (top at the right)

struct Gen {
  char kind;  // 'P' push, 'Q' pop, 'E' emptiness test
  Symbol s;
};

inline std::optional<Word> run(const std::vector<Gen>& gens, Word stack) {
  for (const auto& g : gens) {
    if (g.kind == 'P') {
      stack.push_back(g.s);
    } else if (g.kind == 'Q') {
      if (stack.empty() || stack.back() != g.s) return std::nullopt;
      stack.pop_back();
    } else if (!stack.empty()) {
      return std::nullopt;
    }
  }
  return stack;
}

/// Q_w pops the suffix w, so its generators are the letters of w from the
/// right; P_w pushes w left to right.
inline std::vector<Gen> expand(const Word& pop, bool barrier, const Word& push) {
  std::vector<Gen> g;
  for (auto it = pop.rbegin(); it != pop.rend(); ++it) g.push_back({'Q', *it});
  if (barrier) g.push_back({'E', Symbol()});
  for (Symbol s : push) g.push_back({'P', s});
  return g;
}

inline std::optional<Word> apply(const mfa::StackAction& a, const Word& u) {
  if (a.zero) return std::nullopt;
  return run(expand(a.pop, false, a.push), u);
}

inline std::optional<Word> apply(const mfa::ReadStackAction& a, const Word& u) {
  if (a.zero) return std::nullopt;
  return run(expand(a.pop, a.barrier, a.push), u);
}

/// All stacks over `alphabet` up to `max_len`.
inline std::vector<Word> stacks(const std::vector<Symbol>& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (Symbol s : alphabet) {
      Word w = out[i];
      w.push_back(s);
      out.push_back(w);
    }
  }
  return out;
}

/// x then y as partial functions equals z on every probe stack.
template <class A>
bool composition_matches(const A& x, const A& y, const A& z, const std::vector<Word>& probes) {
  for (const auto& u : probes) {
    auto mid = oracle::apply(x, u);
    std::optional<Word> lhs = mid ? oracle::apply(y, *mid) : std::nullopt;
    if (lhs != oracle::apply(z, u)) return false;
  }
  return true;
}

inline Word random_word(std::mt19937& rng, const std::vector<Symbol>& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
  Word w(len(rng));
  for (auto& s : w) s = alphabet[pick(rng)];
  return w;
}

/// Bracket check on the empty stack: a P/Q word is 1 exactly when it never
/// pops a wrong or missing symbol and ends with an empty stack.
inline bool balanced(const std::vector<mfa::StackGenerator>& w) {
  std::vector<Gen> g;
  for (const auto& x : w) g.push_back({x.push ? 'P' : 'Q', x.symbol});
  auto r = run(g, {});
  return r && r->empty();
}

// ---------------------------------------------------------------------------
// Free groups

inline std::string base_name(Symbol s) {
  const std::string& n = s.name();
  return n.ends_with("^-1") ? n.substr(0, n.size() - 3) : n;
}

inline bool inverse_pair(Symbol x, Symbol y) {
  return base_name(x) == base_name(y) && x.name().ends_with("^-1") != y.name().ends_with("^-1");
}

/// Deletes adjacent inverse pairs until none is left, rescanning from the
/// start each time.
inline Word reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (inverse_pair(w[i], w[i + 1])) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

inline Word invert(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const std::string& n = it->name();
    out.push_back(Symbol(n.ends_with("^-1") ? base_name(*it) : n + "^-1"));
  }
  return out;
}

inline std::vector<Symbol> rank2_letters() { return {Symbol("a"), Symbol("a^-1"), Symbol("b"), Symbol("b^-1")}; }

/// Reduced words up to `max_len` over a, a^-1, b, b^-1.
inline std::vector<Word> reduced_words(std::size_t max_len) {
  auto sigma = rank2_letters();
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (Symbol s : sigma) {
      if (!out[i].empty() && inverse_pair(out[i].back(), s)) continue;
      Word w = out[i];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

/// Reduced forms of all products of at most `factors` generators or their
/// inverses.
inline std::set<Word> subgroup_ball(const std::vector<Word>& gens, std::size_t factors) {
  std::vector<Word> letters;
  for (const auto& g : gens) {
    letters.push_back(reduce(g));
    letters.push_back(reduce(invert(g)));
  }
  std::set<Word> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t k = 0; k < factors; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : letters) {
        Word p = w;
        p.insert(p.end(), g.begin(), g.end());
        p = reduce(p);
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return seen;
}

/// Exponent k when the reduced word is a^k.
inline std::optional<long> a_exponent(const Word& w) {
  long k = 0;
  for (Symbol s : w) {
    if (s.name() == "a") ++k;
    else if (s.name() == "a^-1") --k;
    else return std::nullopt;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Languages

inline bool is_anbn(const Word& w, const std::string& a = "a", const std::string& b = "b") {
  if (w.size() % 2) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].name() != (i < w.size() / 2 ? a : b)) return false;
  return true;
}

inline bool is_anbncn(const Word& w) {
  if (w.size() % 3) return false;
  std::size_t n = w.size() / 3;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].name() != std::string(1, static_cast<char>('a' + i / n))) return false;
  return true;
}

inline bool in_a_star_b_star(const Word& w) {
  bool seen_b = false;
  for (Symbol s : w) {
    if (s.name() == "b") seen_b = true;
    else if (s.name() != "a" || seen_b) return false;
  }
  return true;
}

/// Configurations (vertex, position, stack) explored breadth first, with
/// the stack never higher than the unread input plus `slack`. The cap can
/// only lose accepting runs, never invent one; it keeps all of them when
/// every stack symbol eventually consumes a letter or can be left unpushed.
inline bool pda_simulate(const mfa::Pda& p, const Word& w, std::size_t slack = 2) {
  const auto& g = p.graph;
  if (g.empty()) return false;
  using Config = std::tuple<mfa::VertexId, std::size_t, Word>;
  std::set<Config> seen;
  std::deque<Config> queue;
  Config start(g.initial(), std::size_t{0}, Word{});
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    auto [v, pos, stack] = queue.front();
    queue.pop_front();
    if (pos == w.size() && stack.empty() && g.is_terminal(v)) return true;
    for (std::size_t e : g.out_edges(v)) {
      const auto& edge = g.edge(e);
      const Word& read = edge.label.second;
      if (pos + read.size() > w.size() || !std::equal(read.begin(), read.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
        continue;
      auto next = oracle::apply(edge.label.first, stack);
      if (!next || next->size() > w.size() - pos - read.size() + slack) continue;
      Config c(edge.target, pos + read.size(), *next);
      if (seen.insert(c).second) queue.push_back(std::move(c));
    }
  }
  return false;
}

/// {(u, w) : (u, v) in r, (v, w) in s}.
inline std::set<mfa::WordPair> compose(const std::set<mfa::WordPair>& r, const std::set<mfa::WordPair>& s) {
  std::set<mfa::WordPair> out;
  for (const auto& [u, v] : r)
    for (const auto& [v2, w] : s)
      if (v == v2) out.insert({u, w});
  return out;
}

inline std::vector<Word> all_words(const std::vector<Symbol>& alphabet, std::size_t max_len) {
  return stacks(alphabet, max_len);
}

}  // namespace oracle
