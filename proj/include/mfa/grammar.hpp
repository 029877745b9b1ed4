#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mfa/automaton.hpp"
#include "mfa/dfa.hpp"
#include "mfa/pda.hpp"
#include "mfa/symmetric.hpp"

namespace mfa {

/// A string of terminals and nonterminals.
using Form = Word;

struct Production {
  Form lhs;
  Form rhs;
  auto operator<=>(const Production&) const = default;
};

/// Phrase-structure grammar. Productions keep insertion order; `add` drops
/// exact duplicates.
struct Grammar {
  std::set<Symbol> terminals;
  std::set<Symbol> nonterminals;
  Symbol start;
  std::vector<Production> productions;

  bool is_terminal(Symbol s) const { return terminals.contains(s); }
  bool is_nonterminal(Symbol s) const { return nonterminals.contains(s); }

  bool add(Production p) {
    if (std::find(productions.begin(), productions.end(), p) != productions.end()) return false;
    productions.push_back(std::move(p));
    return true;
  }
  bool add(Symbol lhs, Form rhs) { return add(Production{Form{lhs}, std::move(rhs)}); }

  bool is_context_free() const {
    for (const auto& p : productions)
      if (p.lhs.size() != 1 || !is_nonterminal(p.lhs[0])) return false;
    return true;
  }

  /// Every production is A -> aB or A -> a.
  bool is_regular() const {
    if (!is_context_free()) return false;
    for (const auto& p : productions) {
      if (p.rhs.empty() || p.rhs.size() > 2 || !is_terminal(p.rhs[0])) return false;
      if (p.rhs.size() == 2 && !is_nonterminal(p.rhs[1])) return false;
    }
    return true;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> all = terminals;
    all.insert(nonterminals.begin(), nonterminals.end());
    return all;
  }

  void validate() const {
    for (Symbol t : terminals)
      if (nonterminals.contains(t)) throw Error("grammar: '" + t.name() + "' is both terminal and nonterminal");
    if (!is_nonterminal(start)) throw Error("grammar: start symbol is not a nonterminal");
    for (const auto& p : productions) {
      bool has_nt = false;
      for (const Form* f : {&p.lhs, &p.rhs})
        for (Symbol s : *f) {
          if (!is_terminal(s) && !is_nonterminal(s)) throw Error("grammar: unknown symbol '" + s.name() + "'");
          has_nt = has_nt || (f == &p.lhs && is_nonterminal(s));
        }
      if (!has_nt) throw Error("grammar: left-hand side without a nonterminal");
    }
  }

  /// Indices of the productions with left-hand side exactly `a`.
  std::vector<std::size_t> rules_for(Symbol a) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < productions.size(); ++i)
      if (productions[i].lhs.size() == 1 && productions[i].lhs[0] == a) out.push_back(i);
    return out;
  }
};

inline void require_context_free(const Grammar& g, const char* op) {
  if (!g.is_context_free()) throw Error(std::string(op) + ": grammar is not context-free");
}

namespace detail {

/// Mints nonterminal names not clashing with anything already in use.
class NameSource {
 public:
  explicit NameSource(std::set<Symbol> used) : used_(std::move(used)) {}
  Symbol fresh(const std::string& base) {
    Symbol s = fresh_symbol(base, used_);
    used_.insert(s);
    return s;
  }

 private:
  std::set<Symbol> used_;
};

inline std::string capitalised(const std::string& name) {
  if (!name.empty() && std::islower(static_cast<unsigned char>(name[0]))) {
    std::string out = name;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
  }
  if (!name.empty() && std::isupper(static_cast<unsigned char>(name[0]))) return name;
  return "N" + name;
}

}  // namespace detail

/// Nonterminals deriving at least one terminal word (context-free grammars).
inline std::set<Symbol> productive_nonterminals(const Grammar& g) {
  std::set<Symbol> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (productive.contains(p.lhs[0])) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
                            [&](Symbol s) { return g.is_terminal(s) || productive.contains(s); });
      if (ok) changed = productive.insert(p.lhs[0]).second || changed;
    }
  }
  return productive;
}

inline std::set<Symbol> nullable_nonterminals(const Grammar& g) {
  std::set<Symbol> nullable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (nullable.contains(p.lhs[0])) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) { return nullable.contains(s); });
      if (ok) changed = nullable.insert(p.lhs[0]).second || changed;
    }
  }
  return nullable;
}

/// Drops productions mentioning unproductive nonterminals, then everything
/// unreachable from the start symbol. The start symbol always survives.
inline Grammar remove_useless(const Grammar& g) {
  require_context_free(g, "remove_useless");
  auto productive = productive_nonterminals(g);
  auto usable = [&](const Production& p) {
    return productive.contains(p.lhs[0]) &&
           std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) { return g.is_terminal(s) || productive.contains(s); });
  };
  std::map<Symbol, std::vector<const Production*>> by_lhs;
  for (const auto& p : g.productions)
    if (usable(p)) by_lhs[p.lhs[0]].push_back(&p);
  std::set<Symbol> reachable{g.start};
  std::vector<Symbol> stack{g.start};
  while (!stack.empty()) {
    Symbol a = stack.back();
    stack.pop_back();
    for (const Production* p : by_lhs[a])
      for (Symbol s : p->rhs)
        if (g.is_nonterminal(s) && reachable.insert(s).second) stack.push_back(s);
  }
  Grammar out{g.terminals, reachable, g.start, {}};
  for (const auto& p : g.productions)
    if (usable(p) && reachable.contains(p.lhs[0])) out.productions.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Regular grammars and automata

/// One vertex per nonterminal plus a final vertex: A -> aB is an edge
/// A -a-> B and A -> a an edge into the final vertex.
inline Automaton<Word> regular_to_nfa(const Grammar& g) {
  if (!g.is_regular()) throw Error("regular_to_nfa: grammar is not regular");
  Automaton<Word> out;
  std::map<Symbol, VertexId> vertex;
  std::vector<Symbol> order{g.start};
  for (Symbol n : g.nonterminals)
    if (n != g.start) order.push_back(n);
  for (Symbol n : order) vertex[n] = out.add_vertex(n.name());
  VertexId final_vertex = out.add_vertex("final");
  out.set_initial(vertex.at(g.start));
  out.set_terminal(final_vertex);
  for (const auto& p : g.productions) {
    VertexId to = p.rhs.size() == 2 ? vertex.at(p.rhs[1]) : final_vertex;
    out.add_edge(vertex.at(p.lhs[0]), Word{p.rhs[0]}, to);
  }
  return out;
}

struct RegularConversion {
  Grammar grammar;
  /// The automaton accepts the empty word, which no regular grammar can
  /// generate; `grammar` then generates the language minus the empty word.
  bool dropped_epsilon = false;
};

/// P -> aQ for every edge p -a-> q and P -> a when q is terminal, after
/// removing empty edges by closure. Nonterminals are the capitalised vertex
/// names.
inline RegularConversion nfa_to_regular(const Automaton<Word>& input) {
  Automaton<Word> aut = split_letters(input);
  RegularConversion out;
  Grammar& g = out.grammar;
  for (const auto& e : aut.edges()) g.terminals.insert(e.label.begin(), e.label.end());
  detail::NameSource names(g.terminals);
  if (aut.empty()) {
    g.start = names.fresh("S");
    g.nonterminals.insert(g.start);
    return out;
  }
  std::vector<std::set<VertexId>> closure(aut.vertex_count());
  std::vector<bool> accepting(aut.vertex_count(), false);
  for (VertexId v = 0; v < aut.vertex_count(); ++v) {
    closure[v] = epsilon_closure(aut, {v});
    for (VertexId c : closure[v]) accepting[v] = accepting[v] || aut.is_terminal(c);
  }
  out.dropped_epsilon = accepting[aut.initial()];

  std::map<VertexId, Symbol> nt;
  std::vector<VertexId> queue;
  auto intern = [&](VertexId v) {
    auto it = nt.find(v);
    if (it != nt.end()) return it->second;
    Symbol s = names.fresh(detail::capitalised(aut.name(v)));
    nt.emplace(v, s);
    g.nonterminals.insert(s);
    queue.push_back(v);
    return s;
  };
  g.start = intern(aut.initial());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId p = queue[i];
    Symbol lhs = nt.at(p);
    for (VertexId c : closure[p])
      for (std::size_t e : aut.out_edges(c)) {
        const auto& edge = aut.edge(e);
        if (edge.label.empty()) continue;
        g.add(lhs, Form{edge.label[0], intern(edge.target)});
        if (accepting[edge.target]) g.add(lhs, Form{edge.label[0]});
      }
  }
  g = remove_useless(g);
  return out;
}

// ---------------------------------------------------------------------------
// Context-free normal forms

/// Every right-hand side is all nonterminals, a single terminal, or empty.
inline bool is_rhs_normalized(const Grammar& g) {
  for (const auto& p : g.productions) {
    if (p.rhs.size() <= 1) continue;
    for (Symbol s : p.rhs)
      if (g.is_terminal(s)) return false;
  }
  return true;
}

/// Replaces terminals inside right-hand sides of length >= 2 by fresh
/// nonterminals A with A -> a (named after the terminal).
inline Grammar normalize_rhs(const Grammar& g) {
  require_context_free(g, "normalize_rhs");
  if (is_rhs_normalized(g)) return g;
  detail::NameSource names(g.symbols());
  std::map<Symbol, Symbol> proxy;
  std::vector<Symbol> proxy_order;
  Grammar out{g.terminals, g.nonterminals, g.start, {}};
  for (const auto& p : g.productions) {
    Production q = p;
    if (q.rhs.size() >= 2)
      for (Symbol& s : q.rhs) {
        if (!g.is_terminal(s)) continue;
        auto it = proxy.find(s);
        if (it == proxy.end()) {
          it = proxy.emplace(s, names.fresh(detail::capitalised(s.name()))).first;
          proxy_order.push_back(s);
          out.nonterminals.insert(it->second);
        }
        s = it->second;
      }
    out.add(std::move(q));
  }
  for (Symbol a : proxy_order) out.add(proxy.at(a), Form{a});
  return out;
}

/// Chomsky normal form: A -> BC, A -> a, and S0 -> eps only when the empty
/// word is generated; S0 never occurs on a right-hand side.
inline bool is_cnf(const Grammar& g) {
  if (!g.is_context_free()) return false;
  for (const auto& p : g.productions) {
    for (Symbol s : p.rhs)
      if (s == g.start) return false;
    if (p.rhs.empty()) {
      if (p.lhs[0] != g.start) return false;
    } else if (p.rhs.size() == 1) {
      if (!g.is_terminal(p.rhs[0])) return false;
    } else if (p.rhs.size() == 2) {
      if (!g.is_nonterminal(p.rhs[0]) || !g.is_nonterminal(p.rhs[1])) return false;
    } else {
      return false;
    }
  }
  return true;
}

inline Grammar to_cnf(const Grammar& input) {
  require_context_free(input, "to_cnf");
  input.validate();
  if (is_cnf(input)) return remove_useless(input);
  Grammar g = remove_useless(input);
  detail::NameSource names(g.symbols());

  // New start symbol off every right-hand side.
  Symbol s0 = names.fresh(g.start.name() + "0");
  Symbol old_start = g.start;
  g.nonterminals.insert(s0);
  g.start = s0;
  std::vector<Production> rules{{Form{s0}, Form{old_start}}};

  // Terminals in long right-hand sides get proxies.
  std::map<Symbol, Symbol> proxy;
  for (auto p : g.productions) {
    if (p.rhs.size() >= 2)
      for (Symbol& s : p.rhs) {
        if (!g.is_terminal(s)) continue;
        auto it = proxy.find(s);
        if (it == proxy.end()) {
          it = proxy.emplace(s, names.fresh(detail::capitalised(s.name()))).first;
          g.nonterminals.insert(it->second);
          rules.push_back({Form{it->second}, Form{s}});
        }
        s = it->second;
      }
    rules.push_back(std::move(p));
  }

  // Binarise.
  std::vector<Production> binary;
  for (auto& p : rules) {
    if (p.rhs.size() <= 2) {
      binary.push_back(std::move(p));
      continue;
    }
    Symbol head = p.lhs[0];
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      Symbol next = names.fresh(p.lhs[0].name() + "_");
      g.nonterminals.insert(next);
      binary.push_back({Form{head}, Form{p.rhs[i], next}});
      head = next;
    }
    binary.push_back({Form{head}, Form{p.rhs[p.rhs.size() - 2], p.rhs.back()}});
  }

  // Remove empty productions.
  Grammar tmp{g.terminals, g.nonterminals, s0, binary};
  auto nullable = nullable_nonterminals(tmp);
  std::set<Production> no_eps;
  for (const auto& p : binary) {
    if (p.rhs.size() == 2) {
      no_eps.insert(p);
      if (nullable.contains(p.rhs[0])) no_eps.insert({p.lhs, Form{p.rhs[1]}});
      if (nullable.contains(p.rhs[1])) no_eps.insert({p.lhs, Form{p.rhs[0]}});
    } else if (p.rhs.size() == 1) {
      no_eps.insert(p);
    }
  }

  // Remove unit productions A -> B.
  std::map<Symbol, std::vector<Symbol>> unit_next;
  std::map<Symbol, std::vector<const Production*>> proper;
  for (const auto& p : no_eps) {
    if (p.rhs.size() == 1 && g.is_nonterminal(p.rhs[0])) {
      if (p.rhs[0] != p.lhs[0]) unit_next[p.lhs[0]].push_back(p.rhs[0]);
    } else {
      proper[p.lhs[0]].push_back(&p);
    }
  }
  std::set<Production> final_rules;
  for (Symbol a : g.nonterminals) {
    std::set<Symbol> seen{a};
    std::vector<Symbol> stack{a};
    while (!stack.empty()) {
      Symbol b = stack.back();
      stack.pop_back();
      for (const Production* p : proper[b]) final_rules.insert({Form{a}, p->rhs});
      for (Symbol c : unit_next[b])
        if (seen.insert(c).second) stack.push_back(c);
    }
  }

  Grammar out{g.terminals, g.nonterminals, s0, {}};
  out.productions.assign(final_rules.begin(), final_rules.end());
  if (nullable.contains(s0)) out.productions.push_back({Form{s0}, Form{}});
  return remove_useless(out);
}

// ---------------------------------------------------------------------------
// CYK

/// Derivation tree over a CNF grammar. Node 0 is the root; a node with no
/// children derives the single letter at `begin` (or the empty word when
/// `length` is 0).
struct ParseTree {
  struct Node {
    Symbol symbol;
    std::size_t begin;
    std::size_t length;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
};

class CykParser {
 public:
  explicit CykParser(Grammar cnf) : g_(std::move(cnf)) {
    if (!is_cnf(g_)) throw Error("cyk: grammar is not in Chomsky normal form");
    for (Symbol n : g_.nonterminals) {
      index_.emplace(n, nts_.size());
      nts_.push_back(n);
    }
    by_left_.resize(nts_.size());
    by_head_.resize(nts_.size());
    for (const auto& p : g_.productions) {
      std::size_t a = index_.at(p.lhs[0]);
      if (p.rhs.empty()) nullable_start_ = true;
      else if (p.rhs.size() == 1) by_terminal_[p.rhs[0]].push_back(a);
      else {
        std::size_t b = index_.at(p.rhs[0]), c = index_.at(p.rhs[1]);
        by_left_[b].push_back({a, c});
        by_head_[a].push_back({b, c});
      }
    }
    start_ = index_.at(g_.start);
    words_ = (nts_.size() + 63) / 64;
  }

  const Grammar& grammar() const { return g_; }

  bool accepts(const Word& w) const {
    if (w.empty()) return nullable_start_;
    auto t = fill(w);
    return t && t->has(0, w.size(), start_);
  }

  std::optional<ParseTree> parse(const Word& w) const {
    ParseTree tree;
    if (w.empty()) {
      if (!nullable_start_) return std::nullopt;
      tree.nodes.push_back({g_.start, 0, 0, {}});
      return tree;
    }
    auto t = fill(w);
    if (!t || !t->has(0, w.size(), start_)) return std::nullopt;
    auto build = [&](auto&& self, std::size_t a, std::size_t i, std::size_t len) -> std::size_t {
      std::size_t id = tree.nodes.size();
      tree.nodes.push_back({nts_[a], i, len, {}});
      if (len == 1) return id;
      for (std::size_t k = 1; k < len; ++k)
        for (auto [b, c] : by_head_[a])
          if (t->has(i, k, b) && t->has(i + k, len - k, c)) {
            std::size_t l = self(self, b, i, k);
            std::size_t r = self(self, c, i + k, len - k);
            tree.nodes[id].children = {l, r};
            return id;
          }
      throw Error("cyk: inconsistent table");
    };
    build(build, start_, 0, w.size());
    return tree;
  }

 private:
  struct Table {
    std::size_t n, words;
    std::vector<std::uint64_t> bits;
    std::uint64_t* cell(std::size_t i, std::size_t len) { return bits.data() + ((i * n) + len - 1) * words; }
    const std::uint64_t* cell(std::size_t i, std::size_t len) const {
      return bits.data() + ((i * n) + len - 1) * words;
    }
    bool has(std::size_t i, std::size_t len, std::size_t a) const { return (cell(i, len)[a / 64] >> (a % 64)) & 1u; }
    void set(std::size_t i, std::size_t len, std::size_t a) { cell(i, len)[a / 64] |= std::uint64_t{1} << (a % 64); }
  };

  std::optional<Table> fill(const Word& w) const {
    const std::size_t n = w.size();
    Table t{n, words_, std::vector<std::uint64_t>(n * n * words_, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      auto it = by_terminal_.find(w[i]);
      if (it == by_terminal_.end()) return std::nullopt;
      for (std::size_t a : it->second) t.set(i, 1, a);
    }
    for (std::size_t len = 2; len <= n; ++len)
      for (std::size_t i = 0; i + len <= n; ++i)
        for (std::size_t k = 1; k < len; ++k) {
          const std::uint64_t* left = t.cell(i, k);
          for (std::size_t wi = 0; wi < words_; ++wi) {
            std::uint64_t bitsw = left[wi];
            while (bitsw) {
              std::size_t b = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(bitsw));
              bitsw &= bitsw - 1;
              for (auto [a, c] : by_left_[b])
                if (t.has(i + k, len - k, c)) t.set(i, len, a);
            }
          }
        }
    return t;
  }

  Grammar g_;
  std::map<Symbol, std::size_t> index_;
  std::vector<Symbol> nts_;
  std::map<Symbol, std::vector<std::size_t>> by_terminal_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_left_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_head_;
  bool nullable_start_ = false;
  std::size_t start_ = 0;
  std::size_t words_ = 0;
};

/// CYK membership; `cnf` must already be in Chomsky normal form.
inline bool cyk(const Grammar& cnf, const Word& w) { return CykParser(cnf).accepts(w); }

/// Exact membership for any context-free grammar (CNF computed once).
inline CykParser cfg_recognizer(const Grammar& g) { return CykParser(to_cnf(g)); }

/// L(g) restricted to words of length <= max_len, by dynamic programming
/// over the CNF grammar: the words of length n derived from each nonterminal.
inline std::set<Word> generate_bounded(const Grammar& g, std::size_t max_len) {
  Grammar cnf = to_cnf(g);
  std::map<Symbol, std::vector<std::set<Word>>> by_len;
  for (Symbol n : cnf.nonterminals) by_len[n].resize(max_len + 1);
  std::set<Word> out;
  for (const auto& p : cnf.productions) {
    if (p.rhs.empty()) out.insert(Word{});
    else if (p.rhs.size() == 1 && max_len >= 1) by_len[p.lhs[0]][1].insert(Word{p.rhs[0]});
  }
  for (std::size_t len = 2; len <= max_len; ++len)
    for (const auto& p : cnf.productions) {
      if (p.rhs.size() != 2) continue;
      auto& target = by_len[p.lhs[0]][len];
      const auto& lb = by_len[p.rhs[0]];
      const auto& rb = by_len[p.rhs[1]];
      for (std::size_t k = 1; k < len; ++k)
        for (const auto& x : lb[k])
          for (const auto& y : rb[len - k]) target.insert(concat(x, y));
    }
  for (std::size_t len = 1; len <= max_len; ++len) out.insert(by_len[cnf.start][len].begin(), by_len[cnf.start][len].end());
  return out;
}

// ---------------------------------------------------------------------------
// Leftmost derivations

struct Derivation {
  struct Step {
    std::size_t production;  // index into the grammar's productions
    std::size_t position;    // where its left-hand side was replaced
  };
  std::vector<Form> forms;
  std::vector<Step> steps;
};

/// Shortest leftmost derivation of w, by iterative deepening on the number
/// of steps. Sentential forms are pruned when their terminal prefix leaves
/// w or their least possible yield is longer than w. Membership is decided
/// by CYK first, so the deepening loop always terminates.
inline std::optional<Derivation> leftmost_derive(const Grammar& g, const Word& w) {
  require_context_free(g, "leftmost_derive");
  if (!cfg_recognizer(g).accepts(w)) return std::nullopt;

  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
  std::map<Symbol, std::size_t> min_yield;
  for (Symbol n : g.nonterminals) min_yield[n] = kInf;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      std::size_t sum = 0;
      for (Symbol s : p.rhs) sum += g.is_terminal(s) ? 1 : min_yield[s];
      if (sum < min_yield[p.lhs[0]]) {
        min_yield[p.lhs[0]] = sum;
        changed = true;
      }
    }
  }
  std::map<Symbol, std::vector<std::size_t>> rules;
  for (std::size_t i = 0; i < g.productions.size(); ++i) rules[g.productions[i].lhs[0]].push_back(i);

  Derivation d;
  std::map<Form, std::size_t> failed;  // form -> largest depth known to fail
  auto search = [&](auto&& self, const Form& form, std::size_t depth) -> bool {
    std::size_t pos = 0;
    while (pos < form.size() && g.is_terminal(form[pos])) {
      if (pos >= w.size() || form[pos] != w[pos]) return false;
      ++pos;
    }
    if (pos == form.size()) return form.size() == w.size();
    std::size_t yield = 0, open = 0;
    for (Symbol s : form) {
      yield += g.is_terminal(s) ? 1 : min_yield[s];
      open += g.is_nonterminal(s) ? 1 : 0;
    }
    if (yield > w.size() || open > depth) return false;
    if (auto it = failed.find(form); it != failed.end() && it->second >= depth) return false;
    for (std::size_t r : rules[form[pos]]) {
      const auto& rhs = g.productions[r].rhs;
      Form next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
      next.insert(next.end(), rhs.begin(), rhs.end());
      next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(pos) + 1, form.end());
      d.forms.push_back(next);
      d.steps.push_back({r, pos});
      if (self(self, next, depth - 1)) return true;
      d.forms.pop_back();
      d.steps.pop_back();
    }
    auto& f = failed[form];
    f = std::max(f, depth);
    return false;
  };
  const Form start{g.start};
  for (std::size_t depth = 0;; ++depth) {
    d.forms = {start};
    d.steps.clear();
    if (search(search, start, depth)) return d;
  }
}

// ---------------------------------------------------------------------------
// Grammars and pushdown automata

/// Two vertices q0 -(P_S, eps)-> qt with loops at qt: (Q_A P_{alpha reversed}, eps)
/// for A -> alpha over nonterminals and (Q_A, a) for A -> a.
inline Pda cfg_to_pda(const Grammar& g) {
  require_context_free(g, "cfg_to_pda");
  if (!is_rhs_normalized(g)) throw Error("cfg_to_pda: right-hand sides must be normalized first");
  Automaton<PdaLabel> a;
  VertexId q0 = a.add_vertex("q0");
  VertexId qt = a.add_vertex("qt");
  a.set_initial(q0);
  a.set_terminal(qt);
  a.add_edge(q0, {StackAction::pushing(g.start), Word{}}, qt);
  for (const auto& p : g.productions) {
    Symbol lhs = p.lhs[0];
    if (p.rhs.size() == 1 && g.is_terminal(p.rhs[0]))
      a.add_edge(qt, {StackAction::popping(lhs), Word{p.rhs[0]}}, qt);
    else
      a.add_edge(qt, {StackAction{false, Word{lhs}, reversed(p.rhs)}, Word{}}, qt);
  }
  return {std::move(a)};
}

/// Grammar with a nonterminal <p,q> for each vertex pair, generating the
/// words w with a path p -> q labelled (1, w):
///   <p,p> -> eps;  <p,q> -> <p,r><r,q>;
///   <p,q> -> a <r,s> b  for p -(P_d, a)-> r and s -(Q_d, b)-> q;
///   <p,q> -> a <r,q>    for p -(1, a)-> r;
/// and S -> <p0,t> for each terminal t. Edges labelled 0 lie on no
/// successful path and are dropped before de-acceleration.
inline Grammar pda_to_cfg(const Pda& input) {
  Pda pruned;
  pruned.graph.absorb_vertices(input.graph);
  if (!input.graph.empty()) {
    pruned.graph.set_initial(input.graph.initial());
    for (VertexId t : input.graph.terminals()) pruned.graph.set_terminal(t);
  }
  for (const auto& e : input.graph.edges())
    if (!e.label.first.zero) pruned.graph.add_edge(e.source, e.label, e.target);
  const Pda p = de_accelerate(pruned);
  const auto& a = p.graph;

  Grammar g;
  for (const auto& e : a.edges()) g.terminals.insert(e.label.second.begin(), e.label.second.end());
  detail::NameSource names(g.terminals);
  g.start = names.fresh("S");
  g.nonterminals.insert(g.start);
  if (a.empty()) return g;

  const std::size_t n = a.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> stack{v};
    reach[v][v] = true;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (std::size_t e : a.out_edges(x)) {
        VertexId y = a.edge(e).target;
        if (!reach[v][y]) {
          reach[v][y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  std::map<std::pair<VertexId, VertexId>, Symbol> nt;
  auto A = [&](VertexId x, VertexId y) {
    auto it = nt.find({x, y});
    if (it != nt.end()) return it->second;
    Symbol s = names.fresh("<" + a.name(x) + "," + a.name(y) + ">");
    g.nonterminals.insert(s);
    return nt.emplace(std::pair{x, y}, s).first->second;
  };

  for (VertexId t : a.terminals())
    if (reach[a.initial()][t]) g.add(g.start, Form{A(a.initial(), t)});
  for (VertexId x = 0; x < n; ++x) g.add(A(x, x), Form{});
  for (VertexId x = 0; x < n; ++x)
    for (VertexId z = 0; z < n; ++z) {
      if (!reach[x][z]) continue;
      for (VertexId r = 0; r < n; ++r)
        if (r != x && r != z && reach[x][r] && reach[r][z]) g.add(A(x, z), Form{A(x, r), A(r, z)});
    }
  for (const auto& push : a.edges()) {
    if (push.label.first.push.size() != 1) continue;
    Symbol d = push.label.first.push[0];
    for (const auto& pop : a.edges()) {
      if (pop.label.first.pop.size() != 1 || pop.label.first.pop[0] != d) continue;
      if (!reach[push.target][pop.source]) continue;
      Form rhs = push.label.second;
      rhs.push_back(A(push.target, pop.source));
      rhs.insert(rhs.end(), pop.label.second.begin(), pop.label.second.end());
      g.add(A(push.source, pop.target), std::move(rhs));
    }
  }
  for (const auto& e : a.edges()) {
    if (!e.label.first.is_one()) continue;
    for (VertexId z = 0; z < n; ++z) {
      if (!reach[e.target][z]) continue;
      Form rhs = e.label.second;
      rhs.push_back(A(e.target, z));
      g.add(A(e.source, z), std::move(rhs));
    }
  }
  return remove_useless(g);
}

/// S -> eps | SS | x S x^-1 for every letter x of the alphabet.
inline Grammar free_group_wp_grammar(const SymmetricAlphabet& pairs) {
  if (pairs.rank() == 0) throw Error("free_group_wp_grammar: at least one inverse pair is required");
  Grammar g;
  g.terminals = pairs.letter_set();
  std::set<Symbol> used = g.terminals;
  g.start = fresh_symbol("S", used);
  g.nonterminals = {g.start};
  Symbol s = g.start;
  g.add(s, Form{});
  g.add(s, Form{s, s});
  for (Symbol x : pairs.positives()) g.add(s, Form{x, s, pairs.inverse(x)});
  for (Symbol x : pairs.positives()) g.add(s, Form{pairs.inverse(x), s, x});
  return g;
}

}  // namespace mfa
