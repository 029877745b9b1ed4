#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mfa/family.hpp"

namespace mfa {

/// Pushdown automaton: an automaton over M_cf x Sigma* accepting w when a
/// successful path is labelled (1, w).
struct Pda {
  Automaton<PdaLabel> graph;

  FamilyAcceptor<StackAction> family() const {
    return {graph, [](const StackAction& a) { return a.is_one(); }};
  }

  std::set<Symbol> stack_symbols() const {
    std::set<Symbol> out;
    for (const auto& e : graph.edges()) {
      out.insert(e.label.first.pop.begin(), e.label.first.pop.end());
      out.insert(e.label.first.push.begin(), e.label.first.push.end());
    }
    return out;
  }

  std::set<Symbol> input_alphabet() const {
    std::set<Symbol> out;
    for (const auto& e : graph.edges()) out.insert(e.label.second.begin(), e.label.second.end());
    return out;
  }
};

/// Generator factors of a stack action: pops of the trailing symbols first
/// (Q_w = Q_{w_n} ... Q_{w_1}), then pushes in order.
inline std::vector<StackAction> stack_factors(const StackAction& a) {
  if (a.zero) throw Error("stack action 0 has no generator factorisation");
  std::vector<StackAction> out;
  for (auto it = a.pop.rbegin(); it != a.pop.rend(); ++it) out.push_back(StackAction::popping(*it));
  for (Symbol d : a.push) out.push_back(StackAction::pushing(d));
  return out;
}

inline bool is_one_step(const PdaLabel& l) {
  return !l.first.zero && l.first.pop.size() + l.first.push.size() <= 1 && l.second.size() <= 1;
}

inline bool is_one_step(const Pda& p) {
  for (const auto& e : p.graph.edges())
    if (!is_one_step(e.label)) return false;
  return true;
}

/// Factors every edge into moves reading at most one letter and performing
/// at most one push or pop, through fresh chain vertices: stack factors
/// first, then input letters.
inline Pda de_accelerate(const Pda& p) {
  for (const auto& e : p.graph.edges())
    if (e.label.first.zero) throw Error("de_accelerate: edge labelled with stack action 0");
  if (is_one_step(p)) return p;
  Automaton<PdaLabel> out;
  out.absorb_vertices(p.graph);
  out.set_initial(p.graph.initial());
  for (VertexId t : p.graph.terminals()) out.set_terminal(t);
  for (const auto& e : p.graph.edges()) {
    if (is_one_step(e.label)) {
      out.add_edge(e.source, e.label, e.target);
      continue;
    }
    std::vector<PdaLabel> chain;
    for (auto& f : stack_factors(e.label.first)) chain.push_back({std::move(f), Word{}});
    for (Symbol a : e.label.second) chain.push_back({StackAction::one(), Word{a}});
    VertexId cur = e.source;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      VertexId mid = out.add_vertex();
      out.add_edge(cur, chain[i], mid);
      cur = mid;
    }
    out.add_edge(cur, chain.back(), e.target);
  }
  return {std::move(out)};
}

/// A generator P_d (push) or Q_d (pop) of M_cf.
struct StackGenerator {
  bool push;
  Symbol symbol;

  StackAction value() const { return push ? StackAction::pushing(symbol) : StackAction::popping(symbol); }
  auto operator<=>(const StackGenerator&) const = default;
};

/// Decomposition of a generator word representing 1. A `wrap` node covers
/// P_d B Q_d with its inner word B as the only child (none when B is empty);
/// a `split` node covers two consecutive pieces that each represent 1.
struct DyckAnalysis {
  enum class Kind { wrap, split };
  struct Node {
    Kind kind;
    std::size_t begin;
    std::size_t length;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  /// For words longer than 2: a proper subword of length at least n/2
  /// representing 1, as (begin, length).
  std::optional<std::pair<std::size_t, std::size_t>> long_subword;
};

inline StackAction evaluate(std::span<const StackGenerator> word) {
  StackAction acc = StackAction::one();
  for (const auto& g : word) acc = mcf_multiply(acc, g.value());
  return acc;
}

/// Matches each push with the pop that cancels it and reads off the
/// wrap/split structure. Fails (nullopt) when the word does not represent 1.
/// The empty word represents 1 and gets an analysis without nodes.
inline std::optional<DyckAnalysis> dyck_analyze(std::span<const StackGenerator> word) {
  if (word.empty()) return DyckAnalysis{};
  if (!evaluate(word).is_one()) return std::nullopt;
  const std::size_t n = word.size();
  std::vector<std::size_t> match(n);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < n; ++i) {
    if (word[i].push) {
      open.push_back(i);
      continue;
    }
    if (open.empty() || word[open.back()].symbol != word[i].symbol) return std::nullopt;
    match[open.back()] = i;
    open.pop_back();
  }
  if (!open.empty()) return std::nullopt;

  DyckAnalysis out;
  auto build = [&](auto&& self, std::size_t begin, std::size_t end) -> std::size_t {
    std::size_t id = out.nodes.size();
    std::size_t close = match[begin];
    if (close + 1 == end) {
      out.nodes.push_back({DyckAnalysis::Kind::wrap, begin, end - begin, {}});
      if (end - begin > 2) {
        std::size_t child = self(self, begin + 1, end - 1);
        out.nodes[id].children.push_back(child);
      }
    } else {
      out.nodes.push_back({DyckAnalysis::Kind::split, begin, end - begin, {}});
      std::size_t left = self(self, begin, close + 1);
      std::size_t right = self(self, close + 1, end);
      out.nodes[id].children = {left, right};
    }
    return id;
  };
  build(build, 0, n);

  if (n > 2) {
    const auto& root = out.nodes[0];
    if (root.kind == DyckAnalysis::Kind::wrap) {
      out.long_subword = {{1, n - 2}};
    } else {
      const auto& l = out.nodes[root.children[0]];
      const auto& r = out.nodes[root.children[1]];
      out.long_subword = l.length >= r.length ? std::pair{l.begin, l.length} : std::pair{r.begin, r.length};
    }
  }
  return out;
}

}  // namespace mfa
