#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mfa/automaton.hpp"

namespace mfa {

/// Tree (shared as a DAG) of literals, unions, products and stars over L.
/// Constructors fold away the empty set and unit factors.
template <LabelMonoid L>
class RationalExpression {
 public:
  enum class Kind { literal, union_of, product, star };

  struct Node {
    Kind kind;
    std::vector<L> literal;
    std::vector<std::shared_ptr<const Node>> children;
  };

  static RationalExpression literal(std::vector<L> values) {
    std::set<L> uniq(values.begin(), values.end());
    return RationalExpression(std::make_shared<Node>(Node{Kind::literal, {uniq.begin(), uniq.end()}, {}}));
  }
  static RationalExpression nothing() { return literal({}); }
  static RationalExpression unit() { return literal({unit_of<L>()}); }

  static RationalExpression union_of(const std::vector<RationalExpression>& parts) {
    std::vector<std::shared_ptr<const Node>> kids;
    for (const auto& p : parts)
      if (!p.is_nothing()) kids.push_back(p.node_);
    if (kids.empty()) return nothing();
    if (kids.size() == 1) return RationalExpression(kids[0]);
    return RationalExpression(std::make_shared<Node>(Node{Kind::union_of, {}, std::move(kids)}));
  }

  static RationalExpression product(const std::vector<RationalExpression>& parts) {
    std::vector<std::shared_ptr<const Node>> kids;
    for (const auto& p : parts) {
      if (p.is_nothing()) return nothing();
      if (!p.is_unit()) kids.push_back(p.node_);
    }
    if (kids.empty()) return unit();
    if (kids.size() == 1) return RationalExpression(kids[0]);
    return RationalExpression(std::make_shared<Node>(Node{Kind::product, {}, std::move(kids)}));
  }

  static RationalExpression star(const RationalExpression& e) {
    if (e.is_nothing() || e.is_unit()) return unit();
    return RationalExpression(std::make_shared<Node>(Node{Kind::star, {}, {e.node_}}));
  }

  const Node& node() const { return *node_; }
  Kind kind() const { return node_->kind; }

  bool is_nothing() const { return node_->kind == Kind::literal && node_->literal.empty(); }
  bool is_unit() const {
    return node_->kind == Kind::literal && node_->literal.size() == 1 && mfa::is_unit(node_->literal[0]);
  }

  std::string to_string() const { return format(*node_); }

 private:
  explicit RationalExpression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::string format(const Node& n) {
    switch (n.kind) {
      case Kind::literal: {
        if (n.literal.empty()) return "{}";
        if (n.literal.size() == 1) return format_label(n.literal[0]);
        std::string out = "{";
        for (std::size_t i = 0; i < n.literal.size(); ++i) out += (i ? ", " : "") + format_label(n.literal[i]);
        return out + "}";
      }
      case Kind::union_of: {
        std::string out = "(";
        for (std::size_t i = 0; i < n.children.size(); ++i) out += (i ? " + " : "") + format(*n.children[i]);
        return out + ")";
      }
      case Kind::product: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) out += (i ? " " : "") + format(*n.children[i]);
        return out;
      }
      case Kind::star: {
        const Node& c = *n.children[0];
        bool atomic = c.kind == Kind::union_of || (c.kind == Kind::literal);
        return (atomic ? format(c) : "(" + format(c) + ")") + "*";
      }
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

/// Recursive edge elimination. With e = p -a-> p' the lowest-id remaining
/// edge and Gamma_0 the automaton without it, the accepted set is
///   S0 + S1 a (S2 a)* S3
/// where S0 is Gamma_0 itself, S1 runs init -> p, S2 runs p' -> p and S3
/// runs p' -> the original terminals. Subproblems are memoised on
/// (edges removed, initial vertex, terminal choice), so shared pieces are
/// shared nodes in the resulting expression DAG.
template <LabelMonoid L>
RationalExpression<L> to_expression(const Automaton<L>& aut) {
  using Expr = RationalExpression<L>;
  if (aut.empty()) return Expr::nothing();
  const std::size_t m = aut.edge_count();
  constexpr std::size_t kOriginal = static_cast<std::size_t>(-1);
  std::map<std::tuple<std::size_t, VertexId, std::size_t>, Expr> memo;

  auto solve = [&](auto&& self, std::size_t k, VertexId from, std::size_t to) -> Expr {
    auto key = std::make_tuple(k, from, to);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Expr result = Expr::nothing();
    if (k == m) {
      bool accepting = to == kOriginal ? aut.is_terminal(from) : from == to;
      result = accepting ? Expr::unit() : Expr::nothing();
    } else {
      const auto& e = aut.edge(k);
      Expr a = Expr::literal({e.label});
      Expr s0 = self(self, k + 1, from, to);
      Expr s1 = self(self, k + 1, from, e.source);
      Expr s2 = self(self, k + 1, e.target, e.source);
      Expr s3 = self(self, k + 1, e.target, to);
      Expr loop = Expr::star(Expr::product({s2, a}));
      result = Expr::union_of({s0, Expr::product({s1, a, loop, s3})});
    }
    memo.emplace(key, result);
    return result;
  };
  return solve(solve, 0, aut.initial(), kOriginal);
}

/// Automaton accepting the evaluation of `e`, one edge per literal element.
template <LabelMonoid L>
Automaton<L> expr_to_automaton(const RationalExpression<L>& e) {
  using Expr = RationalExpression<L>;
  using Kind = typename Expr::Kind;
  auto build = [](auto&& self, const typename Expr::Node& n) -> Automaton<L> {
    switch (n.kind) {
      case Kind::literal:
        return finite_acceptor<L>(n.literal);
      case Kind::union_of:
      case Kind::product: {
        Automaton<L> acc = self(self, *n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          Automaton<L> next = self(self, *n.children[i]);
          acc = combine(n.kind == Kind::union_of ? Combine::union_of : Combine::product, acc, &next);
        }
        return acc;
      }
      case Kind::star:
        return combine(Combine::star, self(self, *n.children[0]));
    }
    return {};
  };
  return build(build, e.node());
}

/// Independent bounded evaluator: every value of `e` expressible with at
/// most `depth` non-unit literal factors. Matches the weight used by
/// enumerate_labels on the corresponding automaton.
template <LabelMonoid L>
std::set<L> expr_enumerate(const RationalExpression<L>& e, std::size_t depth) {
  using Expr = RationalExpression<L>;
  using Kind = typename Expr::Kind;
  using Node = typename Expr::Node;
  using Weighted = std::map<L, std::size_t>;  // value -> lightest weight

  auto add = [](Weighted& into, const L& v, std::size_t w) {
    auto it = into.find(v);
    if (it == into.end()) into.emplace(v, w);
    else if (w < it->second) it->second = w;
  };
  auto times = [&](const Weighted& a, const Weighted& b) {
    Weighted out;
    for (const auto& [x, wx] : a)
      for (const auto& [y, wy] : b)
        if (wx + wy <= depth) add(out, multiply(x, y), wx + wy);
    return out;
  };

  std::map<const Node*, Weighted> memo;
  auto eval = [&](auto&& self, const Node& n) -> Weighted {
    if (auto it = memo.find(&n); it != memo.end()) return it->second;
    Weighted out;
    switch (n.kind) {
      case Kind::literal:
        for (const auto& v : n.literal) {
          std::size_t w = is_unit(v) ? 0 : 1;
          if (w <= depth) add(out, v, w);
        }
        break;
      case Kind::union_of:
        for (const auto& c : n.children)
          for (const auto& [v, w] : self(self, *c)) add(out, v, w);
        break;
      case Kind::product:
        out = self(self, *n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) out = times(out, self(self, *n.children[i]));
        break;
      case Kind::star: {
        Weighted base = self(self, *n.children[0]);
        add(out, unit_of<L>(), 0);
        while (true) {
          Weighted next = out;
          for (const auto& [v, w] : times(out, base)) add(next, v, w);
          if (next == out) break;
          out = std::move(next);
        }
        break;
      }
    }
    memo.emplace(&n, out);
    return out;
  };

  std::set<L> values;
  for (const auto& [v, w] : eval(eval, e.node())) values.insert(v);
  return values;
}

}  // namespace mfa
