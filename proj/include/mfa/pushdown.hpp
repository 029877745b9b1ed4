#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "mfa/grammar.hpp"
#include "mfa/pda.hpp"

namespace mfa {

/// Exact membership for a PDA: the equivalent grammar is built and brought
/// to Chomsky normal form once, then each query is a CYK run.
class PdaRecognizer {
 public:
  explicit PdaRecognizer(const Pda& p) : grammar_(pda_to_cfg(p)), parser_(to_cnf(grammar_)) {}

  bool accepts(const Word& w) const { return parser_.accepts(w); }
  const Grammar& grammar() const { return grammar_; }
  const CykParser& parser() const { return parser_; }

 private:
  Grammar grammar_;
  CykParser parser_;
};

inline bool accepts(const Pda& p, const Word& w) { return PdaRecognizer(p).accepts(w); }

enum class CfCombine { union_of, product, star };

namespace detail {

/// New initial vertex pushing `e` in front of the old one, and a single new
/// terminal reached from every old terminal by popping `e`.
inline Automaton<PdaLabel> bracket(const Automaton<PdaLabel>& a, Symbol e) {
  Automaton<PdaLabel> out;
  VertexId in = out.add_vertex("in");
  out.set_initial(in);
  VertexId off = out.absorb_vertices(a, "b.");
  VertexId done = out.add_vertex("out");
  out.set_terminal(done);
  if (a.empty()) return out;
  for (const auto& edge : a.edges()) out.add_edge(off + edge.source, edge.label, off + edge.target);
  out.add_edge(in, {StackAction::pushing(e), Word{}}, off + a.initial());
  for (VertexId t : a.terminals()) out.add_edge(off + t, {StackAction::popping(e), Word{}}, done);
  return out;
}

}  // namespace detail

/// Union joins the initial vertices. For product and star each operand is
/// first bracketed by a fresh stack marker e, (P_e, eps) in and (Q_e, eps)
/// out, so a run that leaves stack symbols behind for the next operand is
/// labelled 0 and accepts nothing.
inline Pda combine_cf(CfCombine kind, const Pda& p, const Pda* q = nullptr) {
  if (kind != CfCombine::star && q == nullptr) throw Error("combine_cf: second operand required");
  if (kind == CfCombine::union_of) return {combine(Combine::union_of, p.graph, &q->graph)};
  std::set<Symbol> in_use = p.stack_symbols();
  if (q) {
    auto more = q->stack_symbols();
    in_use.insert(more.begin(), more.end());
  }
  Symbol e = fresh_symbol("e", in_use);
  auto bp = detail::bracket(p.graph, e);
  if (kind == CfCombine::star) return {combine(Combine::star, bp)};
  auto bq = detail::bracket(q->graph, e);
  return {combine(Combine::product, bp, &bq)};
}

// ---------------------------------------------------------------------------
// Pumping

struct CflPump {
  Word u, v, w, x, y;
  std::size_t k = 0;  // pumping constant of the grammar

  Word pumped(std::size_t i) const {
    return concat(concat(concat(u, power(v, i)), concat(w, power(x, i))), y);
  }
};

/// 2^(|N|+1) for the CNF grammar, saturating.
inline std::size_t cfl_pumping_constant(const Grammar& cnf) {
  std::size_t n = cnf.nonterminals.size() + 1;
  if (n >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
  return std::size_t{1} << n;
}

/// Decomposition z = uvwxy read off a CYK parse tree: on a deepest
/// root-to-leaf path, the lowest nonterminal repeated below itself spans vwx
/// and its lower copy spans w. Words shorter than the constant are accepted
/// whenever their tree has such a repetition. Pumping is checked by CYK for
/// i = 0..3 before the split is returned.
inline CflPump pump_cfl(const Grammar& g, const Word& z) {
  require_context_free(g, "pump_cfl");
  CykParser parser(to_cnf(g));
  auto tree = parser.parse(z);
  if (!tree) throw Error("pump_cfl: word is not in the language");
  const auto& nodes = tree->nodes;

  std::vector<std::size_t> height(nodes.size(), 0);
  for (std::size_t i = nodes.size(); i-- > 0;)
    for (std::size_t c : nodes[i].children) height[i] = std::max(height[i], height[c] + 1);
  std::vector<std::size_t> path{0};
  while (!nodes[path.back()].children.empty()) {
    const auto& ch = nodes[path.back()].children;
    path.push_back(height[ch[0]] >= height[ch[1]] ? ch[0] : ch[1]);
  }

  std::optional<std::pair<std::size_t, std::size_t>> found;  // (upper, lower)
  std::map<Symbol, std::size_t> below;
  for (std::size_t i = path.size(); i-- > 0 && !found;) {
    Symbol s = nodes[path[i]].symbol;
    if (auto it = below.find(s); it != below.end()) found = {{path[i], it->second}};
    else below.emplace(s, path[i]);
  }
  if (!found) throw Error("pump_cfl: word too short, no nonterminal repeats on a longest path");

  const auto& up = nodes[found->first];
  const auto& low = nodes[found->second];
  auto slice = [&](std::size_t from, std::size_t to) {
    return Word(z.begin() + static_cast<std::ptrdiff_t>(from), z.begin() + static_cast<std::ptrdiff_t>(to));
  };
  CflPump out;
  out.u = slice(0, up.begin);
  out.v = slice(up.begin, low.begin);
  out.w = slice(low.begin, low.begin + low.length);
  out.x = slice(low.begin + low.length, up.begin + up.length);
  out.y = slice(up.begin + up.length, z.size());
  out.k = cfl_pumping_constant(parser.grammar());
  if (out.v.empty() && out.x.empty()) throw Error("pump_cfl: degenerate split");
  for (std::size_t i = 0; i <= 3; ++i)
    if (!parser.accepts(out.pumped(i))) throw Error("pump_cfl: pumped word rejected");
  return out;
}

/// Exhaustive search for z = uvwxy with vx nonempty, |vwx| <= k and
/// u v^i w x^i y in the language for i = 0..max_i, judged by `member`.
inline std::optional<CflPump> find_cfl_pumping(const Word& z, std::size_t k, const std::function<bool(const Word&)>& member,
                                               std::size_t max_i = 3) {
  const std::size_t n = z.size();
  auto slice = [&](std::size_t from, std::size_t to) {
    return Word(z.begin() + static_cast<std::ptrdiff_t>(from), z.begin() + static_cast<std::ptrdiff_t>(to));
  };
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = a; b <= n && b - a <= k; ++b)
      for (std::size_t c = b; c <= n && c - a <= k; ++c)
        for (std::size_t d = c; d <= n && d - a <= k; ++d) {
          if (a == b && c == d) continue;
          CflPump p{slice(0, a), slice(a, b), slice(b, c), slice(c, d), slice(d, n), k};
          bool ok = true;
          for (std::size_t i = 0; i <= max_i && ok; ++i) ok = member(p.pumped(i));
          if (ok) return p;
        }
  return std::nullopt;
}

}  // namespace mfa
