#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mfa/monoid.hpp"

namespace mfa {

using VertexId = std::size_t;

template <class L>
struct Edge {
  VertexId source;
  L label;
  VertexId target;

  auto operator<=>(const Edge&) const = default;
};

/// Finite directed multigraph with edges labelled by elements of L, one
/// initial vertex and a set of terminal vertices. Edge ids are positions
/// in `edges()`. An automaton with no vertices accepts nothing.
template <class L>
class Automaton {
 public:
  using Label = L;

  Automaton() = default;

  VertexId add_vertex(std::string name = {}) {
    VertexId id = names_.size();
    if (name.empty()) name = "q" + std::to_string(id);
    while (used_names_.contains(name)) name += '\'';
    used_names_.insert(name);
    names_.push_back(std::move(name));
    terminal_.push_back(false);
    out_.emplace_back();
    in_.emplace_back();
    return id;
  }

  std::size_t add_edge(VertexId source, L label, VertexId target) {
    check(source);
    check(target);
    std::size_t id = edges_.size();
    edges_.push_back({source, std::move(label), target});
    out_[source].push_back(id);
    in_[target].push_back(id);
    return id;
  }

  void set_initial(VertexId v) {
    check(v);
    initial_ = v;
  }

  void set_terminal(VertexId v, bool terminal = true) {
    check(v);
    terminal_[v] = terminal;
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return names_.empty(); }
  VertexId initial() const { return initial_; }
  bool is_terminal(VertexId v) const { return terminal_.at(v); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<Edge<L>>& edges() const { return edges_; }
  const Edge<L>& edge(std::size_t id) const { return edges_.at(id); }
  const std::vector<std::size_t>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<std::size_t>& in_edges(VertexId v) const { return in_.at(v); }

  std::vector<VertexId> terminals() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < terminal_.size(); ++v)
      if (terminal_[v]) out.push_back(v);
    return out;
  }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    for (VertexId v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }

  /// Copies every vertex (names kept) and returns the id offset.
  template <class M>
  VertexId absorb_vertices(const Automaton<M>& other, const std::string& prefix = {}) {
    VertexId offset = vertex_count();
    for (VertexId v = 0; v < other.vertex_count(); ++v) add_vertex(prefix + other.name(v));
    return offset;
  }

  bool operator==(const Automaton& o) const {
    return names_ == o.names_ && edges_ == o.edges_ && initial_ == o.initial_ && terminal_ == o.terminal_;
  }

 private:
  void check(VertexId v) const {
    if (v >= names_.size()) throw Error("vertex id " + std::to_string(v) + " out of range");
  }

  std::vector<std::string> names_;
  std::unordered_set<std::string> used_names_;
  std::vector<Edge<L>> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<bool> terminal_;
  VertexId initial_ = 0;
};

/// Accepted labels satisfying `keep`, which must be closed under taking
/// prefixes of paths: once a partial label fails `keep`, every extension
/// fails too (e.g. "all word components have length <= n").
template <LabelMonoid L>
std::set<L> enumerate_within(const Automaton<L>& aut, const std::function<bool(const L&)>& keep) {
  std::set<L> accepted;
  if (aut.empty()) return accepted;
  std::set<std::pair<VertexId, L>> seen;
  std::deque<std::pair<VertexId, L>> queue;
  L start = unit_of<L>();
  if (!keep(start)) return accepted;
  seen.insert({aut.initial(), start});
  queue.push_back({aut.initial(), start});
  while (!queue.empty()) {
    auto [v, label] = queue.front();
    queue.pop_front();
    if (aut.is_terminal(v)) accepted.insert(label);
    for (std::size_t e : aut.out_edges(v)) {
      const auto& edge = aut.edge(e);
      L next = multiply(label, edge.label);
      if (!keep(next)) continue;
      if (seen.insert({edge.target, next}).second) queue.push_back({edge.target, std::move(next)});
    }
  }
  return accepted;
}

/// Labels of successful paths using at most `max_path_len` edges whose
/// label is not the unit. Unit-labelled edges (bridges, padding) are free,
/// so the result does not depend on how a construction wires its pieces.
template <LabelMonoid L>
std::set<L> enumerate_labels(const Automaton<L>& aut, std::size_t max_path_len) {
  std::set<L> accepted;
  if (aut.empty()) return accepted;
  // 0-1 breadth-first search keeping the lightest weight per (vertex, label).
  std::map<std::pair<VertexId, L>, std::size_t> best;
  std::deque<std::pair<VertexId, L>> queue;
  L start = unit_of<L>();
  best[{aut.initial(), start}] = 0;
  queue.push_back({aut.initial(), start});
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop_front();
    std::size_t weight = best[key];
    auto [v, label] = key;
    if (aut.is_terminal(v)) accepted.insert(label);
    for (std::size_t e : aut.out_edges(v)) {
      const auto& edge = aut.edge(e);
      bool free = is_unit(edge.label);
      std::size_t w = weight + (free ? 0 : 1);
      if (w > max_path_len) continue;
      std::pair<VertexId, L> next{edge.target, multiply(label, edge.label)};
      auto it = best.find(next);
      if (it != best.end() && it->second <= w) continue;
      best[next] = w;
      if (free) queue.push_front(std::move(next));
      else queue.push_back(std::move(next));
    }
  }
  return accepted;
}

/// Words of length <= max_len accepted by an automaton over a free monoid.
inline std::set<Word> language_upto(const Automaton<Word>& aut, std::size_t max_len) {
  return enumerate_within<Word>(aut, [max_len](const Word& w) { return w.size() <= max_len; });
}

template <class L>
bool is_normalized(const Automaton<L>& aut) {
  if (aut.empty()) return false;
  auto ts = aut.terminals();
  return aut.in_edges(aut.initial()).empty() && ts.size() == 1 && aut.out_edges(ts[0]).empty() &&
         ts[0] != aut.initial();
}

/// Equivalent automaton whose initial vertex has no inedges and whose single
/// terminal vertex has no outedges. The initial vertex is duplicated when it
/// has inedges; terminal vertices with outedges get duplicates carrying their
/// inedges; all terminals are then identified into one. An initial vertex
/// that is also terminal keeps the empty path through a unit-labelled edge.
template <LabelMonoid L>
Automaton<L> normalize(const Automaton<L>& aut) {
  if (is_normalized(aut)) return aut;
  const std::size_t n = aut.vertex_count();
  struct Pending {
    std::size_t source, target;
    L label;
  };
  // Abstract vertex ids: 0..n-1 original, n = fresh initial, n+1 = terminal.
  const std::size_t fresh_init = n, final_v = n + 1;
  std::vector<Pending> edges;
  for (const auto& e : aut.edges()) edges.push_back({e.source, e.target, e.label});
  std::vector<bool> terminal(n + 2, false);
  for (VertexId v = 0; v < n; ++v) terminal[v] = aut.is_terminal(v);

  std::size_t init = fresh_init;
  bool use_fresh_init = true;
  if (!aut.empty()) {
    init = aut.initial();
    use_fresh_init = !aut.in_edges(init).empty();
    if (use_fresh_init) {
      for (std::size_t e : aut.out_edges(init)) edges.push_back({fresh_init, aut.edge(e).target, aut.edge(e).label});
      terminal[fresh_init] = terminal[init];
      init = fresh_init;
    }
  }

  std::vector<std::vector<std::size_t>> in(n + 2);
  std::vector<std::size_t> out_degree(n + 2, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    in[edges[i].target].push_back(i);
    ++out_degree[edges[i].source];
  }
  std::vector<bool> merged(n + 2, false);
  const std::size_t original_edges = edges.size();
  for (std::size_t v = 0; v < n + 1; ++v) {
    if (!terminal[v]) continue;
    if (v == init) {
      edges.push_back({init, final_v, unit_of<L>()});
    } else if (out_degree[v] == 0) {
      merged[v] = true;
    } else {
      for (std::size_t i : in[v])
        if (i < original_edges) edges.push_back({edges[i].source, final_v, edges[i].label});
    }
  }

  Automaton<L> out;
  std::vector<VertexId> map(n + 2);
  for (VertexId v = 0; v < n; ++v)
    if (!merged[v]) map[v] = out.add_vertex(aut.name(v));
  if (use_fresh_init) map[fresh_init] = out.add_vertex(aut.empty() ? "init" : aut.name(aut.initial()) + "'");
  map[final_v] = out.add_vertex("final");
  for (VertexId v = 0; v < n; ++v)
    if (merged[v]) map[v] = map[final_v];
  out.set_initial(map[init]);
  out.set_terminal(map[final_v]);
  for (auto& e : edges) out.add_edge(map[e.source], std::move(e.label), map[e.target]);
  return out;
}

/// Keeps exactly the vertices and edges lying on some successful path. When
/// nothing is accepted the result is the lone initial vertex.
template <class L>
Automaton<L> trim(const Automaton<L>& aut) {
  Automaton<L> out;
  if (aut.empty()) return out;
  std::size_t n = aut.vertex_count();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<VertexId> stack{aut.initial()};
  fwd[aut.initial()] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t e : aut.out_edges(v)) {
      VertexId t = aut.edge(e).target;
      if (!fwd[t]) fwd[t] = true, stack.push_back(t);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (aut.is_terminal(v)) bwd[v] = true, stack.push_back(v);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t e : aut.in_edges(v)) {
      VertexId s = aut.edge(e).source;
      if (!bwd[s]) bwd[s] = true, stack.push_back(s);
    }
  }
  std::vector<std::optional<VertexId>> map(n);
  if (!(fwd[aut.initial()] && bwd[aut.initial()])) {
    out.set_initial(out.add_vertex(aut.name(aut.initial())));
    return out;
  }
  for (VertexId v = 0; v < n; ++v)
    if (fwd[v] && bwd[v]) map[v] = out.add_vertex(aut.name(v));
  out.set_initial(*map[aut.initial()]);
  for (VertexId v = 0; v < n; ++v)
    if (map[v] && aut.is_terminal(v)) out.set_terminal(*map[v]);
  for (const auto& e : aut.edges())
    if (map[e.source] && map[e.target]) out.add_edge(*map[e.source], e.label, *map[e.target]);
  return out;
}

enum class Combine { union_of, product, star };

/// Rational operations wired with unit-labelled bridge edges. Inputs are used
/// as they are: bridges do not need the initial/terminal normal form.
template <LabelMonoid L>
Automaton<L> combine(Combine kind, const Automaton<L>& a, const Automaton<L>* b = nullptr) {
  if (kind != Combine::star && b == nullptr) throw Error("combine: second operand required");
  Automaton<L> out;
  const L one = unit_of<L>();
  auto copy_into = [&out](const Automaton<L>& src, const std::string& prefix) {
    VertexId off = out.absorb_vertices(src, prefix);
    for (const auto& e : src.edges()) out.add_edge(off + e.source, e.label, off + e.target);
    return off;
  };
  switch (kind) {
    case Combine::union_of: {
      VertexId start = out.add_vertex("start");
      out.set_initial(start);
      for (const Automaton<L>* part : {&a, b}) {
        if (part->empty()) continue;
        VertexId off = copy_into(*part, part == &a ? "l." : "r.");
        out.add_edge(start, one, off + part->initial());
        for (VertexId t : part->terminals()) out.set_terminal(off + t);
      }
      break;
    }
    case Combine::product: {
      if (a.empty() || b->empty()) {
        out.set_initial(out.add_vertex("start"));
        break;
      }
      VertexId oa = copy_into(a, "l.");
      VertexId ob = copy_into(*b, "r.");
      out.set_initial(oa + a.initial());
      for (VertexId t : a.terminals()) out.add_edge(oa + t, one, ob + b->initial());
      for (VertexId t : b->terminals()) out.set_terminal(ob + t);
      break;
    }
    case Combine::star: {
      VertexId hub = out.add_vertex("hub");
      out.set_initial(hub);
      out.set_terminal(hub);
      if (a.empty()) break;
      VertexId oa = copy_into(a, "s.");
      out.add_edge(hub, one, oa + a.initial());
      for (VertexId t : a.terminals()) out.add_edge(oa + t, one, hub);
      break;
    }
  }
  return out;
}

/// Edgewise relabelling by a monoid homomorphism.
template <class L, class F>
auto map_labels(const Automaton<L>& aut, F&& hom) {
  using M = std::decay_t<decltype(hom(std::declval<const L&>()))>;
  Automaton<M> out;
  out.absorb_vertices(aut);
  for (const auto& e : aut.edges()) out.add_edge(e.source, hom(e.label), e.target);
  if (!aut.empty()) {
    out.set_initial(aut.initial());
    for (VertexId t : aut.terminals()) out.set_terminal(t);
  }
  return out;
}

/// Automaton accepting exactly the finite set `labels`, one edge per element.
template <LabelMonoid L>
Automaton<L> finite_acceptor(const std::vector<L>& labels) {
  Automaton<L> out;
  VertexId s = out.add_vertex("s");
  VertexId t = out.add_vertex("t");
  out.set_initial(s);
  out.set_terminal(t);
  for (const auto& l : labels) out.add_edge(s, l, t);
  return out;
}

}  // namespace mfa
