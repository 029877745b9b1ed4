#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mfa/automaton.hpp"
#include "mfa/grammar.hpp"
#include "mfa/group.hpp"
#include "mfa/monoid.hpp"

namespace mfa {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

/// Non-empty, non-comment lines split on whitespace, with 1-based numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream ss{std::string(line)};
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (!toks.empty()) out.emplace_back(line_no, std::move(toks));
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Automata

template <class L>
struct label_kind;
template <>
struct label_kind<Word> {
  static constexpr const char* name = "word";
};
template <>
struct label_kind<WordPair> {
  static constexpr const char* name = "word-pair";
};
template <>
struct label_kind<PdaLabel> {
  static constexpr const char* name = "mcf-word";
};
template <>
struct label_kind<StackAutomatonLabel> {
  static constexpr const char* name = "msa-word";
};
template <>
struct label_kind<std::pair<Trivial, Word>> {
  static constexpr const char* name = "trivial-word";
};

/// Label kind named by a `monoid` line, if the text has one.
inline std::optional<std::string> declared_label_kind(std::string_view text) {
  for (const auto& [line, toks] : detail::tokenize_lines(text))
    if (toks[0] == "monoid" && toks.size() == 2) return toks[1];
  return std::nullopt;
}

/// Label kind suggested by a file extension (.aut, .td, .pda, .sa, .fam).
inline std::optional<std::string> label_kind_for_extension(const std::filesystem::path& p) {
  static const std::map<std::string, std::string> kinds{
      {".aut", "word"}, {".td", "word-pair"}, {".pda", "mcf-word"}, {".sa", "msa-word"}, {".fam", "trivial-word"}};
  auto it = kinds.find(p.extension().string());
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

namespace detail {

template <LabelMonoid L>
Automaton<L> parse_automaton_lines(std::string_view text, std::set<std::size_t>* tree_edges) {
  Automaton<L> aut;
  std::map<std::string, VertexId> ids;
  bool have_initial = false;
  for (const auto& [line, toks] : tokenize_lines(text)) {
    const std::string& head = toks[0];
    if (head == "monoid") {
      if (toks.size() != 2) throw ParseError(line, "expected: monoid <kind>");
      if (toks[1] != label_kind<L>::name)
        throw ParseError(line, "monoid '" + toks[1] + "' where '" + label_kind<L>::name + "' was expected");
    } else if (head == "vertex") {
      if (toks.size() < 2) throw ParseError(line, "expected: vertex <name> [initial] [terminal]");
      if (ids.contains(toks[1])) throw ParseError(line, "duplicate vertex '" + toks[1] + "'");
      VertexId v = aut.add_vertex(toks[1]);
      ids[toks[1]] = v;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "initial") {
          if (have_initial) throw ParseError(line, "second initial vertex");
          aut.set_initial(v);
          have_initial = true;
        } else if (toks[i] == "terminal") {
          aut.set_terminal(v);
        } else {
          throw ParseError(line, "unknown vertex flag '" + toks[i] + "'");
        }
      }
    } else if (head == "edge") {
      bool tree = tree_edges && toks.size() == 5 && toks[4] == "tree";
      if (toks.size() != 4 && !tree) throw ParseError(line, "expected: edge <source> <label> <target>");
      auto src = ids.find(toks[1]);
      auto dst = ids.find(toks[3]);
      if (src == ids.end()) throw ParseError(line, "unknown vertex '" + toks[1] + "'");
      if (dst == ids.end()) throw ParseError(line, "unknown vertex '" + toks[3] + "'");
      L label;
      try {
        label = parse_label<L>(toks[2]);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      std::size_t id = aut.add_edge(src->second, std::move(label), dst->second);
      if (tree) tree_edges->insert(id);
    } else {
      throw ParseError(line, "unknown directive '" + head + "'");
    }
  }
  if (!aut.empty() && !have_initial) aut.set_initial(0);
  return aut;
}

}  // namespace detail

/// Text format: an optional `monoid <kind>` line, then `vertex <name>
/// [initial] [terminal]` and `edge <source> <label> <target>` lines; `#`
/// starts a comment. Without an `initial` flag the first vertex is initial.
template <LabelMonoid L>
Automaton<L> parse_automaton(std::string_view text) {
  return detail::parse_automaton_lines<L>(text, nullptr);
}

template <LabelMonoid L>
std::string serialize_automaton(const Automaton<L>& aut, const std::set<std::size_t>* tree_edges = nullptr) {
  std::string out = std::string("monoid ") + label_kind<L>::name + "\n";
  for (VertexId v = 0; v < aut.vertex_count(); ++v) {
    out += "vertex " + aut.name(v);
    if (v == aut.initial()) out += " initial";
    if (aut.is_terminal(v)) out += " terminal";
    out += "\n";
  }
  for (std::size_t e = 0; e < aut.edge_count(); ++e) {
    const auto& edge = aut.edge(e);
    out += "edge " + aut.name(edge.source) + " " + format_label(edge.label) + " " + aut.name(edge.target);
    if (tree_edges && tree_edges->contains(e)) out += " tree";
    out += "\n";
  }
  return out;
}

inline Transducer parse_transducer(std::string_view text) { return Transducer::from(parse_automaton<WordPair>(text)); }
inline Pda parse_pda(std::string_view text) { return {parse_automaton<PdaLabel>(text)}; }

/// Schreier diagrams use the word-automaton format with a trailing `tree`
/// on spanning-tree edges.
inline SchreierDiagram parse_schreier(std::string_view text) {
  std::set<std::size_t> tree;
  auto graph = detail::parse_automaton_lines<Word>(text, &tree);
  std::set<Symbol> letters;
  for (const auto& e : graph.edges()) letters.insert(e.label.begin(), e.label.end());
  return SchreierDiagram::make(std::move(graph), std::move(tree), SymmetricAlphabet::infer(letters));
}

inline std::string serialize_schreier(const SchreierDiagram& d) { return serialize_automaton(d.graph, &d.tree); }

// ---------------------------------------------------------------------------
// Grammars

namespace detail {

inline bool starts_lower(const std::string& s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }
inline bool starts_upper(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

inline std::string grammar_token(const Grammar& g, Symbol s) {
  const std::string& n = s.name();
  if (g.is_terminal(s)) {
    if (starts_lower(n) && n != "eps") return n;
    if (n.find('\'') != std::string::npos) throw Error("terminal '" + n + "' cannot be quoted");
    return "'" + n + "'";
  }
  if (starts_upper(n) || n.front() == '<') return n;
  throw Error("nonterminal '" + n + "' has no textual form");
}

}  // namespace detail

/// One rule per line, `A -> alpha | beta`, with `eps` for the empty word.
/// Terminals start with a lowercase letter or are quoted; nonterminals
/// start with an uppercase letter or `<`. Optional `start`, `terminals`
/// and `nonterminals` lines; the start symbol defaults to the first
/// left-hand side.
inline Grammar parse_grammar(std::string_view text) {
  Grammar g;
  std::optional<Symbol> start;
  auto classify = [&](std::size_t line, const std::string& tok) -> Symbol {
    if (tok.front() == '\'' || tok.front() == '"') {
      if (tok.size() < 3 || tok.back() != tok.front()) throw ParseError(line, "bad quoted terminal " + tok);
      Symbol s(tok.substr(1, tok.size() - 2));
      g.terminals.insert(s);
      return s;
    }
    if (tok.front() == '<' || detail::starts_upper(tok)) {
      Symbol s(tok);
      g.nonterminals.insert(s);
      return s;
    }
    if (detail::starts_lower(tok)) {
      Symbol s(tok);
      g.terminals.insert(s);
      return s;
    }
    throw ParseError(line, "cannot classify symbol '" + tok + "'");
  };
  for (const auto& [line, toks] : detail::tokenize_lines(text)) {
    if (toks[0] == "start") {
      if (toks.size() != 2) throw ParseError(line, "expected: start <nonterminal>");
      Symbol s = classify(line, toks[1]);
      if (!g.is_nonterminal(s)) throw ParseError(line, "start symbol must be a nonterminal");
      start = s;
      continue;
    }
    if (toks[0] == "terminals" || toks[0] == "nonterminals") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        Symbol s = classify(line, toks[i]);
        if ((toks[0] == "terminals") != g.is_terminal(s)) throw ParseError(line, "'" + toks[i] + "' is misclassified");
      }
      continue;
    }
    auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) throw ParseError(line, "expected a rule 'lhs -> rhs'");
    if (arrow == toks.begin()) throw ParseError(line, "empty left-hand side");
    Form lhs;
    for (auto it = toks.begin(); it != arrow; ++it) lhs.push_back(classify(line, *it));
    if (std::none_of(lhs.begin(), lhs.end(), [&](Symbol s) { return g.is_nonterminal(s); }))
      throw ParseError(line, "left-hand side needs a nonterminal");
    if (!start && lhs.size() == 1) start = lhs[0];
    Form rhs;
    bool eps = false, any = false;
    auto flush = [&]() {
      if (eps && !rhs.empty()) throw ParseError(line, "'eps' must stand alone");
      if (!eps && rhs.empty()) throw ParseError(line, "empty alternative (write eps)");
      g.add(Production{lhs, rhs});
      rhs.clear();
      eps = false;
    };
    for (auto it = arrow + 1; it != toks.end(); ++it) {
      any = true;
      if (*it == "|") flush();
      else if (*it == "eps") eps = true;
      else rhs.push_back(classify(line, *it));
    }
    if (!any) throw ParseError(line, "empty right-hand side (write eps)");
    flush();
  }
  if (!start) {
    if (g.nonterminals.empty()) throw ParseError(0, "grammar has no nonterminals");
    start = *g.nonterminals.begin();
  }
  g.start = *start;
  for (Symbol t : g.terminals)
    if (g.nonterminals.contains(t)) throw ParseError(0, "'" + t.name() + "' used as terminal and nonterminal");
  return g;
}

inline std::string serialize_grammar(const Grammar& g) {
  auto sorted = [](const std::set<Symbol>& s) {
    std::vector<Symbol> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), name_less);
    return v;
  };
  std::string out = "start " + detail::grammar_token(g, g.start) + "\n";
  out += "terminals";
  for (Symbol t : sorted(g.terminals)) out += " " + detail::grammar_token(g, t);
  out += "\nnonterminals";
  for (Symbol n : sorted(g.nonterminals)) out += " " + detail::grammar_token(g, n);
  out += "\n";
  auto form = [&](const Form& f) {
    if (f.empty()) return std::string("eps");
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + detail::grammar_token(g, f[i]);
    return s;
  };
  for (std::size_t i = 0; i < g.productions.size();) {
    const Form& lhs = g.productions[i].lhs;
    out += form(lhs) + " -> " + form(g.productions[i].rhs);
    for (++i; i < g.productions.size() && g.productions[i].lhs == lhs; ++i) out += " | " + form(g.productions[i].rhs);
    out += "\n";
  }
  return out;
}

inline std::string format_form(const Form& f) {
  if (f.empty()) return "eps";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + f[i].name();
  return s;
}

// ---------------------------------------------------------------------------
// Group tables

/// `elements e a ...`, then `mul x y = z` for every pair and `gen a = x`.
inline FiniteGroupTable parse_group_table(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::optional<std::size_t>>> table;
  std::map<Symbol, std::size_t> gens;
  std::size_t last_line = 0;
  auto element = [&](std::size_t line, const std::string& n) {
    auto it = index.find(n);
    if (it == index.end()) throw ParseError(line, "unknown element '" + n + "'");
    return it->second;
  };
  for (const auto& [line, toks] : detail::tokenize_lines(text)) {
    last_line = line;
    if (toks[0] == "elements") {
      if (!names.empty()) throw ParseError(line, "elements listed twice");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (index.contains(toks[i])) throw ParseError(line, "duplicate element '" + toks[i] + "'");
        index[toks[i]] = names.size();
        names.push_back(toks[i]);
      }
      table.assign(names.size(), std::vector<std::optional<std::size_t>>(names.size()));
    } else if (toks[0] == "mul") {
      if (toks.size() != 5 || toks[3] != "=") throw ParseError(line, "expected: mul x y = z");
      auto& cell = table[element(line, toks[1])][element(line, toks[2])];
      std::size_t z = element(line, toks[4]);
      if (cell && *cell != z) throw ParseError(line, "conflicting product");
      cell = z;
    } else if (toks[0] == "gen") {
      if (toks.size() != 4 || toks[2] != "=") throw ParseError(line, "expected: gen <letter> = <element>");
      gens[Symbol(toks[1])] = element(line, toks[3]);
    } else {
      throw ParseError(line, "unknown directive '" + toks[0] + "'");
    }
  }
  if (names.empty()) throw ParseError(last_line, "no elements line");
  std::vector<std::vector<std::size_t>> full(names.size(), std::vector<std::size_t>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (!table[i][j]) throw ParseError(last_line, "missing product " + names[i] + " * " + names[j]);
      full[i][j] = *table[i][j];
    }
  try {
    return FiniteGroupTable(names, std::move(full), std::move(gens));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(last_line, e.what());
  }
}

inline std::string serialize_group_table(const FiniteGroupTable& g) {
  std::string out = "elements";
  for (const auto& n : g.element_names()) out += " " + n;
  out += "\n";
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j)
      out += "mul " + g.element_name(i) + " " + g.element_name(j) + " = " + g.element_name(g.multiply(i, j)) + "\n";
  for (Symbol x : g.alphabet()) out += "gen " + x.name() + " = " + g.element_name(g.generators().at(x)) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// DOT

template <class L>
std::string dot_label(const L& l) {
  std::string s = format_label(l);
  return s == "_" ? "ε" : s;
}

template <class A, class B>
std::string dot_label(const std::pair<A, B>& p) {
  return "(" + dot_label(p.first) + ", " + dot_label(p.second) + ")";
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// The initial vertex gets an arrow from an invisible source, each
/// terminal an arrow into an invisible sink.
template <class L>
std::string to_dot(const Automaton<L>& aut, const std::string& name = "automaton") {
  using detail::dot_quote;
  std::string out = "digraph " + dot_quote(name) + " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (VertexId v = 0; v < aut.vertex_count(); ++v) out += "  " + dot_quote(aut.name(v)) + ";\n";
  if (!aut.empty()) {
    out += "  \"__initial\" [shape=point, style=invis];\n";
    out += "  \"__initial\" -> " + dot_quote(aut.name(aut.initial())) + ";\n";
  }
  for (VertexId t : aut.terminals()) {
    std::string sink = dot_quote("__terminal_" + aut.name(t));
    out += "  " + sink + " [shape=point, style=invis];\n";
    out += "  " + dot_quote(aut.name(t)) + " -> " + sink + ";\n";
  }
  for (const auto& e : aut.edges())
    out += "  " + dot_quote(aut.name(e.source)) + " -> " + dot_quote(aut.name(e.target)) +
           " [label=" + dot_quote(dot_label(e.label)) + "];\n";
  return out + "}\n";
}

}  // namespace mfa
