#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "mfa/mfa.hpp"

namespace mfa::cli {

enum Exit : int { kOk = 0, kReject = 1, kUsage = 2, kUnknown = 3 };

using TrivialFamily = Automaton<std::pair<Trivial, Word>>;
using StackAutomaton = Automaton<StackAutomatonLabel>;

/// Artifacts loaded from files, keyed by file stem. Loading the same stem
/// from two different paths is an error; reloading the same path is free.
class Workspace {
 public:
  using Artifact = std::variant<Automaton<Word>, Transducer, Pda, StackAutomaton, TrivialFamily, Grammar,
                                FiniteGroupTable, SchreierDiagram>;

  /// `kind` overrides what the extension or header would say.
  const Artifact& load(const std::string& path, std::string kind = {}) {
    std::string name = std::filesystem::path(path).stem().string();
    if (auto it = items_.find(name); it != items_.end()) {
      if (it->second.first != path) throw Error("artifact name '" + name + "' is already taken by " + it->second.first);
      return it->second.second;
    }
    std::string text = read_file(path);
    if (kind.empty()) kind = kind_of(path, text);
    return items_.emplace(name, std::pair{path, parse(kind, text)}).first->second.second;
  }

  template <class T>
  const T& get(const std::string& path, const char* what, const std::string& kind = {}) {
    const Artifact& a = load(path, kind);
    if (auto* p = std::get_if<T>(&a)) return *p;
    throw Error(path + " is not " + what);
  }

  static std::string kind_of(const std::string& path, std::string_view text) {
    static const std::map<std::string, std::string> by_ext{{".cfg", "grammar"}, {".grp", "group"}, {".sch", "schreier"}};
    auto ext = std::filesystem::path(path).extension().string();
    if (auto it = by_ext.find(ext); it != by_ext.end()) return it->second;
    if (auto k = label_kind_for_extension(path)) return *k;
    if (auto k = declared_label_kind(text)) return *k;
    if (text.find("->") != std::string_view::npos) return "grammar";
    if (text.find("elements") != std::string_view::npos) return "group";
    return "word";
  }

  static Artifact parse(const std::string& kind, std::string_view text) {
    if (kind == "word") return parse_automaton<Word>(text);
    if (kind == "word-pair") return parse_transducer(text);
    if (kind == "mcf-word") return parse_pda(text);
    if (kind == "msa-word") return parse_automaton<StackAutomatonLabel>(text);
    if (kind == "trivial-word") return parse_automaton<std::pair<Trivial, Word>>(text);
    if (kind == "grammar") return parse_grammar(text);
    if (kind == "group") return parse_group_table(text);
    if (kind == "schreier") return parse_schreier(text);
    throw Error("unknown artifact kind '" + kind + "'");
  }

 private:
  std::map<std::string, std::pair<std::string, Artifact>> items_;
};

/// A word on the command line: comma-separated names, `_` for the empty
/// word, or, when every known letter is one character long, a plain
/// string split into characters.
inline Word read_word(const std::string& text, const std::set<Symbol>& alphabet) {
  if (text.empty() || text == "_" || text.find(',') != std::string::npos) return parse_word(text);
  if (alphabet.contains(Symbol(text))) return Word{Symbol(text)};
  bool split = std::all_of(text.begin(), text.end(), [&](char c) { return alphabet.contains(Symbol(std::string(1, c))); });
  return split ? letters(text) : Word{Symbol(text)};
}

inline std::set<Symbol> input_letters(const Automaton<Word>& a) { return letters_of(a); }

template <class M>
std::set<Symbol> input_letters(const Automaton<std::pair<M, Word>>& a) {
  std::set<Symbol> s;
  for (const auto& e : a.edges()) s.insert(e.label.second.begin(), e.label.second.end());
  return s;
}

/// Adds the missing partner of every letter (x <-> x^-1).
inline SymmetricAlphabet symmetric_closure(const std::set<Symbol>& letters) {
  std::set<Symbol> all;
  for (Symbol x : letters) {
    const std::string& n = x.name();
    std::string base = n.size() > 3 && n.ends_with("^-1") ? n.substr(0, n.size() - 3) : n;
    all.insert(Symbol(base));
    all.insert(Symbol(base + "^-1"));
  }
  return SymmetricAlphabet::infer(all);
}

inline std::vector<Word> read_word_list(const std::string& text) {
  std::vector<Word> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (!part.empty()) out.push_back(parse_word(part));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

struct Context {
  Workspace ws;
  std::string format = "text";
  std::ostream* out = &std::cout;

  template <class L>
  void emit(const Automaton<L>& a, const std::set<std::size_t>* tree = nullptr) {
    *out << (format == "dot" ? to_dot(a) : serialize_automaton(a, tree));
  }
  void emit(const Dfa& d) { emit(d.to_automaton()); }
};

inline int verdict(std::ostream& out, bool yes) {
  out << (yes ? "accept" : "reject") << "\n";
  return yes ? kOk : kReject;
}

inline int verdict(std::ostream& out, Verdict v) {
  out << to_string(v) << "\n";
  return v == Verdict::yes ? kOk : v == Verdict::no ? kReject : kUnknown;
}

inline std::set<Symbol> union_of(std::set<Symbol> a, const std::set<Symbol>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

inline std::vector<Symbol> sorted_letters(const std::set<Symbol>& s) {
  std::vector<Symbol> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), name_less);
  return v;
}

// ---------------------------------------------------------------------------
// Demos

struct Check {
  std::string name;
  bool pass;
};

inline std::vector<Check> demo_fig1() {
  auto lang = language_upto(fixtures::fig1(), 8);
  std::set<Word> expected;
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::size_t j = 0; i + j <= 8; ++j) expected.insert(concat(power(letters("a"), i), power(letters("b"), j)));
  return {{"accepted words of length <= 8 are a^i b^j", lang == expected},
          {"ba is rejected", !lang.contains(letters("ba"))}};
}

inline std::vector<Check> demo_fig2() {
  PdaRecognizer r(fixtures::fig2());
  bool table = true;
  for (const auto& w : words_up_to(letters("ab"), 10)) {
    std::size_t n = w.size() / 2;
    bool expected = w.size() % 2 == 0 && w == concat(power(letters("a"), n), power(letters("b"), n));
    table = table && r.accepts(w) == expected;
  }
  return {{"a^n b^n for n <= 10, nothing else up to length 10", table},
          {"already one-step", is_one_step(fixtures::fig2())}};
}

inline std::vector<Check> demo_fig8() {
  auto f = fixtures::fig8_acceptor();
  bool yes = true, no = true;
  for (std::size_t n = 0; n <= 6; ++n) {
    Word w = concat(concat(power(letters("a"), n), power(letters("b"), n)), power(letters("c"), n));
    yes = yes && accepts_bounded(f, w, 1000000) == Verdict::yes;
    Word more = concat(w, letters("c"));
    no = no && accepts_bounded(f, more, 1000000) == Verdict::no;
  }
  return {{"a^n b^n c^n accepted for n <= 6", yes}, {"a^n b^n c^(n+1) rejected for n <= 6", no}};
}

inline std::vector<Check> demo_grammar_g() {
  auto pairs = fixtures::rank2();
  auto g = fixtures::grammar_g();
  auto parser = cfg_recognizer(g);
  bool agree = true;
  for (const auto& w : words_up_to(pairs.letters(), 8)) agree = agree && parser.accepts(w) == free_reduce(w, pairs).empty();
  auto d = leftmost_derive(g, parse_word("a,b,b^-1,b^-1,b,a^-1"));
  return {{"membership equals free reduction to the empty word, length <= 8", agree},
          {"six-step leftmost derivation of a b b^-1 b^-1 b a^-1", d && d->steps.size() == 6}};
}

/// Exponent of a word a^k or a^-k; nullopt for anything else.
inline std::optional<long> power_of_a(const Word& w) {
  Symbol a("a"), ai("a^-1");
  long k = 0;
  for (Symbol s : w) {
    if (s == a) ++k;
    else if (s == ai) --k;
    else return std::nullopt;
  }
  return k;
}

inline std::vector<Check> demo_howson() {
  auto pairs = fixtures::rank2();
  auto h = howson_intersection({letters("aa")}, {letters("aaa")}, pairs);
  long g = 0;
  bool powers = !h.empty();
  for (const auto& w : h) {
    auto k = power_of_a(w);
    powers = powers && k.has_value();
    if (k) g = std::gcd(g, *k);
  }
  auto t = howson_intersection({letters("a")}, {letters("b")}, pairs);
  return {{"<a^2> meet <a^3> is generated by powers of a with gcd 6", powers && g == 6},
          {"<a> meet <b> is trivial", t.empty()}};
}

inline int run_demo(const std::string& name, std::ostream& out) {
  static const std::map<std::string, std::vector<Check> (*)()> demos{
      {"fig1", demo_fig1}, {"fig2", demo_fig2}, {"fig8", demo_fig8}, {"grammar-G", demo_grammar_g}, {"howson", demo_howson}};
  auto it = demos.find(name);
  if (it == demos.end()) throw CLI::ValidationError("demo", "unknown demo '" + name + "'");
  bool all = true;
  for (const auto& c : it->second()) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && c.pass;
  }
  return all ? kOk : kReject;
}

// ---------------------------------------------------------------------------

inline std::string describe(const DyckAnalysis& a, std::size_t node, std::size_t depth) {
  const auto& n = a.nodes[node];
  std::string out(depth * 2, ' ');
  out += (n.kind == DyckAnalysis::Kind::wrap ? "wrap [" : "split [") + std::to_string(n.begin) + "," +
         std::to_string(n.begin + n.length) + ")\n";
  for (std::size_t c : n.children) out += describe(a, c, depth + 1);
  return out;
}

inline std::vector<StackGenerator> read_generators(const std::string& text) {
  std::vector<StackGenerator> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.size() < 3 || (tok[0] != 'P' && tok[0] != 'Q') || tok[1] != ':')
      throw CLI::ValidationError("dyck", "expected P:<symbol> or Q:<symbol>, got '" + tok + "'");
    out.push_back({tok[0] == 'P', Symbol(tok.substr(2))});
  }
  return out;
}

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automata over monoids: rational, pushdown and stack languages, grammars and group word problems",
               "mfa"};
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  app.add_option("--format", ctx.format, "Output format for automata")
      ->check(CLI::IsMember({"text", "dot"}))
      ->capture_default_str();

  int status = kOk;
  std::string f1, f2, word, kind, monoid = "mcf";
  std::size_t budget = 1000000, max_len = 6;

  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  auto* accept = sub("accept", "Decide membership in a word automaton");
  accept->add_option("automaton", f1)->required();
  accept->add_option("word", word)->required();
  accept->callback([&] {
    const auto& a = ctx.ws.get<Automaton<Word>>(f1, "a word automaton");
    status = verdict(out, determinize(a).accepts(read_word(word, letters_of(a))));
  });

  auto* det = sub("det", "Subset construction");
  det->add_option("automaton", f1)->required();
  det->callback([&] { ctx.emit(determinize(ctx.ws.get<Automaton<Word>>(f1, "a word automaton"))); });

  auto* min = sub("min", "Minimal complete DFA");
  min->add_option("automaton", f1)->required();
  min->callback([&] { ctx.emit(minimize(determinize(ctx.ws.get<Automaton<Word>>(f1, "a word automaton")))); });

  std::string op;
  auto* boolean_cmd = sub("bool", "Complement, intersection or union of rational languages");
  boolean_cmd->add_option("op", op)->required()->check(CLI::IsMember({"complement", "intersect", "union"}));
  boolean_cmd->add_option("automaton", f1)->required();
  boolean_cmd->add_option("other", f2);
  boolean_cmd->callback([&] {
    const auto& a = ctx.ws.get<Automaton<Word>>(f1, "a word automaton");
    if (op == "complement") {
      ctx.emit(boolean(BoolOp::complement, determinize(a)));
      return;
    }
    if (f2.empty()) throw CLI::ValidationError("bool", op + " needs two automata");
    const auto& b = ctx.ws.get<Automaton<Word>>(f2, "a word automaton");
    auto sigma = sorted_letters(union_of(letters_of(a), letters_of(b)));
    Dfa da = determinize(a, sigma), db = determinize(b, sigma);
    ctx.emit(boolean(op == "intersect" ? BoolOp::intersect : BoolOp::union_of, da, &db));
  });

  auto* equiv = sub("equiv", "Language equivalence, with a shortest witness when different");
  equiv->add_option("automaton", f1)->required();
  equiv->add_option("other", f2)->required();
  equiv->callback([&] {
    const auto& a = ctx.ws.get<Automaton<Word>>(f1, "a word automaton");
    const auto& b = ctx.ws.get<Automaton<Word>>(f2, "a word automaton");
    auto sigma = sorted_letters(union_of(letters_of(a), letters_of(b)));
    auto w = distinguishing_word(determinize(a, sigma), determinize(b, sigma));
    if (!w) {
      out << "equivalent\n";
    } else {
      out << "different " << format_word(*w) << "\n";
      status = kReject;
    }
  });

  auto* pump = sub("pump", "Rational pumping split x|y|z of an accepted word");
  pump->add_option("automaton", f1)->required();
  pump->add_option("word", word)->required();
  pump->callback([&] {
    const auto& a = ctx.ws.get<Automaton<Word>>(f1, "a word automaton");
    Dfa d = minimize(determinize(a));
    Word w = read_word(word, letters_of(a));
    if (!d.accepts(w)) {
      out << "reject: word is not accepted\n";
      status = kReject;
      return;
    }
    if (w.size() <= d.state_count()) {
      out << "reject: word is not longer than the " << d.state_count() << " states\n";
      status = kReject;
      return;
    }
    auto s = pump_decompose(d, w);
    out << format_word(s.x) << " | " << format_word(s.y) << " | " << format_word(s.z) << "\n";
  });

  auto* compose_cmd = sub("compose", "Composite of two transducers (first, then second)");
  compose_cmd->add_option("first", f1)->required();
  compose_cmd->add_option("second", f2)->required();
  compose_cmd->callback([&] {
    auto c = compose(ctx.ws.get<Transducer>(f1, "a transducer", "word-pair"),
                     ctx.ws.get<Transducer>(f2, "a transducer", "word-pair"));
    ctx.emit(c.graph);
  });

  auto* invert = sub("invert", "Inverse relation");
  invert->add_option("transducer", f1)->required();
  invert->callback([&] { ctx.emit(inverse(ctx.ws.get<Transducer>(f1, "a transducer", "word-pair")).graph); });

  std::size_t list = 0;
  auto* apply = sub("apply", "Image of a rational language (file or single word) under a transducer");
  apply->add_option("transducer", f1)->required();
  apply->add_option("input", f2)->required();
  apply->add_option("--list", list, "List image words up to this length instead of the automaton");
  apply->callback([&] {
    const auto& t = ctx.ws.get<Transducer>(f1, "a transducer", "word-pair");
    Automaton<Word> lang;
    if (std::filesystem::exists(f2)) {
      lang = ctx.ws.get<Automaton<Word>>(f2, "a word automaton");
    } else {
      lang = finite_acceptor<Word>({read_word(f2, t.input_alphabet)});
    }
    auto img = image(lang, t);
    if (list == 0) {
      ctx.emit(img);
      return;
    }
    auto all = language_upto(img, list);
    std::vector<Word> ws(all.begin(), all.end());
    std::sort(ws.begin(), ws.end(), shortlex_less);
    for (const auto& w : ws) out << format_word(w) << "\n";
  });

  auto* family = sub("family-accept", "Bounded search for a path labelled (m, w) with m accepted");
  family->add_option("automaton", f1)->required();
  family->add_option("word", word)->required();
  family->add_option("--monoid", monoid, "trivial: any path; mcf: stack action 1; msa: pair (E, 1)")
      ->check(CLI::IsMember({"trivial", "mcf", "msa"}))
      ->capture_default_str();
  family->add_option("--budget", budget, "Maximum number of expanded configurations")->capture_default_str();
  family->callback([&] {
    if (monoid == "trivial") {
      const auto& a = ctx.ws.get<TrivialFamily>(f1, "a trivial-word automaton", "trivial-word");
      FamilyAcceptor<Trivial> fa{a, [](const Trivial&) { return true; }};
      status = verdict(out, accepts_bounded(fa, read_word(word, input_letters(a)), budget));
    } else if (monoid == "mcf") {
      const auto& p = ctx.ws.get<Pda>(f1, "a pushdown automaton", "mcf-word");
      status = verdict(out, accepts_bounded(p.family(), read_word(word, p.input_alphabet()), budget));
    } else {
      const auto& a = ctx.ws.get<StackAutomaton>(f1, "a stack automaton", "msa-word");
      FamilyAcceptor<StackPairAction> fa{a, fixtures::stack_accepts};
      status = verdict(out, accepts_bounded(fa, read_word(word, input_letters(a)), budget));
    }
  });

  auto* pda_accept = sub("pda-accept", "Exact PDA membership via grammar conversion and CYK");
  pda_accept->add_option("pda", f1)->required();
  pda_accept->add_option("word", word)->required();
  pda_accept->callback([&] {
    const auto& p = ctx.ws.get<Pda>(f1, "a pushdown automaton", "mcf-word");
    status = verdict(out, accepts(p, read_word(word, p.input_alphabet())));
  });

  auto* pda_cat = sub("pda-cat", "Product of two PDA languages");
  pda_cat->add_option("first", f1)->required();
  pda_cat->add_option("second", f2)->required();
  pda_cat->callback([&] {
    const auto& p = ctx.ws.get<Pda>(f1, "a pushdown automaton", "mcf-word");
    const auto& q = ctx.ws.get<Pda>(f2, "a pushdown automaton", "mcf-word");
    ctx.emit(combine_cf(CfCombine::product, p, &q).graph);
  });

  auto* pda_star = sub("pda-star", "Star of a PDA language");
  pda_star->add_option("pda", f1)->required();
  pda_star->callback([&] {
    ctx.emit(combine_cf(CfCombine::star, ctx.ws.get<Pda>(f1, "a pushdown automaton", "mcf-word")).graph);
  });

  auto* cfl_pump = sub("cfl-pump", "Context-free pumping split u|v|w|x|y of a generated word");
  cfl_pump->add_option("grammar", f1)->required();
  cfl_pump->add_option("word", word)->required();
  cfl_pump->callback([&] {
    const auto& g = ctx.ws.get<Grammar>(f1, "a grammar", "grammar");
    Word z = read_word(word, g.terminals);
    if (!cfg_recognizer(g).accepts(z)) {
      out << "reject: word is not generated\n";
      status = kReject;
      return;
    }
    auto p = pump_cfl(g, z);
    out << format_word(p.u) << " | " << format_word(p.v) << " | " << format_word(p.w) << " | " << format_word(p.x)
        << " | " << format_word(p.y) << "\n";
  });

  auto* dyck = sub("dyck", "Analyse a generator word P:d,Q:d,... representing 1");
  dyck->add_option("sequence", word)->required();
  dyck->callback([&] {
    auto gens = read_generators(word);
    auto a = dyck_analyze(gens);
    if (!a) {
      out << "reject: the product is not 1\n";
      status = kReject;
      return;
    }
    if (a->nodes.empty()) out << "empty\n";
    else out << describe(*a, 0, 0);
    if (a->long_subword)
      out << "subword [" << a->long_subword->first << "," << a->long_subword->first + a->long_subword->second
          << ")\n";
  });

  auto* cfg_accept = sub("cfg-accept", "Context-free membership by CYK");
  cfg_accept->add_option("grammar", f1)->required();
  cfg_accept->add_option("word", word)->required();
  cfg_accept->callback([&] {
    const auto& g = ctx.ws.get<Grammar>(f1, "a grammar", "grammar");
    status = verdict(out, cfg_recognizer(g).accepts(read_word(word, g.terminals)));
  });

  auto* cfg_gen = sub("cfg-gen", "Generated words up to a length, shortlex");
  cfg_gen->add_option("grammar", f1)->required();
  cfg_gen->add_option("max-len", max_len)->required();
  cfg_gen->callback([&] {
    auto set = generate_bounded(ctx.ws.get<Grammar>(f1, "a grammar", "grammar"), max_len);
    std::vector<Word> ws(set.begin(), set.end());
    std::sort(ws.begin(), ws.end(), shortlex_less);
    for (const auto& w : ws) out << format_word(w) << "\n";
  });

  auto* cfg2pda = sub("cfg2pda", "Two-vertex PDA of a context-free grammar");
  cfg2pda->add_option("grammar", f1)->required();
  cfg2pda->callback([&] { ctx.emit(cfg_to_pda(normalize_rhs(ctx.ws.get<Grammar>(f1, "a grammar", "grammar"))).graph); });

  auto* pda2cfg = sub("pda2cfg", "Context-free grammar of a PDA");
  pda2cfg->add_option("pda", f1)->required();
  pda2cfg->callback([&] { out << serialize_grammar(pda_to_cfg(ctx.ws.get<Pda>(f1, "a pushdown automaton", "mcf-word"))); });

  auto* leftmost = sub("leftmost", "Shortest leftmost derivation");
  leftmost->add_option("grammar", f1)->required();
  leftmost->add_option("word", word)->required();
  leftmost->callback([&] {
    const auto& g = ctx.ws.get<Grammar>(f1, "a grammar", "grammar");
    auto d = leftmost_derive(g, read_word(word, g.terminals));
    if (!d) {
      out << "reject: no derivation\n";
      status = kReject;
      return;
    }
    for (std::size_t i = 0; i < d->forms.size(); ++i) out << (i ? "=> " : "   ") << format_form(d->forms[i]) << "\n";
  });

  auto* wp_finite = sub("wp-finite", "Word-problem DFA of a finite group table");
  wp_finite->add_option("table", f1)->required();
  wp_finite->add_option("word", word);
  wp_finite->callback([&] {
    const auto& g = ctx.ws.get<FiniteGroupTable>(f1, "a group table", "group");
    Dfa d = wp_dfa(g);
    if (word.empty()) {
      ctx.emit(d);
      return;
    }
    auto sigma = g.alphabet();
    status = verdict(out, d.accepts(read_word(word, {sigma.begin(), sigma.end()})));
  });

  std::string table_file;
  auto* subgroup = sub("subgroup-gens", "Generators of the subgroup generated by an accepted set");
  subgroup->add_option("automaton", f1)->required();
  subgroup->add_option("--table", table_file, "Evaluate labels in this finite group instead of the free group");
  subgroup->callback([&] {
    const auto& a = ctx.ws.get<Automaton<Word>>(f1, "a word automaton");
    if (!table_file.empty()) {
      const auto& g = ctx.ws.get<FiniteGroupTable>(table_file, "a group table", "group");
      auto elems = map_labels(a, [&](const Word& w) { return g.evaluate(w); });
      for (std::size_t x : subgroup_generators(elems, g)) out << g.element_name(x) << "\n";
      return;
    }
    auto pairs = symmetric_closure(letters_of(a));
    auto reduced = map_labels(a, [&](const Word& w) { return free_reduce(w, pairs); });
    for (const auto& w : subgroup_generators(reduced, FreeGroup{pairs})) out << format_word(w) << "\n";
  });

  auto* howson = sub("howson", "Generators of the intersection of two free-group subgroups");
  howson->add_option("gens1", f1, "Generators separated by ';', letters by ','")->required();
  howson->add_option("gens2", f2)->required();
  howson->callback([&] {
    auto g1 = read_word_list(f1), g2 = read_word_list(f2);
    std::set<Symbol> used;
    for (const auto* gs : {&g1, &g2})
      for (const auto& w : *gs) used.insert(w.begin(), w.end());
    if (used.empty()) used.insert(Symbol("a"));
    auto pairs = symmetric_closure(used);
    for (auto* gs : {&g1, &g2})
      for (auto& w : *gs) w = free_reduce(w, pairs);
    auto h = howson_intersection(g1, g2, pairs);
    if (h.empty()) out << "trivial\n";
    for (const auto& w : h) out << format_word(w) << "\n";
  });

  auto* schreier = sub("schreier-rewrite", "Rewrite a word through a Schreier diagram and decide it");
  schreier->add_option("diagram", f1)->required();
  schreier->add_option("word", word)->required();
  schreier->callback([&] {
    const auto& d = ctx.ws.get<SchreierDiagram>(f1, "a Schreier diagram", "schreier");
    Word w = read_word(word, d.sigma.letter_set());
    auto rho = apply_function(schreier_transducer(d), w);
    out << "rewrite " << (rho ? format_word(*rho) : std::string("undefined")) << "\n";
    status = verdict(out, wp_lift(d, free_subgroup_membership(d), w));
  });

  auto* stack = sub("stack-accept", "Bounded search in a stack automaton");
  stack->add_option("automaton", f1)->required();
  stack->add_option("word", word)->required();
  stack->add_option("--budget", budget, "Maximum number of expanded configurations")->capture_default_str();
  stack->callback([&] {
    const auto& a = ctx.ws.get<StackAutomaton>(f1, "a stack automaton", "msa-word");
    FamilyAcceptor<StackPairAction> fa{a, fixtures::stack_accepts};
    status = verdict(out, accepts_bounded(fa, read_word(word, input_letters(a)), budget));
  });

  auto* dot = sub("to-dot", "Render any automaton-like file as DOT");
  dot->add_option("file", f1)->required();
  dot->callback([&] {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Transducer> || std::is_same_v<T, Pda>) out << to_dot(x.graph);
          else if constexpr (std::is_same_v<T, SchreierDiagram>) out << to_dot(x.graph);
          else if constexpr (std::is_same_v<T, Grammar> || std::is_same_v<T, FiniteGroupTable>)
            throw CLI::ValidationError("to-dot", f1 + " is not automaton-like");
          else out << to_dot(x);
        },
        ctx.ws.load(f1));
  });

  auto* regex = sub("to-regex", "Rational expression of a word automaton");
  regex->add_option("automaton", f1)->required();
  regex->callback([&] { out << to_expression(ctx.ws.get<Automaton<Word>>(f1, "a word automaton")).to_string() << "\n"; });

  std::string demo_name;
  auto* demo = sub("demo", "Run a built-in worked example: fig1, fig2, fig8, grammar-G, howson");
  demo->add_option("name", demo_name)->required();
  demo->callback([&] { status = run_demo(demo_name, out); });

  std::vector<std::string> argv_store{"mfa"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const mfa::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const mfa::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}

}  // namespace mfa::cli
