#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mfa/symbol.hpp"

namespace mfa {

// Stack words grow to the right: P_w appends w, Q_w strips a trailing w.
// Actions compose left to right (x then y), matching functions written on
// the right of their arguments.

/// Element of the context-free stack monoid: the zero, or the normal form
/// Q_pop P_push.
struct StackAction {
  bool zero = false;
  Word pop;
  Word push;

  static StackAction one() { return {}; }
  static StackAction null() { return {true, {}, {}}; }
  static StackAction pushing(Word w) { return {false, {}, std::move(w)}; }
  static StackAction popping(Word w) { return {false, std::move(w), {}}; }
  static StackAction pushing(Symbol d) { return pushing(Word{d}); }
  static StackAction popping(Symbol d) { return popping(Word{d}); }

  bool is_one() const { return !zero && pop.empty() && push.empty(); }

  auto operator<=>(const StackAction&) const = default;
};

/// Element of M_1, the stack monoid extended by the emptiness test E:
/// zero, Q_pop P_push, or Q_pop E P_push.
struct ReadStackAction {
  bool zero = false;
  Word pop;
  bool barrier = false;
  Word push;

  static ReadStackAction one() { return {}; }
  static ReadStackAction null() { return {true, {}, false, {}}; }
  static ReadStackAction empty_test() { return {false, {}, true, {}}; }
  static ReadStackAction pushing(Symbol d) { return {false, {}, false, {d}}; }
  static ReadStackAction popping(Symbol d) { return {false, {d}, false, {}}; }
  static ReadStackAction from(const StackAction& a) { return {a.zero, a.pop, false, a.push}; }

  bool is_one() const { return !zero && !barrier && pop.empty() && push.empty(); }
  bool is_empty_test() const { return !zero && barrier && pop.empty() && push.empty(); }

  auto operator<=>(const ReadStackAction&) const = default;
};

/// Element of M_1 x M_1. A zero in either component kills the whole pair,
/// so such pairs are stored canonically as (0, 0).
struct StackPairAction {
  ReadStackAction down;
  ReadStackAction up;

  static StackPairAction one() { return {}; }
  static StackPairAction make(ReadStackAction down, ReadStackAction up) {
    if (down.zero || up.zero) return {ReadStackAction::null(), ReadStackAction::null()};
    return {std::move(down), std::move(up)};
  }

  bool is_zero() const { return down.zero || up.zero; }
  bool is_one() const { return down.is_one() && up.is_one(); }

  auto operator<=>(const StackPairAction&) const = default;
};

inline std::optional<Word> apply_action(const StackAction& act, const Word& u) {
  if (act.zero || !ends_with(u, act.pop)) return std::nullopt;
  Word out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(act.pop.size()));
  out.insert(out.end(), act.push.begin(), act.push.end());
  return out;
}

inline std::optional<Word> apply_action(const ReadStackAction& act, const Word& u) {
  if (act.zero || !ends_with(u, act.pop)) return std::nullopt;
  if (act.barrier && u.size() != act.pop.size()) return std::nullopt;
  Word out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(act.pop.size()));
  out.insert(out.end(), act.push.begin(), act.push.end());
  return out;
}

inline std::optional<std::pair<Word, Word>> apply_action(const StackPairAction& act,
                                                         const std::pair<Word, Word>& u) {
  auto d = apply_action(act.down, u.first);
  auto p = apply_action(act.up, u.second);
  if (!d || !p) return std::nullopt;
  return std::pair{std::move(*d), std::move(*p)};
}

inline StackAction mcf_multiply(const StackAction& x, const StackAction& y) {
  if (x.zero || y.zero) return StackAction::null();
  // Q_w P_{zx} Q_x P_y = Q_w P_{zy}
  if (ends_with(x.push, y.pop)) {
    Word z(x.push.begin(), x.push.end() - static_cast<std::ptrdiff_t>(y.pop.size()));
    return {false, x.pop, concat(z, y.push)};
  }
  // Q_w P_v Q_{zv} P_y = Q_{zw} P_y
  if (ends_with(y.pop, x.push)) {
    Word z(y.pop.begin(), y.pop.end() - static_cast<std::ptrdiff_t>(x.push.size()));
    return {false, concat(z, x.pop), y.push};
  }
  return StackAction::null();
}

inline ReadStackAction m1_multiply(const ReadStackAction& x, const ReadStackAction& y) {
  if (x.zero || y.zero) return ReadStackAction::null();
  if (!x.barrier && !y.barrier) {
    auto r = mcf_multiply(StackAction{false, x.pop, x.push}, StackAction{false, y.pop, y.push});
    return ReadStackAction::from(r);
  }
  if (x.barrier && !y.barrier) {
    // Q_w E P_{zx} Q_x P_y = Q_w E P_{zy}
    if (!ends_with(x.push, y.pop)) return ReadStackAction::null();
    Word z(x.push.begin(), x.push.end() - static_cast<std::ptrdiff_t>(y.pop.size()));
    return {false, x.pop, true, concat(z, y.push)};
  }
  if (!x.barrier && y.barrier) {
    // Q_w P_v Q_{zv} E P_y = Q_{zw} E P_y
    if (!ends_with(y.pop, x.push)) return ReadStackAction::null();
    Word z(y.pop.begin(), y.pop.end() - static_cast<std::ptrdiff_t>(x.push.size()));
    return {false, concat(z, x.pop), true, y.push};
  }
  // Q_w E P_x Q_x E P_y = Q_w E P_y
  if (x.push != y.pop) return ReadStackAction::null();
  return {false, x.pop, true, y.push};
}

inline StackPairAction msa_multiply(const StackPairAction& x, const StackPairAction& y) {
  return StackPairAction::make(m1_multiply(x.down, y.down), m1_multiply(x.up, y.up));
}

inline StackAction operator*(const StackAction& x, const StackAction& y) { return mcf_multiply(x, y); }
inline ReadStackAction operator*(const ReadStackAction& x, const ReadStackAction& y) { return m1_multiply(x, y); }
inline StackPairAction operator*(const StackPairAction& x, const StackPairAction& y) { return msa_multiply(x, y); }

/// Generators of M_sa over `alphabet`: moving up (Q_x,P_x), moving down
/// (P_x,Q_x), and top-of-stack push/pop (E,P_x), (E,Q_x); plus the unit.
inline std::set<StackPairAction> msa_generators(const std::set<Symbol>& alphabet) {
  using R = ReadStackAction;
  std::set<StackPairAction> gens{StackPairAction::one()};
  for (Symbol x : alphabet) {
    gens.insert(StackPairAction::make(R::popping(x), R::pushing(x)));
    gens.insert(StackPairAction::make(R::pushing(x), R::popping(x)));
    gens.insert(StackPairAction::make(R::empty_test(), R::pushing(x)));
    gens.insert(StackPairAction::make(R::empty_test(), R::popping(x)));
  }
  return gens;
}

// Text syntax: `1`, `0`, `P:w`, `Q:w`, `Q:w.P:v`, `Q:w.E.P:v`, `E`, with
// words written as comma-separated symbol names. Pairs are `(x|y)`.

inline std::string format_action(const ReadStackAction& a) {
  if (a.zero) return "0";
  std::vector<std::string> parts;
  if (!a.pop.empty()) parts.push_back("Q:" + format_word(a.pop));
  if (a.barrier) parts.push_back("E");
  if (!a.push.empty()) parts.push_back("P:" + format_word(a.push));
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "." + parts[i];
  return out;
}

inline std::string format_action(const StackAction& a) {
  return format_action(ReadStackAction::from(a));
}

inline std::string format_action(const StackPairAction& a) {
  return "(" + format_action(a.down) + "|" + format_action(a.up) + ")";
}

inline ReadStackAction parse_read_action(std::string_view text) {
  if (text == "0") return ReadStackAction::null();
  ReadStackAction out;
  if (text == "1") return out;
  int stage = 0;  // 0: expect Q, 1: expect E, 2: expect P, 3: done
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (part.starts_with("Q:") && stage == 0) {
      out.pop = parse_word(part.substr(2));
      stage = 1;
    } else if (part == "E" && stage <= 1) {
      out.barrier = true;
      stage = 2;
    } else if (part.starts_with("P:") && stage <= 2) {
      out.push = parse_word(part.substr(2));
      stage = 3;
    } else {
      throw Error("malformed stack action '" + std::string(text) + "'");
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

inline StackAction parse_stack_action(std::string_view text) {
  auto r = parse_read_action(text);
  if (r.barrier) throw Error("E is not an element of the context-free stack monoid: '" + std::string(text) + "'");
  return {r.zero, r.pop, r.push};
}

}  // namespace mfa
