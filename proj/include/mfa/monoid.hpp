#pragma once

#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include "mfa/stack_monoid.hpp"
#include "mfa/symbol.hpp"

namespace mfa {

/// Customization point describing a label monoid. Specializations provide
/// unit(), multiply(), is_zero(), format() and parse().
template <class L>
struct monoid_traits;

template <class L>
concept LabelMonoid = std::totally_ordered<L> && requires(const L& a, std::string_view s) {
  { monoid_traits<L>::unit() } -> std::convertible_to<L>;
  { monoid_traits<L>::multiply(a, a) } -> std::convertible_to<L>;
  { monoid_traits<L>::is_zero(a) } -> std::convertible_to<bool>;
  { monoid_traits<L>::format(a) } -> std::convertible_to<std::string>;
  { monoid_traits<L>::parse(s) } -> std::convertible_to<L>;
};

template <LabelMonoid L>
L unit_of() {
  return monoid_traits<L>::unit();
}

template <LabelMonoid L>
L multiply(const L& a, const L& b) {
  return monoid_traits<L>::multiply(a, b);
}

template <LabelMonoid L>
bool is_unit(const L& a) {
  return a == monoid_traits<L>::unit();
}

template <LabelMonoid L>
std::string format_label(const L& a) {
  return monoid_traits<L>::format(a);
}

template <LabelMonoid L>
L parse_label(std::string_view s) {
  return monoid_traits<L>::parse(s);
}

/// The one-element monoid.
struct Trivial {
  auto operator<=>(const Trivial&) const = default;
};

template <>
struct monoid_traits<Trivial> {
  static Trivial unit() { return {}; }
  static Trivial multiply(Trivial, Trivial) { return {}; }
  static bool is_zero(Trivial) { return false; }
  static std::string format(Trivial) { return "1"; }
  static Trivial parse(std::string_view s) {
    if (s != "1") throw Error("expected '1' for the trivial monoid, got '" + std::string(s) + "'");
    return {};
  }
};

template <>
struct monoid_traits<Word> {
  static Word unit() { return {}; }
  static Word multiply(const Word& a, const Word& b) { return concat(a, b); }
  static bool is_zero(const Word&) { return false; }
  static std::string format(const Word& w) { return format_word(w); }
  static Word parse(std::string_view s) { return parse_word(s); }
};

template <>
struct monoid_traits<StackAction> {
  static StackAction unit() { return StackAction::one(); }
  static StackAction multiply(const StackAction& a, const StackAction& b) { return mcf_multiply(a, b); }
  static bool is_zero(const StackAction& a) { return a.zero; }
  static std::string format(const StackAction& a) { return format_action(a); }
  static StackAction parse(std::string_view s) { return parse_stack_action(s); }
};

template <>
struct monoid_traits<ReadStackAction> {
  static ReadStackAction unit() { return ReadStackAction::one(); }
  static ReadStackAction multiply(const ReadStackAction& a, const ReadStackAction& b) { return m1_multiply(a, b); }
  static bool is_zero(const ReadStackAction& a) { return a.zero; }
  static std::string format(const ReadStackAction& a) { return format_action(a); }
  static ReadStackAction parse(std::string_view s) { return parse_read_action(s); }
};

/// Splits "(x|y)" at its top-level bar.
inline std::pair<std::string_view, std::string_view> split_pair(std::string_view s) {
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    throw Error("expected a pair '(x|y)', got '" + std::string(s) + "'");
  int depth = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '|' && depth == 0) return {s.substr(1, i - 1), s.substr(i + 1, s.size() - i - 2)};
  }
  throw Error("pair without top-level '|': '" + std::string(s) + "'");
}

template <>
struct monoid_traits<StackPairAction> {
  static StackPairAction unit() { return StackPairAction::one(); }
  static StackPairAction multiply(const StackPairAction& a, const StackPairAction& b) { return msa_multiply(a, b); }
  static bool is_zero(const StackPairAction& a) { return a.is_zero(); }
  static std::string format(const StackPairAction& a) { return format_action(a); }
  static StackPairAction parse(std::string_view s) {
    if (s == "1") return StackPairAction::one();
    if (s == "0") return StackPairAction::make(ReadStackAction::null(), ReadStackAction::null());
    auto [l, r] = split_pair(s);
    return StackPairAction::make(parse_read_action(l), parse_read_action(r));
  }
};

/// Direct product; a pair is zero when either component is.
template <LabelMonoid A, LabelMonoid B>
struct monoid_traits<std::pair<A, B>> {
  using P = std::pair<A, B>;
  static P unit() { return {unit_of<A>(), unit_of<B>()}; }
  static P multiply(const P& a, const P& b) {
    return {mfa::multiply(a.first, b.first), mfa::multiply(a.second, b.second)};
  }
  static bool is_zero(const P& a) {
    return monoid_traits<A>::is_zero(a.first) || monoid_traits<B>::is_zero(a.second);
  }
  static std::string format(const P& a) {
    return "(" + format_label(a.first) + "|" + format_label(a.second) + ")";
  }
  static P parse(std::string_view s) {
    auto [l, r] = split_pair(s);
    return {parse_label<A>(l), parse_label<B>(r)};
  }
};

using WordPair = std::pair<Word, Word>;
using PdaLabel = std::pair<StackAction, Word>;
using StackAutomatonLabel = std::pair<StackPairAction, Word>;

}  // namespace mfa
