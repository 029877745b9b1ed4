#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mfa/symbol.hpp"

namespace mfa {

/// Alphabet made of pairs {x, x^-1} under a fixed-point-free involution.
/// Letters keep the order in which their pairs were added: x, x^-1, y, y^-1, ...
class SymmetricAlphabet {
 public:
  SymmetricAlphabet() = default;

  /// Pairs named x and x^-1 for every name.
  static SymmetricAlphabet standard(const std::vector<std::string>& names) {
    SymmetricAlphabet s;
    for (const auto& n : names) s.add_pair(Symbol(n), Symbol(n + "^-1"));
    return s;
  }

  /// Pairs every letter named `x^-1` with `x`; every other letter must have
  /// its partner in the set.
  static SymmetricAlphabet infer(const std::set<Symbol>& letters) {
    SymmetricAlphabet s;
    std::vector<Symbol> sorted(letters.begin(), letters.end());
    std::sort(sorted.begin(), sorted.end(), name_less);
    for (Symbol x : sorted) {
      const std::string& n = x.name();
      if (n.size() > 3 && n.ends_with("^-1")) continue;
      Symbol inv(n + "^-1");
      if (!letters.contains(inv)) throw Error("letter '" + n + "' has no formal inverse " + inv.name());
      s.add_pair(x, inv);
    }
    for (Symbol x : letters)
      if (!s.contains(x)) throw Error("letter '" + x.name() + "' has no formal inverse");
    return s;
  }

  void add_pair(Symbol x, Symbol x_inv) {
    if (x == x_inv) throw Error("a letter cannot be its own formal inverse");
    if (contains(x) || contains(x_inv)) throw Error("letter already paired");
    inverse_[x] = x_inv;
    inverse_[x_inv] = x;
    positives_.push_back(x);
    letters_.push_back(x);
    letters_.push_back(x_inv);
  }

  bool contains(Symbol x) const { return inverse_.contains(x); }
  std::size_t rank() const { return positives_.size(); }
  const std::vector<Symbol>& positives() const { return positives_; }
  const std::vector<Symbol>& letters() const { return letters_; }
  std::set<Symbol> letter_set() const { return {letters_.begin(), letters_.end()}; }

  Symbol inverse(Symbol x) const {
    auto it = inverse_.find(x);
    if (it == inverse_.end()) throw AlphabetMismatch("letter '" + x.name() + "' is not in the symmetric alphabet");
    return it->second;
  }

  /// (x_1 ... x_n)^-1 = x_n^-1 ... x_1^-1
  Word inverse(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
  }

 private:
  std::map<Symbol, Symbol> inverse_;
  std::vector<Symbol> positives_;
  std::vector<Symbol> letters_;
};

/// Cancels factors x x^-1 until none is left (stack-based, one pass).
inline Word free_reduce(const Word& w, const SymmetricAlphabet& s) {
  Word out;
  for (Symbol x : w) {
    if (!out.empty() && out.back() == s.inverse(x)) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

inline bool is_reduced(const Word& w, const SymmetricAlphabet& s) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == s.inverse(w[i - 1])) return false;
  return true;
}

/// Product in the free group on reduced representatives.
inline Word free_multiply(const Word& a, const Word& b, const SymmetricAlphabet& s) {
  return free_reduce(concat(a, b), s);
}

}  // namespace mfa
