#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mfa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct AlphabetMismatch : Error {
  using Error::Error;
};

struct ResourceLimit : Error {
  using Error::Error;
};

namespace detail {

// Process-wide interning table. Reads take a shared lock, inserts an
// exclusive one. Names live in a deque so references stay valid.
class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), 0);
    if (inserted) {
      names_.emplace_back(name);
      it->second = static_cast<std::uint32_t>(names_.size() - 1);
    }
    return it->second;
  }

  const std::string& name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  SymbolTable() { names_.emplace_back(); ids_.emplace("", 0); }

  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace detail

/// An interned name drawn from an unbounded symbol space. Used for input
/// letters, stack symbols and grammar nonterminals alike. Ordering follows
/// interning order; use `name_less` when a human-facing order is wanted.
class Symbol {
 public:
  constexpr Symbol() = default;

  explicit Symbol(std::string_view name) : id_(detail::SymbolTable::instance().intern(name)) {
    if (name.empty()) throw Error("symbol name must be nonempty");
  }

  const std::string& name() const { return detail::SymbolTable::instance().name(id_); }
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  auto operator<=>(const Symbol&) const = default;

 private:
  std::uint32_t id_ = 0;
};

inline bool name_less(Symbol a, Symbol b) { return a.name() < b.name(); }

/// Mints a symbol whose name starts with `base` and is not in `in_use`.
inline Symbol fresh_symbol(std::string_view base, const std::set<Symbol>& in_use) {
  Symbol candidate(base);
  for (std::size_t i = 1; in_use.contains(candidate); ++i)
    candidate = Symbol(std::string(base) + std::to_string(i));
  return candidate;
}

using Word = std::vector<Symbol>;

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline bool ends_with(const Word& w, const Word& suffix) {
  return suffix.size() <= w.size() && std::equal(suffix.begin(), suffix.end(), w.end() - suffix.size());
}

inline bool starts_with_at(const Word& w, std::size_t pos, const Word& part) {
  return pos + part.size() <= w.size() && std::equal(part.begin(), part.end(), w.begin() + pos);
}

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word power(const Word& w, std::size_t k) {
  Word out;
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// Comma-separated symbol names; `_` (or nothing) is the empty word.
inline Word parse_word(std::string_view text) {
  Word w;
  if (text.empty() || text == "_") return w;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (part.empty()) throw Error("empty symbol in word '" + std::string(text) + "'");
    w.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

/// One symbol per character, e.g. letters("aab") = a,a,b.
inline Word letters(std::string_view text) {
  Word w;
  for (char c : text) w.emplace_back(std::string_view(&c, 1));
  return w;
}

inline std::string format_word(const Word& w) {
  if (w.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += w[i].name();
  }
  return out;
}

/// Shortlex order on words using symbol names; for deterministic output.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return name_less(a[i], b[i]);
  return false;
}

/// All words over `alphabet` of length exactly `len`, in shortlex order
/// when `alphabet` is sorted by name.
inline std::vector<Word> words_of_length(const std::vector<Symbol>& alphabet, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet.size());
    for (const auto& w : out)
      for (Symbol s : alphabet) {
        Word x = w;
        x.push_back(s);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Word> words_up_to(const std::vector<Symbol>& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    auto layer = words_of_length(alphabet, len);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace mfa
