#pragma once

// Monomials as flat token strings.
//
// Trees (free nonassociative ambient) are stored in preorder: an operation
// token followed by its left and right subtrees. Words (associative ambient)
// are letter sequences; an operator atom R(w) is kAtomOpen, the tokens of w,
// kAtomClose. A letter token packs a variable index and a derivation order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varietas/signature.hpp"

namespace varietas {

using Token = std::int16_t;

namespace tok {
inline constexpr int kOrderSlots = 10;  // derivation orders 0..9
inline constexpr int kMaxVars = 64;
inline constexpr Token kAtomOpen = 30000;
inline constexpr Token kAtomClose = -100;

constexpr Token op(int i) { return Token(-1 - i); }
constexpr Token letter(int var, int order = 0) { return Token(var * kOrderSlots + order); }
constexpr bool is_op(Token t) { return t < 0 && t > -50; }
constexpr bool is_letter(Token t) { return t >= 0 && t < kAtomOpen; }
constexpr int op_of(Token t) { return -1 - t; }
constexpr int var_of(Token t) { return t / kOrderSlots; }
constexpr int order_of(Token t) { return t % kOrderSlots; }
}  // namespace tok

struct Monomial {
  std::vector<Token> tokens;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Number of base-variable occurrences.
  [[nodiscard]] int degree() const {
    return int(std::count_if(tokens.begin(), tokens.end(), [](Token t) { return tok::is_letter(t); }));
  }

  [[nodiscard]] std::uint64_t var_mask() const {
    std::uint64_t m = 0;
    for (Token t : tokens)
      if (tok::is_letter(t)) m |= std::uint64_t{1} << tok::var_of(t);
    return m;
  }

  /// Number of operator atoms, nested ones included.
  [[nodiscard]] int atom_count() const { return int(std::count(tokens.begin(), tokens.end(), tok::kAtomOpen)); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Token t : m.tokens) h = (h ^ std::size_t(std::uint16_t(t))) * 1099511628211ull;
    return h;
  }
};

/// End (one past) of the tree rooted at `pos` in a preorder token string.
inline std::size_t subtree_end(const std::vector<Token>& t, std::size_t pos) {
  if (pos >= t.size()) throw std::logic_error("malformed tree monomial");
  if (!tok::is_op(t[pos])) return pos + 1;
  return subtree_end(t, subtree_end(t, pos + 1));
}

/// End (one past) of the letter starting at `pos` in a word (skips atoms).
inline std::size_t letter_end(const std::vector<Token>& t, std::size_t pos) {
  if (t[pos] != tok::kAtomOpen) return pos + 1;
  int depth = 0;
  for (std::size_t i = pos; i < t.size(); ++i) {
    if (t[i] == tok::kAtomOpen) ++depth;
    if (t[i] == tok::kAtomClose && --depth == 0) return i + 1;
  }
  throw std::logic_error("unbalanced operator atom");
}

/// Canonical monomial order. Words: lexicographic on tokens, which orders
/// letters by variable then derivation order, puts atoms after plain
/// letters and compares atoms recursively. Trees: by shape (preorder with
/// leaves blanked out) first, then by the leaf word.
inline bool canonical_less(Ambient amb, const Monomial& a, const Monomial& b) {
  if (amb == Ambient::associative_word) return a.tokens < b.tokens;
  if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const Token x = a.tokens[i], y = b.tokens[i];
    const int kx = tok::is_op(x) ? tok::op_of(x) : 100;
    const int ky = tok::is_op(y) ? tok::op_of(y) : 100;
    if (kx != ky) return kx < ky;
  }
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const Token x = a.tokens[i], y = b.tokens[i];
    if (tok::is_op(x)) continue;
    if (x != y) return x < y;
  }
  return false;
}

struct MonomialOrder {
  Ambient ambient = Ambient::free_nonassociative;
  bool operator()(const Monomial& a, const Monomial& b) const { return canonical_less(ambient, a, b); }
};

inline Monomial leaf(int var, int order = 0) { return Monomial{{tok::letter(var, order)}}; }

/// Product of two monomials under operation `op`.
inline Monomial multiply(Ambient amb, int op, const Monomial& l, const Monomial& r) {
  Monomial m;
  m.tokens.reserve(l.tokens.size() + r.tokens.size() + 1);
  if (amb == Ambient::free_nonassociative) m.tokens.push_back(tok::op(op));
  m.tokens.insert(m.tokens.end(), l.tokens.begin(), l.tokens.end());
  m.tokens.insert(m.tokens.end(), r.tokens.begin(), r.tokens.end());
  return m;
}

inline Monomial atom(const Monomial& inner) {
  Monomial m;
  m.tokens.reserve(inner.tokens.size() + 2);
  m.tokens.push_back(tok::kAtomOpen);
  m.tokens.insert(m.tokens.end(), inner.tokens.begin(), inner.tokens.end());
  m.tokens.push_back(tok::kAtomClose);
  return m;
}

/// Renames variables: var i becomes map[i]; derivation orders are kept.
inline Monomial relabel(const Monomial& m, const std::vector<int>& map) {
  Monomial out = m;
  for (Token& t : out.tokens)
    if (tok::is_letter(t)) t = tok::letter(map.at(tok::var_of(t)), tok::order_of(t));
  return out;
}

namespace detail {
inline void mirror_tree(const std::vector<Token>& in, std::size_t pos, std::vector<Token>& out) {
  if (!tok::is_op(in[pos])) {
    out.push_back(in[pos]);
    return;
  }
  const std::size_t mid = subtree_end(in, pos + 1);
  out.push_back(in[pos]);
  mirror_tree(in, mid, out);
  mirror_tree(in, pos + 1, out);
}

inline std::vector<Token> reverse_word(const std::vector<Token>& in, std::size_t begin, std::size_t end) {
  std::vector<std::vector<Token>> letters;
  for (std::size_t i = begin; i < end;) {
    const std::size_t e = letter_end(in, i);
    if (in[i] == tok::kAtomOpen) {
      std::vector<Token> a{tok::kAtomOpen};
      auto inner = reverse_word(in, i + 1, e - 1);
      a.insert(a.end(), inner.begin(), inner.end());
      a.push_back(tok::kAtomClose);
      letters.push_back(std::move(a));
    } else {
      letters.push_back({in[i]});
    }
    i = e;
  }
  std::vector<Token> out;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.insert(out.end(), it->begin(), it->end());
  return out;
}
}  // namespace detail

/// Opposite monomial: trees mirrored, words reversed (inside atoms too).
inline Monomial mirror(Ambient amb, const Monomial& m) {
  Monomial out;
  if (amb == Ambient::free_nonassociative) {
    out.tokens.reserve(m.tokens.size());
    detail::mirror_tree(m.tokens, 0, out.tokens);
  } else {
    out.tokens = detail::reverse_word(m.tokens, 0, m.tokens.size());
  }
  return out;
}

/// Replaces the (plain) letter of `var` by `replacement`.
inline Monomial substitute(const Monomial& m, int var, const Monomial& replacement) {
  Monomial out;
  out.tokens.reserve(m.tokens.size() + replacement.tokens.size());
  bool found = false;
  for (Token t : m.tokens) {
    if (tok::is_letter(t) && tok::var_of(t) == var) {
      if (tok::order_of(t) != 0) throw InputError("cannot substitute into a derived letter");
      out.tokens.insert(out.tokens.end(), replacement.tokens.begin(), replacement.tokens.end());
      found = true;
    } else {
      out.tokens.push_back(t);
    }
  }
  if (!found) throw InputError("substituted variable does not occur");
  return out;
}

}  // namespace varietas
