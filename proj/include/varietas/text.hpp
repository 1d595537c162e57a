#pragma once

// Identity-expression language: parsing and printing.
//
//   equation := expr ['=' expr]                     (normalized to lhs - rhs)
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := [number ['/' number]] product  |  '0'
//   product  := primary (GLYPH primary)*        (one infix op per level in
//                                                 trees; chains and plain
//                                                 juxtaposition in words)
//   primary  := var "'"* | '(' expr ')' | '[' expr ',' expr ']'
//             | '{' expr ',' expr '}' | 'R' '(' expr ')'
//   var      := [a-z][0-9]*

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "varietas/polynomial.hpp"

namespace varietas {

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : InputError("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

namespace detail {

struct TokensLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.tokens < b.tokens; }
};
using RawPoly = std::map<Monomial, Rational, TokensLess>;

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {
    glyphs_.clear();
    for (std::size_t i = 0; i < sig.ops.size(); ++i)
      if (!sig.ops[i].bracket_form()) glyphs_.push_back({sig.ops[i].glyph, int(i)});
    std::sort(glyphs_.begin(), glyphs_.end(), [](auto& a, auto& b) { return a.first.size() > b.first.size(); });
  }

  RawPoly equation() {
    RawPoly lhs = expr();
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      RawPoly rhs = expr();
      for (auto& [m, c] : rhs) add(lhs, m, -c);
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return lhs;
  }

  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  static void add(RawPoly& p, const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, ins] = p.try_emplace(m, c);
    if (ins) return;
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }

  RawPoly expr() {
    RawPoly out;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    for (;;) {
      RawPoly t = term();
      for (auto& [m, c] : t) add(out, m, sign == 1 ? c : -c);
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      return out;
    }
  }

  std::optional<Rational> number() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return std::nullopt;
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string lit(text_.substr(start, pos_ - start));
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      const std::size_t ds = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (ds == pos_) fail("expected denominator");
      lit += "/" + std::string(text_.substr(ds, pos_ - ds));
    }
    try {
      return Rational::parse(lit);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  bool starts_primary() {
    skip_ws();
    const char c = peek();
    return std::islower(static_cast<unsigned char>(c)) || c == '(' || c == '[' || c == '{' ||
           (c == 'R' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(');
  }

  RawPoly term() {
    auto coeff = number();
    if (!starts_primary()) {
      if (coeff && coeff->is_zero()) return {};
      fail(coeff ? "constant term" : "expected a term");
    }
    RawPoly p = product();
    if (coeff)
      for (auto& [m, c] : p) c *= *coeff;
    return p;
  }

  std::optional<int> infix_op() {
    skip_ws();
    for (const auto& [g, idx] : glyphs_)
      if (text_.substr(pos_, g.size()) == g) {
        pos_ += g.size();
        return idx;
      }
    return std::nullopt;
  }

  RawPoly combine(const RawPoly& l, const RawPoly& r, int op) {
    RawPoly out;
    for (const auto& [ml, cl] : l)
      for (const auto& [mr, cr] : r) add(out, multiply(sig_.ambient, op, ml, mr), cl * cr);
    return out;
  }

  RawPoly product() {
    RawPoly acc = primary();
    int ops = 0;
    for (;;) {
      const std::size_t before = pos_;
      if (auto op = infix_op()) {
        if (sig_.ambient == Ambient::free_nonassociative && ++ops > 1) {
          pos_ = before;
          fail("ambiguous product; parenthesize nonassociative products");
        }
        RawPoly rhs = primary();
        acc = combine(acc, rhs, *op);
        continue;
      }
      if (starts_primary()) {
        if (sig_.ambient != Ambient::associative_word) fail("missing operation between factors");
        RawPoly rhs = primary();
        acc = combine(acc, rhs, 0);
        continue;
      }
      return acc;
    }
  }

  int variable(const std::string& name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return int(it - names_.begin());
    if (names_.size() >= 60) fail("too many variables");
    names_.push_back(name);
    return int(names_.size() - 1);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  RawPoly bracket(char open, char close) {
    const std::string glyph{open, ',', close};
    auto op = sig_.op_index(glyph);
    if (!op) fail("unknown operation symbol '" + glyph + "'");
    ++pos_;
    RawPoly l = expr();
    expect(',');
    RawPoly r = expr();
    expect(close);
    return combine(l, r, *op);
  }

  RawPoly primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RawPoly inner = expr();
      expect(')');
      return inner;
    }
    if (c == '[') return bracket('[', ']');
    if (c == '{') return bracket('{', '}');
    if (c == 'R') {
      if (!sig_.atoms) fail("operator atoms R(...) are not enabled for this signature");
      ++pos_;
      expect('(');
      RawPoly inner = expr();
      expect(')');
      RawPoly out;
      for (auto& [m, k] : inner) add(out, atom(m), k);
      return out;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string name(1, c);
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) name += text_[pos_++];
      int order = 0;
      while (peek() == '\'') {
        ++order;
        ++pos_;
      }
      if (order > 0 && !sig_.derivations) fail("derivation marks are not enabled for this signature");
      if (order >= tok::kOrderSlots) fail("derivation order above 9");
      return RawPoly{{leaf(variable(name), order), Rational(1)}};
    }
    if (c == '\0') fail("unexpected end of input");
    if (infix_op()) fail("operation without left operand");
    fail("unknown symbol '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::vector<std::pair<std::string, int>> glyphs_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

inline std::string letter_text(Token t, const std::vector<std::string>& names) {
  return names.at(tok::var_of(t)) + std::string(tok::order_of(t), '\'');
}

inline void word_text(const std::vector<Token>& t, std::size_t b, std::size_t e, const std::vector<std::string>& names,
                      bool juxtapose, std::string& out) {
  bool first = true;
  for (std::size_t i = b; i < e;) {
    const std::size_t end = letter_end(t, i);
    if (!first && !juxtapose) out += '*';
    first = false;
    if (t[i] == tok::kAtomOpen) {
      out += "R(";
      word_text(t, i + 1, end - 1, names, juxtapose, out);
      out += ')';
    } else {
      out += letter_text(t[i], names);
    }
    i = end;
  }
}

inline std::size_t tree_text(const std::vector<Token>& t, std::size_t pos, const Signature& sig,
                             const std::vector<std::string>& names, bool top, std::string& out) {
  if (!tok::is_op(t[pos])) {
    out += letter_text(t[pos], names);
    return pos + 1;
  }
  const Operation& op = sig.ops.at(tok::op_of(t[pos]));
  if (op.bracket_form()) {
    out += op.glyph[0];
    const std::size_t mid = tree_text(t, pos + 1, sig, names, true, out);
    out += ',';
    const std::size_t end = tree_text(t, mid, sig, names, true, out);
    out += op.glyph[2];
    return end;
  }
  if (!top) out += '(';
  const std::size_t mid = tree_text(t, pos + 1, sig, names, false, out);
  out += op.glyph;
  const std::size_t end = tree_text(t, mid, sig, names, false, out);
  if (!top) out += ')';
  return end;
}

}  // namespace detail

/// Parses an identity (or equation) over `sig`. The result is multilinear
/// with variables sorted by name.
inline Polynomial parse(std::string_view text, const SignaturePtr& sig) {
  detail::Parser parser(text, *sig);
  detail::RawPoly raw = parser.equation();
  const std::vector<std::string>& names = parser.names();
  if (raw.empty()) return Polynomial(sig, {});
  // Variables whose terms all cancelled are dropped.
  std::uint64_t used = 0;
  for (const auto& [m, c] : raw) used |= m.var_mask();
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (used >> i & 1) kept.push_back(names[i]);
  std::sort(kept.begin(), kept.end());
  std::vector<int> map(names.size(), 0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = std::lower_bound(kept.begin(), kept.end(), names[i]);
    if (it != kept.end() && *it == names[i]) map[i] = int(it - kept.begin());
  }
  Polynomial p(sig, kept);
  for (const auto& [m, c] : raw) p.add(relabel(m, map), c);
  p.check_multilinear();
  return p;
}

inline std::string to_string(const Monomial& m, const Signature& sig, const std::vector<std::string>& names) {
  std::string out;
  if (sig.ambient == Ambient::associative_word) {
    const bool jux = std::all_of(names.begin(), names.end(), [](const std::string& n) { return n.size() == 1; });
    detail::word_text(m.tokens, 0, m.tokens.size(), names, jux, out);
  } else {
    detail::tree_text(m.tokens, 0, sig, names, true, out);
  }
  return out;
}

/// Exact rendering with rational coefficients in canonical term order.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c.sign() < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    const Rational mag = neg ? -c : c;
    if (!mag.is_one()) out += mag.to_string();
    out += to_string(m, p.signature(), p.vars());
  }
  return out;
}

/// Rendering of the normalized identity: integral coprime coefficients,
/// positive leading coefficient.
inline std::string print_canonical(const Polynomial& p) { return to_string(normalized(p)); }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace varietas
