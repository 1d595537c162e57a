#pragma once

// Expansion maps between signatures and the checks built on them.
//
//   commutator       [x,y] -> xy - yx
//   anticommutator   {x,y} -> xy + yx
//   polarization     x*y   -> k_alt [x,y] + k_sym {x,y}
//   derivation       x>y   -> x'y,        x<y  -> xy'
//   rota_baxter      x>=y  -> R(x)y,      x<=y -> xR(y)
//   star             x*y   -> xR(y) + R(x)y

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "varietas/engine.hpp"

namespace varietas {

enum class ExpansionKind { commutator, anticommutator, polarization, derivation, rota_baxter, star };

inline const char* expansion_name(ExpansionKind k) {
  switch (k) {
    case ExpansionKind::commutator: return "commutator";
    case ExpansionKind::anticommutator: return "anticommutator";
    case ExpansionKind::polarization: return "polarization";
    case ExpansionKind::derivation: return "derivation";
    case ExpansionKind::rota_baxter: return "rota-baxter";
    case ExpansionKind::star: return "star";
  }
  return "?";
}

struct ExpansionMap {
  ExpansionKind kind;
  SignaturePtr source;
  SignaturePtr target;
  Rational kappa_sym{-1};
  Rational kappa_alt{1};
  /// Extra factor per operation application (kernels do not depend on it).
  Rational scale{1};

  [[nodiscard]] ExpansionMap scaled(const Rational& s) const {
    if (s.is_zero()) throw InputError("expansion scale must be nonzero");
    ExpansionMap e = *this;
    e.scale = scale * s;
    return e;
  }
};

/// [x,y] -> xy - yx into the product of `target`.
inline ExpansionMap commutator_map(const SignaturePtr& target, const std::string& glyph = "[,]") {
  if (target->ops.size() != 1) throw InputError("commutator needs a single-product target");
  return {ExpansionKind::commutator, make_signature(Ambient::free_nonassociative, {glyph}), target};
}

inline ExpansionMap anticommutator_map(const SignaturePtr& target, const std::string& glyph = "{,}") {
  if (target->ops.size() != 1) throw InputError("anticommutator needs a single-product target");
  return {ExpansionKind::anticommutator, make_signature(Ambient::free_nonassociative, {glyph}), target};
}

/// Default convention xy = [x,y] - {x,y}: kappa_alt = 1, kappa_sym = -1.
inline ExpansionMap polarization_map(const Rational& kappa_sym = Rational(-1), const Rational& kappa_alt = Rational(1),
                                     const std::string& glyph = "*") {
  if (kappa_sym.is_zero() || kappa_alt.is_zero()) throw InputError("polarization constants must be nonzero");
  ExpansionMap e{ExpansionKind::polarization, make_signature(Ambient::free_nonassociative, {glyph}),
                 make_signature(Ambient::free_nonassociative, {"[,]", "{,}"})};
  e.kappa_sym = kappa_sym;
  e.kappa_alt = kappa_alt;
  return e;
}

inline ExpansionMap derivation_map() {
  return {ExpansionKind::derivation, make_signature(Ambient::free_nonassociative, {">", "<"}),
          with_features(Signature::make(Ambient::associative_word, {"*"}), true, false)};
}

inline ExpansionMap rota_baxter_map() {
  return {ExpansionKind::rota_baxter, make_signature(Ambient::free_nonassociative, {"<=", ">="}),
          with_features(Signature::make(Ambient::associative_word, {"*"}), false, true)};
}

inline ExpansionMap star_map(const std::string& glyph = "*") {
  return {ExpansionKind::star, make_signature(Ambient::free_nonassociative, {glyph}),
          with_features(Signature::make(Ambient::associative_word, {"*"}), false, true)};
}

namespace detail {

inline void raw_add(RawPoly& p, const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, ins] = p.try_emplace(m, c);
  if (ins) return;
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

inline RawPoly raw_product(const RawPoly& l, const RawPoly& r, Ambient amb, int op, const Rational& c) {
  RawPoly out;
  for (const auto& [ml, cl] : l)
    for (const auto& [mr, cr] : r) raw_add(out, multiply(amb, op, ml, mr), c * cl * cr);
  return out;
}

inline RawPoly raw_atom(const RawPoly& p) {
  RawPoly out;
  for (const auto& [m, c] : p) raw_add(out, atom(m), c);
  return out;
}

/// Leibniz rule on a polynomial in plain/derived letters.
inline RawPoly raw_derive(const RawPoly& p) {
  RawPoly out;
  for (const auto& [m, c] : p)
    for (std::size_t i = 0; i < m.tokens.size(); ++i) {
      const Token t = m.tokens[i];
      if (!tok::is_letter(t)) throw InputError("cannot differentiate operator atoms");
      if (tok::order_of(t) + 1 >= tok::kOrderSlots) throw DegreeError("derivation order above 9");
      Monomial d = m;
      d.tokens[i] = tok::letter(tok::var_of(t), tok::order_of(t) + 1);
      raw_add(out, d, c);
    }
  return out;
}

inline void raw_merge(RawPoly& acc, const RawPoly& p, const Rational& c = Rational(1)) {
  for (const auto& [m, k] : p) raw_add(acc, m, c * k);
}

class Expander {
 public:
  explicit Expander(const ExpansionMap& e) : e_(e) {
    const Signature& src = *e.source;
    auto need = [&](const std::string& g) {
      auto i = src.op_index(g);
      if (!i) throw InputError(std::string(expansion_name(e.kind)) + " expansion needs the operation '" + g + "'");
      return *i;
    };
    switch (e.kind) {
      case ExpansionKind::derivation:
        first_ = need(">");
        second_ = need("<");
        break;
      case ExpansionKind::rota_baxter:
        first_ = need(">=");
        second_ = need("<=");
        break;
      default:
        if (src.ops.size() != 1) throw InputError("expansion source must have a single operation");
    }
    if (e.kind == ExpansionKind::polarization) {
      alt_ = *e.target->op_index("[,]");
      sym_ = *e.target->op_index("{,}");
    }
  }

  RawPoly eval(const std::vector<Token>& t, std::size_t& pos) const {
    const Token head = t[pos++];
    if (!tok::is_op(head)) return RawPoly{{Monomial{{head}}, Rational(1)}};
    const RawPoly l = eval(t, pos);
    const RawPoly r = eval(t, pos);
    const int op = tok::op_of(head);
    const Ambient amb = e_.target->ambient;
    const Rational& s = e_.scale;
    RawPoly out;
    switch (e_.kind) {
      case ExpansionKind::commutator:
        out = raw_product(l, r, amb, 0, s);
        raw_merge(out, raw_product(r, l, amb, 0, -s));
        break;
      case ExpansionKind::anticommutator:
        out = raw_product(l, r, amb, 0, s);
        raw_merge(out, raw_product(r, l, amb, 0, s));
        break;
      case ExpansionKind::polarization:
        out = raw_product(l, r, amb, alt_, s * e_.kappa_alt);
        raw_merge(out, raw_product(l, r, amb, sym_, s * e_.kappa_sym));
        break;
      case ExpansionKind::derivation:
        out = op == first_ ? raw_product(raw_derive(l), r, amb, 0, s) : raw_product(l, raw_derive(r), amb, 0, s);
        break;
      case ExpansionKind::rota_baxter:
        out = op == first_ ? raw_product(raw_atom(l), r, amb, 0, s) : raw_product(l, raw_atom(r), amb, 0, s);
        break;
      case ExpansionKind::star:
        out = raw_product(l, raw_atom(r), amb, 0, s);
        raw_merge(out, raw_product(raw_atom(l), r, amb, 0, s));
        break;
    }
    return out;
  }

 private:
  const ExpansionMap& e_;
  int first_ = 0, second_ = 0, alt_ = 0, sym_ = 0;
};

}  // namespace detail

/// Homomorphic image of `p` (rota_baxter/star results are not normalized).
inline Polynomial expand(const ExpansionMap& e, const Polynomial& p) {
  if (!p.signature().same_algebra(*e.source))
    throw InputError(std::string(expansion_name(e.kind)) + " expansion applied to a polynomial over another signature");
  detail::Expander ex(e);
  Polynomial out(e.target, p.vars());
  for (const auto& [m, c] : p.terms()) {
    std::size_t pos = 0;
    for (const auto& [img, k] : ex.eval(m.tokens, pos)) out.add(img, c * k);
  }
  return out;
}

inline MonomialExpansion as_monomial_expansion(const ExpansionMap& e) {
  return [e](const Monomial& m, int n) { return expand(e, monomial_polynomial(e.source, standard_names(n), m)); };
}

/// Identities of degree n of the structure obtained from `target` through `e`.
inline IdentitySpace expansion_kernel(const ExpansionMap& e, const VarietyPresentation& target, int n,
                                      const ConsequenceOptions& opt = {}) {
  if (!e.target->same_algebra(*target.signature))
    throw InputError(std::string(expansion_name(e.kind)) + " expansion does not land in variety '" + target.name + "'");
  return kernel_of_expansion(e.source, n, as_monomial_expansion(e), target, opt);
}

// ---------------------------------------------------------------- Rota-Baxter

namespace detail {

inline std::vector<std::vector<Token>> split_letters(const std::vector<Token>& t) {
  std::vector<std::vector<Token>> out;
  for (std::size_t i = 0; i < t.size();) {
    const std::size_t e = letter_end(t, i);
    out.emplace_back(t.begin() + std::ptrdiff_t(i), t.begin() + std::ptrdiff_t(e));
    i = e;
  }
  return out;
}

inline bool is_atom(const std::vector<Token>& letter) { return !letter.empty() && letter.front() == tok::kAtomOpen; }

inline std::vector<Token> atom_inner(const std::vector<Token>& letter) {
  return {letter.begin() + 1, letter.end() - 1};
}

inline std::vector<Token> wrap_atom(const std::vector<Token>& inner) {
  std::vector<Token> out{tok::kAtomOpen};
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(tok::kAtomClose);
  return out;
}

class RbNormalizer {
 public:
  RawPoly word(const std::vector<Token>& t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    // Normalize atom contents first (innermost), distributing the sums.
    std::vector<std::pair<std::vector<Token>, Rational>> partial{{{}, Rational(1)}};
    for (const auto& letter : split_letters(t)) {
      std::vector<std::pair<std::vector<Token>, Rational>> next;
      if (!is_atom(letter)) {
        for (auto& [w, c] : partial) {
          w.insert(w.end(), letter.begin(), letter.end());
          next.push_back({std::move(w), c});
        }
      } else {
        const RawPoly inner = word(atom_inner(letter));
        for (const auto& [w, c] : partial)
          for (const auto& [m, k] : inner) {
            std::vector<Token> x = w;
            const auto a = wrap_atom(m.tokens);
            x.insert(x.end(), a.begin(), a.end());
            next.push_back({std::move(x), c * k});
          }
      }
      partial = std::move(next);
    }
    RawPoly out;
    for (const auto& [w, c] : partial) {
      const auto letters = split_letters(w);
      std::size_t i = 0;
      while (i + 1 < letters.size() && !(is_atom(letters[i]) && is_atom(letters[i + 1]))) ++i;
      if (i + 1 >= letters.size()) {
        raw_add(out, Monomial{w}, c);
        continue;
      }
      // R(u)R(v) -> R(R(u)v) + R(uR(v)) at the leftmost adjacent pair
      const auto u = atom_inner(letters[i]), v = atom_inner(letters[i + 1]);
      std::vector<Token> prefix, suffix;
      for (std::size_t j = 0; j < i; ++j) prefix.insert(prefix.end(), letters[j].begin(), letters[j].end());
      for (std::size_t j = i + 2; j < letters.size(); ++j) suffix.insert(suffix.end(), letters[j].begin(), letters[j].end());
      std::vector<Token> ru_v = letters[i];
      ru_v.insert(ru_v.end(), v.begin(), v.end());
      std::vector<Token> u_rv = u;
      u_rv.insert(u_rv.end(), letters[i + 1].begin(), letters[i + 1].end());
      for (const auto& inner : {ru_v, u_rv}) {
        std::vector<Token> x = prefix;
        const auto a = wrap_atom(inner);
        x.insert(x.end(), a.begin(), a.end());
        x.insert(x.end(), suffix.begin(), suffix.end());
        raw_merge(out, word(x), c);
      }
    }
    memo_.emplace(t, out);
    return out;
  }

  RawPoly poly(const RawPoly& p) {
    RawPoly out;
    for (const auto& [m, c] : p) raw_merge(out, word(m.tokens), c);
    return out;
  }

 private:
  std::map<std::vector<Token>, RawPoly> memo_;
};

}  // namespace detail

/// Whether no two operator atoms are adjacent at any nesting level.
inline bool rb_is_normal(const Monomial& m) {
  const auto letters = detail::split_letters(m.tokens);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!detail::is_atom(letters[i])) continue;
    if (i + 1 < letters.size() && detail::is_atom(letters[i + 1])) return false;
    if (!rb_is_normal(Monomial{detail::atom_inner(letters[i])})) return false;
  }
  return true;
}

/// Weight-0 Rota-Baxter normal form: R(u)R(v) -> R(R(u)v) + R(uR(v)),
/// leftmost-innermost, to a fixed point.
inline Polynomial rb_normalize(const Polynomial& p) {
  if (p.ambient() != Ambient::associative_word) throw InputError("rb_normalize works on associative words");
  detail::RbNormalizer nz;
  Polynomial out(p.signature_ptr(), p.vars());
  for (const auto& [m, c] : p.terms())
    for (const auto& [w, k] : nz.word(m.tokens)) out.add(w, c * k);
  return out;
}

namespace detail {

/// Relations of the free Rota-Baxter algebra over a word variety, on the
/// finite universes of normal operated words with a fixed variable set and
/// R-weight. Rel(S, k) is spanned by
///   f(w_1..w_m)    identities on normal words partitioning S,
///   R(r)           for r in Rel(S, k-1),
///   x r y          for r in Rel(T, j), T a proper subset of S, x, y words,
/// each followed by normalization.
class RbCongruence {
 public:
  explicit RbCongruence(const VarietyPresentation& v) : v_(v) {}

  const std::vector<Monomial>& universe(std::uint32_t mask, int k) {
    auto key = std::make_pair(mask, k);
    if (auto it = words_.find(key); it != words_.end()) return it->second;
    std::vector<Monomial> out;
    for (auto& s : seq(mask, k, false)) out.push_back(Monomial{std::move(s)});
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a.tokens < b.tokens; });
    return words_.emplace(key, std::move(out)).first->second;
  }

  const RowSpace& relations(std::uint32_t mask, int k) {
    auto key = std::make_pair(mask, k);
    if (auto it = rel_.find(key); it != rel_.end()) return it->second;
    const auto& U = universe(mask, k);
    std::map<Monomial, std::uint32_t, TokensLess> index;
    for (std::uint32_t i = 0; i < U.size(); ++i) index.emplace(U[i], i);
    RowSpace space(U.size());
    auto push = [&](const RawPoly& raw) {
      SparseRow row;
      for (const auto& [m, c] : norm_.poly(raw)) {
        auto it = index.find(m);
        if (it == index.end()) throw std::logic_error("normalized relation left the universe");
        row.push_back({it->second, c});
      }
      row = normalize_row(std::move(row));
      if (!row.empty()) space.insert(row);
    };
    identity_instances(mask, k, push);
    if (k >= 1) {
      const auto& lower = relations(mask, k - 1);
      const auto& LU = universe(mask, k - 1);
      for (const auto& r : lower.rows()) push(raw_atom(to_raw(r, LU)));
    }
    // x r y for proper nonempty T
    for (std::uint32_t T = (mask - 1) & mask; T; T = (T - 1) & mask) {
      const std::uint32_t rest = mask & ~T;
      for (int j = 0; j <= k; ++j) {
        const auto& inner = relations(T, j);
        if (inner.rank() == 0) continue;
        const auto inner_rows = inner.rows();
        const auto& IU = universe(T, j);
        for (std::uint32_t X = rest;; X = (X - 1) & rest) {
          const std::uint32_t Y = rest & ~X;
          for (int kx = 0; kx <= k - j; ++kx) {
            const int ky = k - j - kx;
            const auto xs = side(X, kx), ys = side(Y, ky);
            for (const auto& r : inner_rows) {
              const RawPoly rr = to_raw(r, IU);
              for (const auto& x : xs)
                for (const auto& y : ys) {
                  RawPoly prod;
                  for (const auto& [m, c] : rr) {
                    Monomial w{x};
                    w.tokens.insert(w.tokens.end(), m.tokens.begin(), m.tokens.end());
                    w.tokens.insert(w.tokens.end(), y.begin(), y.end());
                    raw_add(prod, w, c);
                  }
                  push(prod);
                }
            }
          }
          if (X == 0) break;
        }
      }
    }
    return rel_.emplace(key, std::move(space)).first->second;
  }

  RbNormalizer& normalizer() { return norm_; }

 private:
  static RawPoly to_raw(const SparseRow& r, const std::vector<Monomial>& U) {
    RawPoly out;
    for (const auto& e : r) raw_add(out, U[e.col], e.value);
    return out;
  }

  /// Context words for one side of a product: the empty word if the side has
  /// no variables (and weight 0), else the universe.
  std::vector<std::vector<Token>> side(std::uint32_t mask, int k) {
    if (mask == 0) return k == 0 ? std::vector<std::vector<Token>>{{}} : std::vector<std::vector<Token>>{};
    std::vector<std::vector<Token>> out;
    for (const auto& m : universe(mask, k)) out.push_back(m.tokens);
    return out;
  }

  std::vector<std::vector<Token>> seq(std::uint32_t mask, int k, bool prev_atom) {
    std::vector<std::vector<Token>> out;
    if (mask == 0) {
      if (k == 0) out.push_back({});
      return out;
    }
    for (int x = 0; x < 32; ++x) {
      if (!(mask >> x & 1)) continue;
      for (auto& rest : seq(mask & ~(1u << x), k, false)) {
        std::vector<Token> w{tok::letter(x)};
        w.insert(w.end(), rest.begin(), rest.end());
        out.push_back(std::move(w));
      }
    }
    if (!prev_atom && k >= 1)
      for (std::uint32_t T = mask; T; T = (T - 1) & mask)
        for (int j = 0; j <= k - 1; ++j)
          for (const auto& inner : universe(T, j))
            for (auto& rest : seq(mask & ~T, k - 1 - j, true)) {
              std::vector<Token> w = wrap_atom(inner.tokens);
              w.insert(w.end(), rest.begin(), rest.end());
              out.push_back(std::move(w));
            }
    return out;
  }

  template <class Push>
  void identity_instances(std::uint32_t mask, int k, Push&& push) {
    for (const auto& f : v_.identities) {
      const int m = f.degree();
      std::vector<std::uint32_t> blocks(m);
      std::vector<int> weights(m);
      std::function<void(int, std::uint32_t)> assign = [&](int i, std::uint32_t left) {
        if (i == m) {
          if (left) return;
          assign_weights(f, blocks, weights, 0, k, push);
          return;
        }
        for (std::uint32_t T = left; T; T = (T - 1) & left) {
          blocks[i] = T;
          assign(i + 1, left & ~T);
        }
      };
      assign(0, mask);
    }
  }

  template <class Push>
  void assign_weights(const Polynomial& f, const std::vector<std::uint32_t>& blocks, std::vector<int>& weights, int i,
                      int left, Push&& push) {
    const int m = int(blocks.size());
    if (i == m) {
      if (left != 0) return;
      std::vector<const std::vector<Monomial>*> choices(m);
      for (int b = 0; b < m; ++b) choices[b] = &universe(blocks[b], weights[b]);
      std::vector<std::size_t> pick(m, 0);
      for (int b = 0; b < m; ++b)
        if (choices[b]->empty()) return;
      for (;;) {
        RawPoly inst;
        for (const auto& [mono, c] : f.terms()) {
          Monomial w;
          for (Token t : mono.tokens) {
            const auto& arg = (*choices[tok::var_of(t)])[pick[tok::var_of(t)]].tokens;
            w.tokens.insert(w.tokens.end(), arg.begin(), arg.end());
          }
          raw_add(inst, w, c);
        }
        push(inst);
        int b = 0;
        while (b < m && ++pick[b] == choices[b]->size()) pick[b++] = 0;
        if (b == m) break;
      }
      return;
    }
    for (int w = 0; w <= left; ++w) {
      weights[i] = w;
      assign_weights(f, blocks, weights, i + 1, left - w, push);
    }
  }

  const VarietyPresentation& v_;
  RbNormalizer norm_;
  std::map<std::pair<std::uint32_t, int>, std::vector<Monomial>> words_;
  std::map<std::pair<std::uint32_t, int>, RowSpace> rel_;
};

}  // namespace detail

/// Whether `p` (over the source of a rota_baxter or star map) holds in every
/// `v`-algebra with a weight-0 Rota-Baxter operator, through the expansion.
inline bool rb_identity_holds(const VarietyPresentation& v, const Polynomial& p, const ExpansionMap& e) {
  if (e.kind != ExpansionKind::rota_baxter && e.kind != ExpansionKind::star)
    throw InputError("rb_identity_holds needs a rota-baxter or star expansion");
  if (v.signature->ambient != Ambient::associative_word) throw InputError("Rota-Baxter checks need a word variety");
  v.validate();
  p.check_multilinear();
  if (p.is_zero()) return true;
  const int n = p.degree();
  if (n > 3) throw DegreeError("Rota-Baxter checks are limited to degree 3 (R-weight 2)");
  const Polynomial q = rb_normalize(expand(e, p));
  if (q.is_zero()) return true;
  detail::RbCongruence cong(v);
  const std::uint32_t full = (1u << n) - 1;
  const int weight = n - 1;
  const auto& U = cong.universe(full, weight);
  SparseRow row;
  for (const auto& [m, c] : q.terms()) {
    auto it = std::lower_bound(U.begin(), U.end(), m, [](const Monomial& a, const Monomial& b) { return a.tokens < b.tokens; });
    if (it == U.end() || !(*it == m)) throw std::logic_error("normal form outside the operated-word universe");
    row.push_back({std::uint32_t(it - U.begin()), c});
  }
  return cong.relations(full, weight).contains(normalize_row(std::move(row)));
}

// ---------------------------------------------------------------- derivations

struct DiffCheck {
  bool holds = true;
  /// Derivation multidegrees (orders of a, b, c, ...) whose component fails.
  std::vector<std::vector<int>> failing;
};

inline std::string multidegree_text(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

/// Whether `p` over {>, <} holds in every differential `v`-algebra through
/// x>y = x'y, x<y = xy'. Each derivation multidegree is checked separately,
/// with decorated letters treated as free generators.
inline DiffCheck diff_identity_holds(const VarietyPresentation& v, const Polynomial& p, int max_order = -1,
                                     const ConsequenceOptions& opt = {}) {
  if (v.signature->ambient != Ambient::associative_word) throw InputError("derivation checks need a word variety");
  p.check_multilinear();
  const ExpansionMap e = derivation_map();
  const Polynomial q = expand(e, p);
  if (max_order < 0) max_order = std::max(0, p.degree() - 1);
  std::map<std::vector<int>, Polynomial> parts;
  for (const auto& [m, c] : q.terms()) {
    std::vector<int> deg(p.degree(), 0);
    Monomial plain = m;
    for (Token& t : plain.tokens) {
      if (tok::order_of(t) > max_order)
        throw DegreeError("derivation order " + std::to_string(tok::order_of(t)) + " above the bound " +
                          std::to_string(max_order));
      deg[tok::var_of(t)] = tok::order_of(t);
      t = tok::letter(tok::var_of(t));
    }
    auto it = parts.try_emplace(deg, v.signature, p.vars()).first;
    it->second.add(plain, c);
  }
  DiffCheck out;
  for (const auto& [deg, part] : parts)
    if (!part.is_zero() && !identity_holds(v, part, false, opt).holds) {
      out.holds = false;
      out.failing.push_back(deg);
    }
  return out;
}

// ---------------------------------------------------------------- polarization

/// Normal form modulo antisymmetry of [,] and symmetry of {,}: the children
/// of every bracket node are ordered by their least variable. Returns the
/// sign picked up from antisymmetric swaps.
inline std::pair<int, Monomial> symmetry_normal_form(const Signature& sig, const Monomial& m) {
  const auto alt = sig.op_index("[,]");
  const auto sym = sig.op_index("{,}");
  int sign = 1;
  std::function<std::pair<std::vector<Token>, int>(std::size_t&)> rec = [&](std::size_t& pos) {
    const Token head = m.tokens[pos++];
    if (!tok::is_op(head)) return std::make_pair(std::vector<Token>{head}, tok::var_of(head));
    auto [l, lmin] = rec(pos);
    auto [r, rmin] = rec(pos);
    const int op = tok::op_of(head);
    if ((op == alt || op == sym) && rmin < lmin) {
      std::swap(l, r);
      std::swap(lmin, rmin);
      if (op == alt) sign = -sign;
    }
    std::vector<Token> t{head};
    t.insert(t.end(), l.begin(), l.end());
    t.insert(t.end(), r.begin(), r.end());
    return std::make_pair(std::move(t), lmin);
  };
  std::size_t pos = 0;
  auto [tokens, least] = rec(pos);
  (void)least;
  return {sign, Monomial{std::move(tokens)}};
}

inline Polynomial symmetry_reduced(const Polynomial& p) {
  Polynomial out(p.signature_ptr(), p.vars());
  for (const auto& [m, c] : p.terms()) {
    auto [s, nf] = symmetry_normal_form(p.signature(), m);
    out.add(nf, s > 0 ? c : -c);
  }
  return out;
}

/// Span of all relabelings of `ids` (one degree, tree ambient) modulo the
/// bracket symmetries.
inline IdentitySpace symmetric_span(const std::vector<Polynomial>& ids) {
  if (ids.empty()) throw InputError("no identities");
  const int n = ids.front().degree();
  BasisPtr basis = multilinear_basis(ids.front().signature_ptr(), n);
  RowSpace space(basis->size());
  std::vector<int> perm(n);
  for (const auto& f : ids) {
    if (f.degree() != n) throw InputError("identities of different degrees");
    std::iota(perm.begin(), perm.end(), 0);
    do space.insert(basis->row_of(symmetry_reduced(permute(f, perm))));
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  return IdentitySpace(basis, std::move(space));
}

struct Polarization {
  std::vector<Polynomial> identities;  // canonical RREF rows
  IdentitySpace space;
};

/// Polarized form of a set of same-degree identities over one operation
/// (tree ambient): substitute, work modulo the bracket symmetries, and
/// return the reduced row-echelon basis of the relabeling-closed span.
inline Polarization polarize(const std::vector<Polynomial>& ids, const ExpansionMap& e) {
  if (e.kind != ExpansionKind::polarization) throw InputError("polarize needs a polarization map");
  std::vector<Polynomial> expanded;
  for (const auto& f : ids) {
    Polynomial g = expand(e, f);
    if (!symmetry_reduced(g).is_zero()) expanded.push_back(std::move(g));
  }
  if (expanded.empty()) {
    const int n = ids.empty() ? 2 : ids.front().degree();
    BasisPtr basis = multilinear_basis(e.target, n);
    return {{}, IdentitySpace(basis, RowSpace(basis->size()))};
  }
  IdentitySpace span = symmetric_span(expanded);
  std::vector<Polynomial> out;
  for (const auto& f : span.identities()) out.push_back(normalized(f));
  return {std::move(out), std::move(span)};
}

/// Polarization of a variety's degree-3 relations (word varieties are first
/// written over trees with associativity added).
inline Polarization polarize(const VarietyPresentation& v, const Rational& kappa_sym = Rational(-1),
                             const Rational& kappa_alt = Rational(1)) {
  const VarietyPresentation t = to_tree_presentation(v);
  if (t.signature->ops.size() != 1) throw InputError("polarization needs a single operation");
  return polarize(t.identities, polarization_map(kappa_sym, kappa_alt, t.signature->ops[0].glyph));
}

/// Inverse substitution [x,y] -> (xy - yx)/(2 k_alt), {x,y} -> (xy + yx)/(2 k_sym).
inline Polynomial depolarize(const Polynomial& p, const ExpansionMap& e) {
  if (e.kind != ExpansionKind::polarization) throw InputError("depolarize needs a polarization map");
  if (!p.signature().same_algebra(*e.target)) throw InputError("depolarize expects brackets and braces");
  const int alt = *e.target->op_index("[,]");
  const Rational ka = Rational(1) / (Rational(2) * e.kappa_alt), ks = Rational(1) / (Rational(2) * e.kappa_sym);
  std::function<detail::RawPoly(const std::vector<Token>&, std::size_t&)> rec = [&](const std::vector<Token>& t,
                                                                                    std::size_t& pos) {
    const Token head = t[pos++];
    if (!tok::is_op(head)) return detail::RawPoly{{Monomial{{head}}, Rational(1)}};
    const auto l = rec(t, pos);
    const auto r = rec(t, pos);
    const bool is_alt = tok::op_of(head) == alt;
    auto out = detail::raw_product(l, r, Ambient::free_nonassociative, 0, is_alt ? ka : ks);
    detail::raw_merge(out, detail::raw_product(r, l, Ambient::free_nonassociative, 0, is_alt ? -ka : ks));
    return out;
  };
  Polynomial out(e.source, p.vars());
  for (const auto& [m, c] : p.terms()) {
    std::size_t pos = 0;
    for (const auto& [w, k] : rec(m.tokens, pos)) out.add(w, c * k);
  }
  return out;
}

}  // namespace varietas
