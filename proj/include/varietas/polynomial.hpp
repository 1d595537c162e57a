#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "varietas/monomial.hpp"
#include "varietas/rational.hpp"
#include "varietas/signature.hpp"

namespace varietas {

/// Default variable names for a degree-n component: a, b, c, ...
inline std::vector<std::string> standard_names(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) {
    if (n <= 26)
      v.emplace_back(1, char('a' + i));
    else
      v.push_back("x" + std::to_string(i + 1));
  }
  return v;
}

/// A homogeneous multilinear polynomial. Variables are kept sorted by name and
/// monomials refer to them by index.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Polynomial() : Polynomial(make_signature(Ambient::associative_word, {"*"}), {}) {}
  Polynomial(SignaturePtr sig, std::vector<std::string> vars)
      : sig_(std::move(sig)), vars_(std::move(vars)), terms_(MonomialOrder{sig_->ambient}) {
    if (!std::is_sorted(vars_.begin(), vars_.end()) ||
        std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
      throw std::logic_error("polynomial variables must be sorted and distinct");
  }

  [[nodiscard]] const Signature& signature() const { return *sig_; }
  [[nodiscard]] const SignaturePtr& signature_ptr() const { return sig_; }
  [[nodiscard]] Ambient ambient() const { return sig_->ambient; }
  [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] int degree() const { return int(vars_.size()); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  void add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  [[nodiscard]] Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational{} : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return Rational(-1) * *this; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.sig_->same_algebra(*b.sig_) && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Throws unless every monomial uses each variable exactly once.
  void check_multilinear() const {
    const std::uint64_t full = vars_.empty() ? 0 : (vars_.size() >= 64 ? ~0ull : (1ull << vars_.size()) - 1);
    for (const auto& [m, c] : terms_) {
      std::vector<int> seen(vars_.size(), 0);
      for (Token t : m.tokens)
        if (tok::is_letter(t)) {
          const int v = tok::var_of(t);
          if (v >= int(vars_.size()) || ++seen[v] > 1) throw InputError("polynomial is not multilinear");
        }
      if (m.var_mask() != full) throw InputError("polynomial is not multilinear");
    }
  }

  /// Same polynomial with variables renamed: index i goes to the position
  /// of names[i] in the sorted new name list.
  [[nodiscard]] Polynomial renamed(const std::vector<std::string>& names) const {
    if (names.size() != vars_.size()) throw InputError("renaming must keep the number of variables");
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("renaming is not injective");
    std::vector<int> map(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
      map[i] = int(std::lower_bound(sorted.begin(), sorted.end(), names[i]) - sorted.begin());
    Polynomial out(sig_, sorted);
    for (const auto& [m, c] : terms_) out.add(relabel(m, map), c);
    return out;
  }

  /// Same signature, variables a, b, c, ... in the current order.
  [[nodiscard]] Polynomial standardized() const { return renamed(standard_names(degree())); }

  [[nodiscard]] Polynomial with_signature(SignaturePtr sig) const {
    if (!sig->same_algebra(*sig_)) throw InputError("signature mismatch");
    Polynomial out(std::move(sig), vars_);
    for (const auto& [m, c] : terms_) out.add(m, c);
    return out;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (!sig_->same_algebra(*o.sig_)) throw InputError("polynomials over different signatures");
    if (vars_ != o.vars_) throw InputError("polynomials over different variables");
  }

  SignaturePtr sig_;
  std::vector<std::string> vars_;
  Terms terms_;
};

inline Polynomial monomial_polynomial(SignaturePtr sig, std::vector<std::string> vars, const Monomial& m,
                                      const Rational& c = Rational(1)) {
  Polynomial p(std::move(sig), std::move(vars));
  p.add(m, c);
  return p;
}

/// Relabels variables by a bijection given as name -> name.
inline Polynomial permute(const Polynomial& p, const std::map<std::string, std::string>& perm) {
  if (perm.size() != p.vars().size()) throw InputError("permutation domain does not match the variables");
  std::vector<std::string> images;
  for (const auto& v : p.vars()) {
    auto it = perm.find(v);
    if (it == perm.end()) throw InputError("permutation misses variable '" + v + "'");
    images.push_back(it->second);
  }
  std::vector<std::string> a = images, b = p.vars();
  std::sort(a.begin(), a.end());
  if (a != b) throw InputError("permutation is not a bijection on the variables");
  return p.renamed(images);
}

/// Relabels by index: variable i becomes variable perm[i].
inline Polynomial permute(const Polynomial& p, const std::vector<int>& perm) {
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  std::vector<int> id(p.vars().size());
  std::iota(id.begin(), id.end(), 0);
  if (check != id) throw InputError("not a permutation of the variables");
  Polynomial out(p.signature_ptr(), p.vars());
  for (const auto& [m, c] : p.terms()) out.add(relabel(m, perm), c);
  return out;
}

/// Replaces every occurrence of `var` by the polynomial `m`, which must not
/// share variables with the rest of `p`.
inline Polynomial substitute(const Polynomial& p, const std::string& var, const Polynomial& m) {
  if (!p.signature().same_algebra(m.signature())) throw InputError("substitution across signatures");
  auto vit = std::find(p.vars().begin(), p.vars().end(), var);
  if (vit == p.vars().end()) throw InputError("variable '" + var + "' does not occur");
  const int target = int(vit - p.vars().begin());
  std::vector<std::string> names;
  for (const auto& v : p.vars())
    if (v != var) names.push_back(v);
  for (const auto& v : m.vars()) {
    if (std::find(names.begin(), names.end(), v) != names.end())
      throw InputError("variable capture: '" + v + "' occurs on both sides of the substitution");
    names.push_back(v);
  }
  std::sort(names.begin(), names.end());
  auto pos = [&](const std::string& v) { return int(std::lower_bound(names.begin(), names.end(), v) - names.begin()); };
  std::vector<int> pmap(p.vars().size()), mmap(m.vars().size());
  for (std::size_t i = 0; i < p.vars().size(); ++i) pmap[i] = int(i) == target ? 63 : pos(p.vars()[i]);
  for (std::size_t i = 0; i < m.vars().size(); ++i) mmap[i] = pos(m.vars()[i]);
  Polynomial out(p.signature_ptr(), names);
  for (const auto& [pm, pc] : p.terms()) {
    const Monomial base = relabel(pm, pmap);
    for (const auto& [mm, mc] : m.terms()) out.add(substitute(base, 63, relabel(mm, mmap)), pc * mc);
  }
  return out;
}

/// Opposite polynomial (trees mirrored, words reversed).
inline Polynomial mirror(const Polynomial& p) {
  Polynomial out(p.signature_ptr(), p.vars());
  for (const auto& [m, c] : p.terms()) out.add(mirror(p.ambient(), m), c);
  return out;
}

/// Scaled so that coefficients are coprime integers and the canonically
/// least monomial has a positive coefficient.
inline Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_class d = c.denominator();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& [m, c] : p.terms()) {
    mpz_class n = c.numerator() * (den / c.denominator());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(mpq_class(den, num));
  if (p.terms().begin()->second.sign() < 0) scale = -scale;
  return scale * p;
}

}  // namespace varietas
