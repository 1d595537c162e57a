#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varietas/engine.hpp"

namespace varietas {

/// A single-operation variety with a chosen basis of its degree-3
/// component and every other degree-3 monomial rewritten in that basis.
struct Degree3Presentation {
  VarietyPresentation variety;
  std::vector<Monomial> basis;
  std::map<Monomial, std::vector<std::pair<std::size_t, Rational>>, MonomialOrder> rewrite;

  /// Coordinates of any degree-3 monomial in the basis.
  [[nodiscard]] std::vector<std::pair<std::size_t, Rational>> coordinates(const Monomial& m) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == m) return {{i, Rational(1)}};
    auto it = rewrite.find(m);
    if (it == rewrite.end()) throw InputError("monomial outside the degree-3 presentation");
    return it->second;
  }
};

/// Builds the presentation. The default basis consists of the canonically
/// earliest monomials that are independent modulo the identities (the
/// latest ones are solved for). A user basis is checked for consistency.
inline Degree3Presentation degree3_presentation(const VarietyPresentation& v,
                                                const std::optional<std::vector<Monomial>>& user_basis = std::nullopt,
                                                const ConsequenceOptions& opt = {}) {
  if (v.signature->ops.size() != 1) throw InputError("degree-3 presentations need a single operation");
  const IdentitySpace space = consequence_space(v, 3, opt);
  const MultilinearBasis& B = space.basis();
  const std::size_t N = B.size();
  std::vector<bool> in_basis(N, false);
  if (user_basis) {
    for (const auto& m : *user_basis) {
      const auto i = B.find(m);
      if (!i) throw InputError("basis element " + to_string(m, B.signature(), standard_names(3)) + " is not a degree-3 monomial");
      if (in_basis[*i]) throw InputError("basis element " + to_string(m, B.signature(), standard_names(3)) + " is repeated");
      in_basis[*i] = true;
    }
    if (user_basis->size() != space.quotient_dim())
      throw InputError("basis has " + std::to_string(user_basis->size()) + " elements but the degree-3 component has dimension " +
                       std::to_string(space.quotient_dim()));
  }
  // Column order: monomials to be solved for first, basis monomials last.
  std::vector<std::size_t> order;
  if (user_basis) {
    for (std::size_t i = 0; i < N; ++i)
      if (!in_basis[i]) order.push_back(i);
    for (std::size_t i = 0; i < N; ++i)
      if (in_basis[i]) order.push_back(i);
  } else {
    for (std::size_t i = N; i-- > 0;) order.push_back(i);
  }
  std::vector<std::uint32_t> pos(N);
  for (std::size_t k = 0; k < N; ++k) pos[order[k]] = std::uint32_t(k);
  RowSpace reordered(N);
  for (const auto& r : space.space().rows()) {
    SparseRow row;
    for (const auto& e : r) row.push_back({pos[e.col], e.value});
    reordered.insert(normalize_row(std::move(row)));
  }
  Degree3Presentation out;
  out.variety = v;
  out.rewrite = decltype(out.rewrite)(MonomialOrder{v.signature->ambient});
  std::vector<bool> solved(N, false);
  for (std::size_t p : reordered.pivot_columns()) solved[order[p]] = true;
  for (std::size_t i = 0; i < N; ++i) {
    if (user_basis && !in_basis[i] && !solved[i])
      throw InputError("monomial " + to_string(B[i], B.signature(), standard_names(3)) +
                       " cannot be rewritten in the chosen basis");
    if (!solved[i]) out.basis.push_back(B[i]);
  }
  if (user_basis) {
    out.basis.clear();
    for (const auto& m : *user_basis) out.basis.push_back(m);
  }
  std::map<std::size_t, std::size_t> basis_pos;
  for (std::size_t k = 0; k < out.basis.size(); ++k) basis_pos[B.at(out.basis[k])] = k;
  for (std::size_t p : reordered.pivot_columns()) {
    std::vector<std::pair<std::size_t, Rational>> combo;
    for (const auto& e : reordered.row_for_pivot(p)) {
      if (e.col == p) continue;
      combo.push_back({basis_pos.at(order[e.col]), -e.value});
    }
    std::sort(combo.begin(), combo.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.rewrite.emplace(B[order[p]], std::move(combo));
  }
  return out;
}

struct DualResult {
  std::vector<Monomial> basis;
  /// Coefficient identity of each basis element (possibly zero).
  std::vector<Polynomial> coefficients;
  VarietyPresentation dual;
  /// Degree-3 relation space of the dual (relabeling closed).
  IdentitySpace relations;
};

/// Koszul dual relations through the Lie-admissibility of S (x) U:
/// the cyclic sum of [[x(x)u, y(x)v], z(x)w] with [X, Y] = XY - YX,
/// rewritten in the basis of S; each coefficient is an identity on U.
inline DualResult lie_admissible_dual(const Degree3Presentation& p, const std::string& dual_name = "") {
  const Signature& ssig = *p.variety.signature;
  const Ambient samb = ssig.ambient;
  const SignaturePtr usig = make_signature(Ambient::free_nonassociative, {ssig.ops[0].glyph});
  const std::vector<std::string> names = standard_names(3);
  std::vector<Polynomial> coeff(p.basis.size(), Polynomial(usig, names));
  auto smul = [&](const Monomial& a, const Monomial& b) { return multiply(samb, 0, a, b); };
  auto umul = [&](const Monomial& a, const Monomial& b) { return multiply(Ambient::free_nonassociative, 0, a, b); };
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& c : cyc) {
    const Monomial x = leaf(c[0]), y = leaf(c[1]), z = leaf(c[2]);
    // [[X,Y],Z] = (XY)Z - (YX)Z - Z(XY) + Z(YX), S and U parts in parallel
    const std::pair<Monomial, Monomial> terms[4] = {
        {smul(smul(x, y), z), umul(umul(x, y), z)},
        {smul(smul(y, x), z), umul(umul(y, x), z)},
        {smul(z, smul(x, y)), umul(z, umul(x, y))},
        {smul(z, smul(y, x)), umul(z, umul(y, x))},
    };
    const int sign[4] = {1, -1, -1, 1};
    for (int t = 0; t < 4; ++t)
      for (const auto& [idx, k] : p.coordinates(terms[t].first)) coeff[idx].add(terms[t].second, k * Rational(sign[t]));
  }
  DualResult out{p.basis, coeff, VarietyPresentation{dual_name.empty() ? p.variety.name + "!" : dual_name, usig, {}},
                 IdentitySpace(multilinear_basis(usig, 3), RowSpace(multilinear_basis(usig, 3)->size()))};
  for (const auto& f : coeff)
    if (!f.is_zero()) out.dual.identities.push_back(f);
  if (!out.dual.identities.empty()) out.relations = consequence_space(out.dual, 3);
  return out;
}

struct HilbertPrefix {
  std::vector<std::size_t> dims;  // d_1 .. d_N

  /// Coefficients of t^1 .. t^N: (-1)^n d_n / n!.
  [[nodiscard]] std::vector<Rational> coefficients() const {
    std::vector<Rational> out;
    Rational fact(1);
    for (std::size_t n = 1; n <= dims.size(); ++n) {
      fact *= Rational(std::int64_t(n));
      const Rational c = Rational(std::int64_t(dims[n - 1])) / fact;
      out.push_back(n % 2 ? -c : c);
    }
    return out;
  }
};

inline HilbertPrefix hilbert_prefix(const VarietyPresentation& v, int N, const ConsequenceOptions& opt = {}) {
  if (N < 2) throw InputError("Hilbert prefixes need N >= 2");
  if (N > v.signature->degree_cap)
    throw DegreeError("degree " + std::to_string(N) + " is above the cap " + std::to_string(v.signature->degree_cap));
  HilbertPrefix h;
  for (int n = 1; n <= N; ++n) h.dims.push_back(dim_multilinear(v, n, opt));
  return h;
}

/// Coefficients of t^1..t^N of outer(inner(t)) - t, exact.
inline std::vector<Rational> compose_residual(const HilbertPrefix& outer, const HilbertPrefix& inner, int N) {
  if (N < 1) throw InputError("N must be positive");
  if (int(outer.dims.size()) < N || int(inner.dims.size()) < N)
    throw InputError("Hilbert prefixes are shorter than N = " + std::to_string(N));
  const auto f = outer.coefficients(), g = inner.coefficients();
  // power[k] = coefficients of g(t)^n, indices 0..N
  std::vector<Rational> power(N + 1), result(N + 1);
  power[0] = Rational(1);
  for (int n = 1; n <= N; ++n) {
    std::vector<Rational> next(N + 1);
    for (int i = 0; i <= N; ++i) {
      if (power[i].is_zero()) continue;
      for (int j = 1; i + j <= N; ++j) next[i + j] += power[i] * g[j - 1];
    }
    power = std::move(next);
    for (int i = 0; i <= N; ++i) result[i] += f[n - 1] * power[i];
  }
  result[1] -= Rational(1);
  return {result.begin() + 1, result.end()};
}

struct KoszulReport {
  std::vector<Rational> residual;          // H(H!(t)) - t
  std::vector<Rational> reverse_residual;  // H!(H(t)) - t
  [[nodiscard]] bool passes() const {
    auto zero = [](const std::vector<Rational>& r) {
      return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); });
    };
    return zero(residual) && zero(reverse_residual);
  }
};

inline KoszulReport koszul_test(const HilbertPrefix& h, const HilbertPrefix& hdual, int N) {
  return {compose_residual(h, hdual, N), compose_residual(hdual, h, N)};
}

/// Opposite variety: words reversed, trees mirrored. An involution.
inline VarietyPresentation opposite(const VarietyPresentation& v) {
  VarietyPresentation out;
  const std::string suffix = "^op";
  out.name = v.name.size() > suffix.size() && v.name.ends_with(suffix) ? v.name.substr(0, v.name.size() - suffix.size())
                                                                      : v.name + suffix;
  out.signature = v.signature;
  for (const auto& f : v.identities) out.identities.push_back(mirror(f));
  return out;
}

}  // namespace varietas
