#pragma once

// Multilinear components of free algebras in a variety.
//
// The degree-n consequence space of a set of multilinear identities is built
// degree by degree. From a basis of the degree-k space (in variables
// 0..k-1), every way of choosing the new variable x among 0..k and relabeling
// the others in order gives the lifts
//
//   x o f,  f o x,  f[v := v o x],  f[v := x o v]     (each operation o)
//
// which together with the S_{k+1}-orbits of the degree-(k+1) identities span
// the degree-(k+1) space. Since the degree-k space is S_k-stable, relabeling
// in order is enough to make the result S_{k+1}-stable. Associative words
// use the direct description instead: all u . f(w_1, ..., w_m) . v.

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "varietas/linalg.hpp"
#include "varietas/polynomial.hpp"
#include "varietas/text.hpp"

namespace varietas {

struct VarietyPresentation {
  std::string name;
  SignaturePtr signature;
  std::vector<Polynomial> identities;

  void validate() const {
    if (!signature) throw InputError("variety without signature");
    signature->validate();
    for (const auto& f : identities) {
      if (f.is_zero()) throw InputError("variety '" + name + "' has a zero identity");
      if (!f.signature().same_algebra(*signature))
        throw InputError("identity " + to_string(f) + " is over a different signature");
      if (f.degree() < 2) throw InputError("identity " + to_string(f) + " has degree below 2");
      f.check_multilinear();
      for (const auto& [m, c] : f.terms())
        for (Token t : m.tokens)
          if (t == tok::kAtomOpen || (tok::is_letter(t) && tok::order_of(t) != 0))
            throw InputError("defining identities must use plain letters");
    }
  }

  [[nodiscard]] int min_degree() const {
    int d = 1 << 20;
    for (const auto& f : identities) d = std::min(d, f.degree());
    return d;
  }
};

class MultilinearBasis {
 public:
  MultilinearBasis(SignaturePtr sig, int degree, std::vector<Monomial> monomials)
      : sig_(std::move(sig)), degree_(degree), monomials_(std::move(monomials)) {
    index_.reserve(monomials_.size() * 2);
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], std::uint32_t(i));
  }

  [[nodiscard]] const Signature& signature() const { return *sig_; }
  [[nodiscard]] const SignaturePtr& signature_ptr() const { return sig_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] std::size_t size() const { return monomials_.size(); }
  [[nodiscard]] const std::vector<Monomial>& monomials() const { return monomials_; }
  [[nodiscard]] const Monomial& operator[](std::size_t i) const { return monomials_[i]; }

  [[nodiscard]] std::optional<std::uint32_t> find(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::uint32_t at(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end())
      throw InputError("monomial " + to_string(m, *sig_, standard_names(degree_)) + " is not a basis monomial");
    return it->second;
  }

  /// Coordinates of a degree-n polynomial over this signature (variables
  /// are taken in their sorted order).
  [[nodiscard]] SparseRow row_of(const Polynomial& p) const {
    if (!p.signature().same_algebra(*sig_)) throw InputError("polynomial over a different signature");
    if (p.is_zero()) return {};
    if (p.degree() != degree_)
      throw InputError("polynomial of degree " + std::to_string(p.degree()) + " against a degree-" +
                       std::to_string(degree_) + " basis");
    SparseRow row;
    row.reserve(p.size());
    for (const auto& [m, c] : p.terms()) row.push_back({at(m), c});
    return normalize_row(std::move(row));
  }

  [[nodiscard]] Polynomial polynomial_of(const SparseRow& row) const {
    Polynomial p(sig_, standard_names(degree_));
    for (const auto& e : row) p.add(monomials_.at(e.col), e.value);
    return p;
  }

 private:
  SignaturePtr sig_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

using BasisPtr = std::shared_ptr<const MultilinearBasis>;

namespace detail {

inline void tree_shapes(int leaves, int nops, std::vector<std::vector<Token>>& out) {
  if (leaves == 1) {
    out.push_back({tok::letter(0)});
    return;
  }
  for (int l = 1; l < leaves; ++l) {
    std::vector<std::vector<Token>> left, right;
    tree_shapes(l, nops, left);
    tree_shapes(leaves - l, nops, right);
    for (int o = 0; o < nops; ++o)
      for (const auto& a : left)
        for (const auto& b : right) {
          std::vector<Token> s{tok::op(o)};
          s.insert(s.end(), a.begin(), a.end());
          s.insert(s.end(), b.begin(), b.end());
          out.push_back(std::move(s));
        }
  }
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct RowHash {
  std::size_t operator()(const SparseRow& r) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& e : r) h = (h ^ (std::size_t(e.col) * 0x100000001b3ull) ^ e.value.hash()) * 0xff51afd7ed558ccdull;
    return h;
  }
};

}  // namespace detail

/// All degree-n multilinear monomials in canonical order.
inline BasisPtr multilinear_basis(const SignaturePtr& sig, int n) {
  if (n < 1) throw DegreeError("degree must be at least 1");
  if (n > sig->degree_cap)
    throw DegreeError("degree " + std::to_string(n) + " is above the cap " + std::to_string(sig->degree_cap));
  const auto perms = detail::all_permutations(n);
  std::vector<Monomial> out;
  if (sig->ambient == Ambient::associative_word) {
    out.reserve(perms.size());
    for (const auto& p : perms) {
      Monomial m;
      for (int v : p) m.tokens.push_back(tok::letter(v));
      out.push_back(std::move(m));
    }
  } else {
    std::vector<std::vector<Token>> shapes;
    detail::tree_shapes(n, int(sig->ops.size()), shapes);
    std::sort(shapes.begin(), shapes.end(), [](const auto& a, const auto& b) {
      return canonical_less(Ambient::free_nonassociative, Monomial{a}, Monomial{b});
    });
    out.reserve(shapes.size() * perms.size());
    for (const auto& s : shapes)
      for (const auto& p : perms) {
        Monomial m{s};
        std::size_t k = 0;
        for (Token& t : m.tokens)
          if (!tok::is_op(t)) t = tok::letter(p[k++]);
        out.push_back(std::move(m));
      }
  }
  return std::make_shared<const MultilinearBasis>(sig, n, std::move(out));
}

/// A subspace of a multilinear component, kept in reduced row-echelon form.
class IdentitySpace {
 public:
  IdentitySpace(BasisPtr basis, RowSpace space) : basis_(std::move(basis)), space_(std::move(space)) {}

  [[nodiscard]] const MultilinearBasis& basis() const { return *basis_; }
  [[nodiscard]] const BasisPtr& basis_ptr() const { return basis_; }
  [[nodiscard]] const RowSpace& space() const { return space_; }
  [[nodiscard]] int degree() const { return basis_->degree(); }
  [[nodiscard]] std::size_t rank() const { return space_.rank(); }
  /// Dimension of the quotient (the free algebra's multilinear component).
  [[nodiscard]] std::size_t quotient_dim() const { return basis_->size() - space_.rank(); }
  [[nodiscard]] RrefResult rref() const { return space_.to_rref(); }

  [[nodiscard]] bool contains(const Polynomial& p) const { return space_.contains(basis_->row_of(p)); }

  /// RREF rows as polynomials in a, b, c, ...
  [[nodiscard]] std::vector<Polynomial> identities() const {
    std::vector<Polynomial> out;
    for (const auto& r : space_.rows()) out.push_back(basis_->polynomial_of(r));
    return out;
  }

  friend bool operator==(const IdentitySpace& a, const IdentitySpace& b) {
    return a.basis_->signature().same_algebra(b.basis_->signature()) && a.degree() == b.degree() &&
           a.space_ == b.space_;
  }

 private:
  BasisPtr basis_;
  RowSpace space_;
};

struct ConsequenceOptions {
  unsigned threads = 1;
  /// Associative words: use the iterative lifting instead of the direct
  /// u . f(w...) . v enumeration (the two must agree).
  bool word_iterative = false;
};

namespace detail {

/// Rows of the S_n-orbit of identities of exactly degree n.
inline std::vector<SparseRow> identity_orbit_rows(const VarietyPresentation& v, const MultilinearBasis& basis) {
  std::vector<SparseRow> out;
  const int n = basis.degree();
  std::vector<std::vector<int>> perms;
  for (const auto& f : v.identities) {
    if (f.degree() != n) continue;
    if (perms.empty()) perms = all_permutations(n);
    for (const auto& p : perms) {
      SparseRow row;
      for (const auto& [m, c] : f.terms()) row.push_back({basis.at(relabel(m, p)), c});
      out.push_back(normalize_row(std::move(row)));
    }
  }
  return out;
}

/// Lifting tables from degree k to k+1: for each new-variable position j and
/// lift kind, the image of every degree-k basis monomial.
struct LiftTable {
  int kinds = 0;
  int positions = 0;
  std::vector<std::uint32_t> image;  // [(j * kinds + kind) * |B_k| + b]
  std::size_t src_size = 0;

  [[nodiscard]] std::uint32_t at(int j, int kind, std::uint32_t b) const {
    return image[(std::size_t(j) * kinds + kind) * src_size + b];
  }
};

inline LiftTable make_lift_table(const MultilinearBasis& from, const MultilinearBasis& to) {
  const Signature& sig = from.signature();
  const int k = from.degree();
  const int nops = int(sig.ops.size());
  LiftTable t;
  t.kinds = nops * (2 + 2 * k);
  t.positions = k + 1;
  t.src_size = from.size();
  t.image.resize(std::size_t(t.positions) * t.kinds * t.src_size);
  std::vector<int> map(k);
  for (int j = 0; j <= k; ++j) {
    for (int i = 0; i < k; ++i) map[i] = i < j ? i : i + 1;
    const Monomial x = leaf(j);
    for (std::uint32_t b = 0; b < from.size(); ++b) {
      const Monomial m = relabel(from[b], map);
      int kind = 0;
      for (int o = 0; o < nops; ++o) {
        auto put = [&](const Monomial& img) { t.image[(std::size_t(j) * t.kinds + kind++) * t.src_size + b] = to.at(img); };
        put(multiply(sig.ambient, o, x, m));
        put(multiply(sig.ambient, o, m, x));
        for (int i = 0; i < k; ++i) {
          const int v = map[i];
          put(substitute(m, v, multiply(sig.ambient, o, leaf(v), x)));
          put(substitute(m, v, multiply(sig.ambient, o, x, leaf(v))));
        }
      }
    }
  }
  return t;
}

inline std::vector<SparseRow> lifted_rows(const std::vector<SparseRow>& rows, const LiftTable& table, unsigned threads) {
  const int jobs = table.positions;
  std::vector<std::vector<SparseRow>> parts(jobs);
  auto work = [&](int j) {
    auto& part = parts[j];
    for (const auto& r : rows)
      for (int kind = 0; kind < table.kinds; ++kind) {
        SparseRow out;
        out.reserve(r.size());
        for (const auto& e : r) out.push_back({table.at(j, kind, e.col), e.value});
        part.push_back(normalize_row(std::move(out)));
      }
  };
  if (threads <= 1) {
    for (int j = 0; j < jobs; ++j) work(j);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int j = int(t); j < jobs; j += int(threads)) work(j);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<SparseRow> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

/// All u . f(w_1..w_m) . v for identities f of degree m <= n (associative words).
inline std::vector<SparseRow> word_placement_rows(const VarietyPresentation& v, const MultilinearBasis& basis) {
  std::vector<SparseRow> out;
  const int n = basis.degree();
  const auto perms = all_permutations(n);
  for (const auto& f : v.identities) {
    const int m = f.degree();
    if (m > n) continue;
    // block lengths: u >= 0, w_1..w_m >= 1, v >= 0
    std::vector<std::vector<int>> comps;
    std::vector<int> cur(m + 2, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == m + 1) {
        cur[slot] = left;
        comps.push_back(cur);
        return;
      }
      const int later = m - std::max(slot, 1) + (slot == 0 ? 1 : 0);  // w-slots after this one
      for (int len = slot == 0 ? 0 : 1; len <= left - later; ++len) {
        cur[slot] = len;
        rec(slot + 1, left - len);
      }
    };
    rec(0, n);
    for (const auto& p : perms)
      for (const auto& c : comps) {
        std::vector<std::vector<Token>> blocks(m + 2);
        int pos = 0;
        for (int s = 0; s < m + 2; ++s)
          for (int i = 0; i < c[s]; ++i) blocks[s].push_back(tok::letter(p[pos++]));
        SparseRow row;
        for (const auto& [mono, coef] : f.terms()) {
          Monomial w{blocks[0]};
          for (Token t : mono.tokens) {
            const auto& b = blocks[1 + tok::var_of(t)];
            w.tokens.insert(w.tokens.end(), b.begin(), b.end());
          }
          w.tokens.insert(w.tokens.end(), blocks[m + 1].begin(), blocks[m + 1].end());
          row.push_back({basis.at(w), coef});
        }
        out.push_back(normalize_row(std::move(row)));
      }
  }
  return out;
}

/// Inserts rows sparsest-first after dropping duplicates (up to scaling).
inline void insert_rows(RowSpace& space, std::vector<SparseRow> rows) {
  std::unordered_set<SparseRow, RowHash> seen;
  std::vector<SparseRow> uniq;
  uniq.reserve(rows.size());
  for (auto& r : rows) {
    if (r.empty()) continue;
    SparseRow m = monic(r);
    if (seen.insert(m).second) uniq.push_back(std::move(m));
  }
  std::stable_sort(uniq.begin(), uniq.end(), [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  for (const auto& r : uniq) {
    if (space.rank() == space.cols()) break;
    space.insert(r);
  }
}

}  // namespace detail

/// Degree-n component of the T-ideal generated by the variety's identities.
inline IdentitySpace consequence_space(const VarietyPresentation& v, int n, const ConsequenceOptions& opt = {}) {
  v.validate();
  const SignaturePtr& sig = v.signature;
  BasisPtr basis = multilinear_basis(sig, n);
  const int dmin = v.min_degree();
  if (n < dmin) return IdentitySpace(basis, RowSpace(basis->size()));

  if (sig->ambient == Ambient::associative_word && !opt.word_iterative) {
    RowSpace space(basis->size());
    detail::insert_rows(space, detail::word_placement_rows(v, *basis));
    return IdentitySpace(basis, std::move(space));
  }

  BasisPtr cur_basis = multilinear_basis(sig, dmin);
  RowSpace cur(cur_basis->size());
  detail::insert_rows(cur, detail::identity_orbit_rows(v, *cur_basis));
  for (int k = dmin; k < n; ++k) {
    BasisPtr next_basis = k + 1 == n ? basis : multilinear_basis(sig, k + 1);
    const auto table = detail::make_lift_table(*cur_basis, *next_basis);
    auto rows = detail::lifted_rows(cur.rows(), table, opt.threads);
    auto extra = detail::identity_orbit_rows(v, *next_basis);
    rows.insert(rows.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    RowSpace next(next_basis->size());
    detail::insert_rows(next, std::move(rows));
    cur = std::move(next);
    cur_basis = next_basis;
  }
  return IdentitySpace(cur_basis, std::move(cur));
}

inline std::size_t dim_multilinear(const VarietyPresentation& v, int n, const ConsequenceOptions& opt = {}) {
  return consequence_space(v, n, opt).quotient_dim();
}

/// Left-normed tree for a plain word: ((x1 x2) x3) ...
inline Monomial left_normed(const Monomial& word, int op = 0) {
  if (word.tokens.empty()) throw InputError("empty word");
  Monomial t = leaf(tok::var_of(word.tokens[0]), tok::order_of(word.tokens[0]));
  for (std::size_t i = 1; i < word.tokens.size(); ++i) {
    if (!tok::is_letter(word.tokens[i])) throw InputError("only plain words have a tree form");
    t = multiply(Ambient::free_nonassociative, op, t, leaf(tok::var_of(word.tokens[i]), tok::order_of(word.tokens[i])));
  }
  return t;
}

/// The same variety over the free nonassociative ambient: identities are
/// written left-normed and associativity is added. Tree presentations are
/// returned unchanged.
inline VarietyPresentation to_tree_presentation(const VarietyPresentation& v) {
  if (v.signature->ambient == Ambient::free_nonassociative) return v;
  auto tree = make_signature(Ambient::free_nonassociative, {v.signature->ops.at(0).glyph});
  VarietyPresentation out{v.name, tree, {}};
  Polynomial assoc(tree, standard_names(3));
  assoc.add(multiply(Ambient::free_nonassociative, 0, multiply(Ambient::free_nonassociative, 0, leaf(0), leaf(1)), leaf(2)),
            Rational(1));
  assoc.add(multiply(Ambient::free_nonassociative, 0, leaf(0), multiply(Ambient::free_nonassociative, 0, leaf(1), leaf(2))),
            Rational(-1));
  out.identities.push_back(assoc);
  for (const auto& f : v.identities) {
    Polynomial g(tree, f.vars());
    for (const auto& [m, c] : f.terms()) g.add(left_normed(m), c);
    out.identities.push_back(g);
  }
  return out;
}

/// A consequence used in a membership certificate.
struct CertificateTerm {
  Rational coefficient;
  std::string origin;
  Polynomial generator;
};

struct Membership {
  bool holds = false;
  std::optional<std::vector<CertificateTerm>> certificate;
};

namespace detail {

/// Generators of the degree-n consequence space with a short provenance.
inline std::vector<std::pair<std::string, SparseRow>> labelled_generators(const VarietyPresentation& v,
                                                                          const BasisPtr& basis,
                                                                          const ConsequenceOptions& opt) {
  std::vector<std::pair<std::string, SparseRow>> out;
  const int n = basis->degree();
  const Signature& sig = *v.signature;
  if (sig.ambient == Ambient::associative_word && !opt.word_iterative) {
    auto rows = word_placement_rows(v, *basis);
    for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({"placement #" + std::to_string(i), std::move(rows[i])});
    return out;
  }
  auto orbit = identity_orbit_rows(v, *basis);
  for (std::size_t i = 0; i < orbit.size(); ++i) out.push_back({"identity relabeling #" + std::to_string(i), orbit[i]});
  if (n > v.min_degree()) {
    const IdentitySpace prev = consequence_space(v, n - 1, opt);
    const auto table = make_lift_table(prev.basis(), *basis);
    const auto prev_rows = prev.space().rows();
    for (int j = 0; j < table.positions; ++j)
      for (std::size_t r = 0; r < prev_rows.size(); ++r)
        for (int kind = 0; kind < table.kinds; ++kind) {
          SparseRow row;
          for (const auto& e : prev_rows[r]) row.push_back({table.at(j, kind, e.col), e.value});
          out.push_back({"lift of degree-" + std::to_string(n - 1) + " consequence #" + std::to_string(r) +
                             " (new variable " + standard_names(n)[j] + ", kind " + std::to_string(kind) + ")",
                         normalize_row(std::move(row))});
        }
  }
  return out;
}

}  // namespace detail

/// Whether `candidate` is a consequence of the variety's identities; with
/// `want_certificate`, also an explicit combination of generated consequences.
inline Membership identity_holds(const VarietyPresentation& v, const Polynomial& candidate, bool want_certificate = false,
                                 const ConsequenceOptions& opt = {}) {
  if (!candidate.signature().same_algebra(*v.signature))
    throw InputError("candidate is over a different signature than variety '" + v.name + "'");
  candidate.check_multilinear();
  Membership out;
  if (candidate.is_zero()) {
    out.holds = true;
    if (want_certificate) out.certificate.emplace();
    return out;
  }
  const int n = candidate.degree();
  const IdentitySpace space = consequence_space(v, n, opt);
  const SparseRow target = space.basis().row_of(candidate);
  out.holds = space.space().contains(target);
  if (!out.holds || !want_certificate) return out;

  // Gaussian elimination over the generators while tracking combinations.
  const auto gens = detail::labelled_generators(v, space.basis_ptr(), opt);
  const std::size_t width = space.basis().size();
  const std::size_t total = width + gens.size();
  RowSpace tracked(total);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    SparseRow row = gens[g].second;
    row.push_back({std::uint32_t(width + g), Rational(-1)});
    tracked.insert(row);
  }
  // target + sum(lambda_g * (-e_g)) reduces to zero in the first `width`
  // columns; the tracked residue gives target = sum lambda_g * gen_g.
  SparseRow residue = tracked.reduce(target);
  std::vector<CertificateTerm> cert;
  for (const auto& e : residue) {
    if (e.col < width) throw std::logic_error("certificate elimination left a residue");
    const auto g = e.col - width;
    cert.push_back({e.value, gens[g].first, space.basis().polynomial_of(gens[g].second)});
  }
  out.certificate = std::move(cert);
  return out;
}

/// Expansion of a single source basis monomial (in variables 0..n-1) into
/// the target signature.
using MonomialExpansion = std::function<Polynomial(const Monomial&, int degree)>;

/// All degree-n source polynomials whose expansion is an identity of
/// `target`, i.e. the degree-n identities of the derived structure.
inline IdentitySpace kernel_of_expansion(const SignaturePtr& src_sig, int n, const MonomialExpansion& expand,
                                         const VarietyPresentation& target, const ConsequenceOptions& opt = {}) {
  BasisPtr src = multilinear_basis(src_sig, n);
  const IdentitySpace tspace = consequence_space(target, n, opt);
  const std::size_t width = tspace.basis().size();
  // Rows [residue(expand(m)) | e_m]; after elimination, the rows whose pivot
  // falls in the second block are exactly the kernel vectors.
  RowSpace aug(width + src->size());
  for (std::uint32_t b = 0; b < src->size(); ++b) {
    const Polynomial img = expand((*src)[b], n);
    if (!img.is_zero() && img.degree() != n) throw InputError("expansion changed the degree");
    SparseRow row = tspace.space().reduce(tspace.basis().row_of(img));
    row.push_back({std::uint32_t(width + b), Rational(1)});
    aug.insert(row);
  }
  RowSpace kernel(src->size());
  for (const auto& r : aug.rows()) {
    if (r.front().col < width) continue;
    SparseRow k;
    for (const auto& e : r) k.push_back({std::uint32_t(e.col - width), e.value});
    kernel.insert(k);
  }
  return IdentitySpace(src, std::move(kernel));
}

enum class Verdict { equal, strictly_contained, strictly_contains, incomparable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::strictly_contained: return "strictly-contained";
    case Verdict::strictly_contains: return "strictly-contains";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

/// Compares two subspaces of the same component: `a` against `b`.
inline Verdict compare_spaces(const IdentitySpace& a, const IdentitySpace& b) {
  if (!(a.basis().signature().same_algebra(b.basis().signature())) || a.degree() != b.degree())
    throw InputError("comparing spaces of different components");
  const bool a_in_b = b.space().contains_space(a.space());
  const bool b_in_a = a.space().contains_space(b.space());
  if (a_in_b && b_in_a) return Verdict::equal;
  if (a_in_b) return Verdict::strictly_contained;
  if (b_in_a) return Verdict::strictly_contains;
  return Verdict::incomparable;
}

struct GeneratedBy {
  Verdict verdict;
  std::size_t closure_rank;
  std::size_t kernel_rank;
};

/// Consequence closure of `candidates` (over the kernel's signature, at the
/// kernel's degree) compared with `kernel`. "equal" means the candidates
/// generate every identity of that degree.
inline GeneratedBy generated_by(const std::vector<Polynomial>& candidates, const IdentitySpace& kernel,
                                const ConsequenceOptions& opt = {}) {
  VarietyPresentation closure_ctx{"generators", kernel.basis().signature_ptr(), {}};
  for (const auto& c : candidates) {
    // Generators above the kernel's degree have no consequences there.
    if (c.is_zero() || c.degree() > kernel.degree()) continue;
    closure_ctx.identities.push_back(c);
  }
  RowSpace empty(kernel.basis().size());
  const IdentitySpace closure = closure_ctx.identities.empty()
                                    ? IdentitySpace(kernel.basis_ptr(), std::move(empty))
                                    : consequence_space(closure_ctx, kernel.degree(), opt);
  return {compare_spaces(closure, kernel), closure.rank(), kernel.rank()};
}

/// Orbit spans of degree-n identities under relabeling, and whether they
/// form a direct sum decomposition of the whole component.
struct OrbitDecomposition {
  std::vector<std::size_t> orbit_dims;
  std::size_t sum_rank = 0;
  std::size_t ambient_dim = 0;
  [[nodiscard]] bool independent() const {
    return sum_rank == std::accumulate(orbit_dims.begin(), orbit_dims.end(), std::size_t{0});
  }
  [[nodiscard]] bool spans() const { return sum_rank == ambient_dim; }
  [[nodiscard]] bool direct_sum() const { return independent() && spans(); }
};

inline OrbitDecomposition s3_decomposition(const std::vector<Polynomial>& ids) {
  if (ids.empty()) throw InputError("no identities to decompose");
  const int n = ids.front().degree();
  const SignaturePtr sig = ids.front().signature_ptr();
  BasisPtr basis = multilinear_basis(sig, n);
  OrbitDecomposition out;
  out.ambient_dim = basis->size();
  RowSpace all(basis->size());
  for (const auto& f : ids) {
    if (f.degree() != n || !f.signature().same_algebra(*sig)) throw InputError("identities must share degree and signature");
    VarietyPresentation single{"orbit", sig, {f}};
    RowSpace orbit(basis->size());
    detail::insert_rows(orbit, detail::identity_orbit_rows(single, *basis));
    out.orbit_dims.push_back(orbit.rank());
    for (const auto& r : orbit.rows()) all.insert(r);
  }
  out.sum_rank = all.rank();
  return out;
}

}  // namespace varietas
