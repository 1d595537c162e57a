#include <gtest/gtest.h>

#include <random>

#include "varietas/io.hpp"

using namespace varietas;

namespace {

std::vector<std::size_t> dims(const VarietyPresentation& v, int upto, ConsequenceOptions opt = {}) {
  std::vector<std::size_t> out;
  for (int n = 1; n <= upto; ++n) out.push_back(dim_multilinear(v, n, opt));
  return out;
}

using D = std::vector<std::size_t>;

}  // namespace

TEST(Basis, Sizes) {
  auto tree = make_signature(Ambient::free_nonassociative, {"*"});
  auto word = make_signature(Ambient::associative_word, {"*"});
  auto two = make_signature(Ambient::free_nonassociative, {">", "<"});
  EXPECT_EQ(multilinear_basis(tree, 3)->size(), 12u);
  EXPECT_EQ(multilinear_basis(word, 5)->size(), 120u);
  EXPECT_EQ(multilinear_basis(tree, 5)->size(), 1680u);
  EXPECT_EQ(multilinear_basis(two, 3)->size(), 48u);
  EXPECT_THROW(multilinear_basis(tree, 7), DegreeError);
  EXPECT_THROW(multilinear_basis(tree, 0), DegreeError);
}

TEST(Basis, CanonicalOrderAndIndex) {
  auto tree = make_signature(Ambient::free_nonassociative, {"*", "@"});
  auto b = multilinear_basis(tree, 4);
  MonomialOrder less{Ambient::free_nonassociative};
  for (std::size_t i = 0; i + 1 < b->size(); ++i) EXPECT_TRUE(less((*b)[i], (*b)[i + 1]));
  for (std::size_t i = 0; i < b->size(); ++i) EXPECT_EQ(b->at((*b)[i]), i);
}

TEST(Consequence, AssociativityDegree4) {
  auto v = fixture_variety("assoc-tree.var");
  auto s = consequence_space(v, 4);
  EXPECT_EQ(s.rank(), 96u);
  EXPECT_EQ(s.quotient_dim(), 24u);
}

TEST(Consequence, As3Tables) {
  auto as3 = fixture_variety("as3.var");
  EXPECT_EQ(consequence_space(as3, 3).rank(), 2u);
  EXPECT_EQ(consequence_space(as3, 5).rank(), 119u);
  EXPECT_EQ(dims(as3, 5), (D{1, 2, 4, 1, 1}));
}

TEST(Consequence, DualAs3Table) {
  EXPECT_EQ(dims(fixture_variety("dual-as3.var"), 5), (D{1, 2, 8, 41, 213}));
}

TEST(Consequence, PureAssociative) {
  EXPECT_EQ(dims(fixture_variety("assoc.var"), 5), (D{1, 2, 6, 24, 120}));
  EXPECT_EQ(dims(fixture_variety("assoc-tree.var"), 5), (D{1, 2, 6, 24, 120}));
}

TEST(Consequence, WordDirectMatchesIterative) {
  for (const char* f : {"as1.var", "as2.var", "as3.var", "as4.var"}) {
    auto v = fixture_variety(f);
    for (int n = 3; n <= 4; ++n) {
      ConsequenceOptions it;
      it.word_iterative = true;
      EXPECT_EQ(consequence_space(v, n), consequence_space(v, n, it)) << f << " n=" << n;
    }
  }
}

namespace {

VarietyPresentation as_tree(const VarietyPresentation& v) {
  auto tree = make_signature(Ambient::free_nonassociative, {"*"});
  VarietyPresentation out{v.name + "-tree", tree, {parse("(a*b)*c - a*(b*c)", tree)}};
  for (const auto& f : v.identities) {
    Polynomial g(tree, f.vars());
    for (const auto& [m, c] : f.terms()) {
      Monomial t = leaf(tok::var_of(m.tokens[0]));
      for (std::size_t i = 1; i < m.tokens.size(); ++i)
        t = multiply(Ambient::free_nonassociative, 0, t, leaf(tok::var_of(m.tokens[i])));
      g.add(t, c);
    }
    out.identities.push_back(g);
  }
  return out;
}

}  // namespace

TEST(Consequence, AmbientAgreement) {
  for (const char* f : {"as1.var", "as2.var", "as3.var", "as4.var"}) {
    auto v = fixture_variety(f);
    EXPECT_EQ(dims(v, 4), dims(as_tree(v), 4)) << f;
  }
}

TEST(Consequence, SymmetricGroupStable) {
  for (const char* f : {"as2.var", "dual-as3.var", "novikov-nc.var"}) {
    auto v = fixture_variety(f);
    auto s = consequence_space(v, 4);
    for (const auto& row : s.identities()) {
      std::vector<int> p{0, 1, 2, 3};
      do EXPECT_TRUE(s.contains(permute(row, p)));
      while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST(Consequence, Monotone) {
  auto alt = fixture_variety("alt.var");
  auto left = alt;
  left.identities.pop_back();
  for (int n = 3; n <= 4; ++n) EXPECT_LE(dim_multilinear(alt, n), dim_multilinear(left, n));
}

TEST(Consequence, ThreadsDoNotChangeResult) {
  auto v = fixture_variety("dual-as3.var");
  ConsequenceOptions par;
  par.threads = 3;
  EXPECT_EQ(consequence_space(v, 4), consequence_space(v, 4, par));
}

TEST(Consequence, BelowMinimumDegreeIsEmpty) {
  EXPECT_EQ(consequence_space(fixture_variety("as3.var"), 2).rank(), 0u);
}

TEST(Membership, RewriteOfCab) {
  auto as3 = fixture_variety("as3.var");
  EXPECT_TRUE(identity_holds(as3, parse("cab - (bac + abc - acb)", as3.signature)).holds);
  EXPECT_TRUE(identity_holds(as3, parse("cba - (abc + bac - bca)", as3.signature)).holds);
  EXPECT_FALSE(identity_holds(as3, parse("ab - ba", as3.signature)).holds);
}

TEST(Membership, DefiningIdentitiesAndRelabelings) {
  for (const char* f : {"as1.var", "as2.var", "as3.var", "as4.var", "alt.var", "dendriform.var", "novikov-nc.var"}) {
    auto v = fixture_variety(f);
    for (const auto& id : v.identities) {
      std::vector<int> p(id.degree());
      std::iota(p.begin(), p.end(), 0);
      do EXPECT_TRUE(identity_holds(v, permute(id, p)).holds) << f;
      while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST(Membership, CertificateReconstructsCandidate) {
  auto v = fixture_variety("dual-as3.var");
  const Polynomial cand = parse("((a*b)*c)*d - (a*(b*c))*d + ((b*a)*c)*d - (b*(a*c))*d", v.signature);
  auto m = identity_holds(v, cand, true);
  ASSERT_TRUE(m.holds);
  ASSERT_TRUE(m.certificate.has_value());
  Polynomial sum(v.signature, standard_names(4));
  for (const auto& t : *m.certificate) {
    EXPECT_TRUE(consequence_space(v, 4).contains(t.generator));
    sum += t.coefficient * t.generator;
  }
  EXPECT_EQ(sum, cand);
}

TEST(Membership, SignatureMismatch) {
  auto v = fixture_variety("as3.var");
  EXPECT_THROW(identity_holds(v, parse("(a*b)*c", make_signature(Ambient::free_nonassociative, {"*"}))), InputError);
}

namespace {

// Structure constants of the degree <= 4 truncation of the free As1
// algebra on four generators, evaluated on words directly: a degree-4
// word polynomial vanishes iff it lies in the span of all placements of
// the identity, which is what we compute here by plain dense elimination.
bool brute_force_holds(const VarietyPresentation& v, const Polynomial& cand) {
  const int n = cand.degree();
  auto basis = multilinear_basis(v.signature, n);
  std::vector<std::vector<Rational>> rows;
  const auto& f = v.identities.front();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int u = 0; u + 3 <= n; ++u)
      for (int l1 = 1; u + l1 + 2 <= n; ++l1)
        for (int l2 = 1; u + l1 + l2 + 1 <= n; ++l2)
          for (int l3 = 1; u + l1 + l2 + l3 <= n; ++l3) {
            std::vector<std::vector<Token>> blk(5);
            int pos = 0;
            const int lens[5] = {u, l1, l2, l3, n - u - l1 - l2 - l3};
            for (int s = 0; s < 5; ++s)
              for (int i = 0; i < lens[s]; ++i) blk[s].push_back(tok::letter(perm[pos++]));
            std::vector<Rational> row(basis->size());
            for (const auto& [m, c] : f.terms()) {
              Monomial w{blk[0]};
              for (Token t : m.tokens) w.tokens.insert(w.tokens.end(), blk[1 + tok::var_of(t)].begin(), blk[1 + tok::var_of(t)].end());
              w.tokens.insert(w.tokens.end(), blk[4].begin(), blk[4].end());
              row[basis->at(w)] = row[basis->at(w)] + c;
            }
            rows.push_back(row);
          }
  } while (std::next_permutation(perm.begin(), perm.end()));
  RationalMatrix m(rows.size() + 1, basis->size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < basis->size(); ++j) m(i, j) = rows[i][j];
  const std::size_t r0 = rank(m);
  for (const auto& [mono, c] : cand.terms()) m(rows.size(), basis->at(mono)) = c;
  return rank(m) == r0;
}

}  // namespace

TEST(Membership, SymmetrizedDegree4AgainstOracle) {
  auto as1 = fixture_variety("as1.var");
  Polynomial sym(as1.signature, standard_names(4));
  const auto basis = multilinear_basis(as1.signature, 4);
  for (const auto& m : basis->monomials()) sym.add(m, Rational(1));
  const bool expected = brute_force_holds(as1, sym);
  EXPECT_EQ(identity_holds(as1, sym).holds, expected);
  EXPECT_TRUE(expected);
}

TEST(Kernel, CommutatorAntisymmetry) {
  auto as3 = fixture_variety("as3.var");
  auto src = make_signature(Ambient::free_nonassociative, {"[,]"});
  MonomialExpansion comm = [&](const Monomial& m, int n) {
    // [a,b] -> ab - ba on a single bracket
    Polynomial p(as3.signature, standard_names(n));
    const int x = tok::var_of(m.tokens[1]), y = tok::var_of(m.tokens[2]);
    p.add(Monomial{{tok::letter(x), tok::letter(y)}}, Rational(1));
    p.add(Monomial{{tok::letter(y), tok::letter(x)}}, Rational(-1));
    return p;
  };
  auto k = kernel_of_expansion(src, 2, comm, as3);
  EXPECT_EQ(k.rank(), 1u);
  EXPECT_TRUE(k.contains(parse("[a,b] + [b,a]", src)));
}

TEST(S3Decomposition, MalcevIdentities) {
  auto word = make_signature(Ambient::associative_word, {"*"});
  auto ids = fixture_identities("malcev.ids", word);
  auto d = s3_decomposition(ids);
  EXPECT_EQ(d.orbit_dims, (D{1, 1, 2, 2}));
  EXPECT_TRUE(d.independent());
  EXPECT_TRUE(d.spans());
  EXPECT_EQ(d.ambient_dim, 6u);
}

TEST(VarietyFile, Errors) {
  EXPECT_THROW(parse_variety("variety X\nop *\n"), InputError);
  EXPECT_THROW(parse_variety("ambient associative\n"), InputError);
  EXPECT_THROW(parse_variety("ambient sideways\nop *\n"), InputError);
  EXPECT_THROW(parse_variety("ambient associative\nop *\nidentity aab\n"), InputError);
  EXPECT_THROW(parse_variety("ambient associative\nop *\nbogus\n"), InputError);
  EXPECT_THROW(parse_variety("ambient associative\nop *\nidentity ab - ab\n"), InputError);
  EXPECT_THROW(load_variety("/nonexistent/zzz.var"), InputError);
}

TEST(VarietyFile, RoundTrip) {
  for (const char* f : {"as3.var", "dendriform.var", "dual-as3.var"}) {
    auto v = fixture_variety(f);
    auto w = parse_variety(variety_text(v));
    ASSERT_EQ(v.identities.size(), w.identities.size());
    for (std::size_t i = 0; i < v.identities.size(); ++i) EXPECT_EQ(normalized(v.identities[i]), w.identities[i]);
  }
}
