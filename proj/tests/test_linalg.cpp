#include <gtest/gtest.h>

#include <random>

#include "varietas/linalg.hpp"

using namespace varietas;

TEST(Rational, LowestTerms) {
  Rational r(6, -4);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 5).to_string(), "0");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, OverflowPromotesToBig) {
  Rational big(std::numeric_limits<std::int64_t>::max());
  Rational sq = big * big;
  EXPECT_GT(sq.bit_length(), 120);
  EXPECT_EQ(sq / big, big);
  Rational x = Rational(1, 3) + Rational(2, 3);
  EXPECT_TRUE(x.is_one());
}

TEST(Rref, ProportionalRows) {
  auto r = rref(RationalMatrix{{1, 2}, {2, 4}});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.matrix, (RationalMatrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivot_columns, (std::vector<std::size_t>{0}));
}

TEST(Rref, IdentityUnchanged) {
  RationalMatrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto r = rref(id);
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.matrix, id);
}

TEST(Rref, EmptyMatrix) {
  auto r = rref(RationalMatrix(0, 0));
  EXPECT_EQ(r.rank, 0u);
}

TEST(RowSpace, Containment) {
  auto s = rref(RationalMatrix{{1, 0}});
  std::vector<Rational> a{Rational(2), Rational(0)}, b{Rational(0), Rational(1)};
  EXPECT_TRUE(rowspace_contains(s, a));
  EXPECT_FALSE(rowspace_contains(s, b));
  std::vector<Rational> bad{Rational(1)};
  EXPECT_THROW((void)rowspace_contains(s, bad), std::invalid_argument);
}

TEST(RowSpace, Equality) {
  EXPECT_TRUE(rowspace_equal(rref(RationalMatrix{{1, 1}}), rref(RationalMatrix{{2, 2}})));
  EXPECT_FALSE(rowspace_equal(rref(RationalMatrix{{1, 0}}), rref(RationalMatrix{{0, 1}})));
  EXPECT_THROW((void)rowspace_equal(rref(RationalMatrix{{1, 0}}), rref(RationalMatrix{{1, 0, 0}})), std::invalid_argument);
}

namespace {

RationalMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(-3, 3);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(d(rng), 1 + (d(rng) + 3) % 3);
  // force some dependence
  if (r > 2)
    for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Rational(2) - m(1, j);
  return m;
}

// Textbook Gauss-Jordan on the dense matrix, used as an oracle.
RationalMatrix dense_rref(RationalMatrix m) {
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
    const Rational inv = m(lead, c).inverse();
    for (std::size_t j = 0; j < m.cols(); ++j) m(lead, j) = m(lead, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(lead, j);
    }
    ++lead;
  }
  return m;
}

}  // namespace

TEST(RrefProperty, MatchesOracleAndIsIdempotent) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    const RationalMatrix m = random_matrix(rng, r, c);
    const auto res = rref(m);
    EXPECT_EQ(res.matrix, dense_rref(m));
    EXPECT_EQ(rref(res.matrix).matrix, res.matrix);
    EXPECT_EQ(res.rank, rank(m.transpose()));
    for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_TRUE(rowspace_contains(res, m.row(i)));
  }
}

TEST(RrefProperty, AppendingMemberKeepsRref) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const RationalMatrix m = random_matrix(rng, 4, 5);
    const auto res = rref(m);
    RationalMatrix ext(5, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) ext(i, j) = m(i, j);
    for (std::size_t j = 0; j < 5; ++j) ext(4, j) = m(0, j) * Rational(3, 2) + m(2, j);
    EXPECT_TRUE(rowspace_equal(rref(ext), res));
  }
}
