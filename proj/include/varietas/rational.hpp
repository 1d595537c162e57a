#pragma once

// Exact rationals with an int64 fast path and a GMP fallback.
//
// Almost every coefficient that shows up while row-reducing consequence
// matrices is a small fraction, so values are kept as a reduced pair of
// int64 whenever they fit and only promoted to mpq_class on overflow.
// The representation is canonical: a value that fits the small form is
// never stored as a big number, so equality can compare fields directly.

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace varietas {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {  // NOLINT(google-explicit-constructor)
    if (n == std::numeric_limits<std::int64_t>::min()) set_big(mpq_class(mpz_from_i128(n)));
  }
  Rational(std::int64_t n, std::int64_t d) { assign_i128(n, d); }
  explicit Rational(const mpq_class& q) { set_big(q); }

  /// Parses "p", "-p" or "p/q" (decimal, arbitrary length).
  static Rational parse(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  [[nodiscard]] bool is_small() const { return !big_; }

  [[nodiscard]] mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_from_i128(num_); }
  [[nodiscard]] mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_from_i128(den_); }
  [[nodiscard]] mpq_class to_mpq() const { return big_ ? *big_ : mpq_class(numerator(), denominator()); }

  /// Combined numerator + denominator bit length; a pivot-quality measure.
  [[nodiscard]] std::size_t bit_length() const {
    if (big_) return mpz_sizeinbase(big_->get_num_mpz_t(), 2) + mpz_sizeinbase(big_->get_den_mpz_t(), 2);
    auto bits = [](std::uint64_t v) { return v == 0 ? std::size_t{1} : std::size_t(64 - __builtin_clzll(v)); };
    return bits(num_ < 0 ? std::uint64_t(-num_) : std::uint64_t(num_)) + bits(std::uint64_t(den_));
  }

  [[nodiscard]] std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (!big_) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(mpq_class(-*big_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return from_i128(__int128(a.num_) + b.num_, a.den_);
      return from_i128(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (!a.big_ && !b.big_) return from_i128(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return a * b.inverse();
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (!big_) {
      Rational r;
      r.num_ = num_ < 0 ? -den_ : den_;
      r.den_ = num_ < 0 ? -num_ : num_;
      return r;
    }
    return Rational(mpq_class(1 / *big_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical representation
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 l = __int128(a.num_) * b.den_;
      const __int128 r = __int128(b.num_) * a.den_;
      return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  [[nodiscard]] std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

 private:
  static constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

  static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(std::uint64_t(a), std::uint64_t(b));
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static mpz_class mpz_from_i128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi(static_cast<unsigned long>(std::uint64_t(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(std::uint64_t(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  static Rational from_i128(__int128 n, __int128 d) {
    Rational r;
    r.assign_i128(n, d);
    return r;
  }

  void assign_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const unsigned __int128 un = n < 0 ? (unsigned __int128)(-n) : (unsigned __int128)n;
    const unsigned __int128 g = gcd_u128(un, (unsigned __int128)d);
    if (g > 1) {
      n /= (__int128)g;
      d /= (__int128)g;
    }
    if (n == 0) d = 1;
    if (n <= kMax && n >= -kMax && d <= kMax) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      big_.reset();
      return;
    }
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    big_ = std::make_shared<const mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  void set_big(mpq_class q) {
    q.canonicalize();
    const auto& n = q.get_num();
    const auto& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t()) &&
        n != std::numeric_limits<long>::min()) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
      return;
    }
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace varietas

template <>
struct std::hash<varietas::Rational> {
  std::size_t operator()(const varietas::Rational& r) const noexcept { return r.hash(); }
};
