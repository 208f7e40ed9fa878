#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "skewspec/error.hpp"

namespace skewspec {

/// Exact rational number, always kept in canonical form
/// (positive denominator, numerator and denominator coprime).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p/q" or "p" (optional leading '-'). Throws ParseError / ZeroDenominator.
  static Rational parse(std::string_view text);

  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }
  bool is_canonical() const;

  /// Always "p/q", including "0/1" and "2/1".
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

Rational make_rational(long p, long q);
Rational make_rational(const mpz_class& p, const mpz_class& q);

Rational abs(const Rational& r);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);
/// 2^(-e) for e >= 0.
Rational pow2_neg(long e);
Rational pow(const Rational& base, long e);
/// Largest integer <= r.
mpz_class floor(const Rational& r);

/// Closed subinterval [lo, hi] of [0, 1]. Degenerate intervals (lo == hi) are
/// representable; callers that need a nondegenerate interval check degenerate().
class UnitInterval {
 public:
  UnitInterval() : lo_(0), hi_(1) {}
  UnitInterval(Rational lo, Rational hi);

  static UnitInterval unit() { return {}; }
  static UnitInterval point(const Rational& x) { return {x, x}; }
  /// [lo, hi] clipped to [0, 1]; the clipped range must be nonempty.
  static UnitInterval clipped(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  bool degenerate() const { return lo_ == hi_; }
  bool is_unit() const { return lo_ == 0 && hi_ == 1; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const UnitInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool interior_contains(const Rational& x) const { return lo_ < x && x < hi_; }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

  friend bool operator==(const UnitInterval&, const UnitInterval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const UnitInterval& j) { return os << j.str(); }

 private:
  Rational lo_;
  Rational hi_;
};

Rational interval_length(const UnitInterval& j);
std::optional<UnitInterval> interval_intersect(const UnitInterval& a, const UnitInterval& b);
UnitInterval interval_hull(const UnitInterval& a, const UnitInterval& b);

}  // namespace skewspec
