#include "skewspec/numeric.hpp"

#include <cctype>

namespace skewspec {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  const auto slash = text.find('/');
  const std::string_view p = text.substr(0, slash);
  const std::string_view q = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(p) || !is_integer_literal(q) || q.front() == '-') {
    throw Error(ErrorKind::ParseError, "not a rational literal: '" + std::string(text) + "'");
  }
  return Rational(parse_integer(p), parse_integer(q));
}

bool Rational::is_canonical() const {
  const mpz_class& n = value_.get_num();
  const mpz_class& d = value_.get_den();
  if (d <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return g == 1;
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw Error(ErrorKind::ZeroDenominator, "division by zero");
  value_ /= o.value_;
  return *this;
}

Rational make_rational(long p, long q) { return Rational(mpz_class(p), mpz_class(q)); }

Rational make_rational(const mpz_class& p, const mpz_class& q) { return Rational(p, q); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow2_neg(long e) {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return Rational(mpz_class(1), den);
}

Rational pow(const Rational& base, long e) {
  Rational result(1);
  for (long i = 0; i < e; ++i) result *= base;
  return result;
}

mpz_class floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

UnitInterval::UnitInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ < 0 || hi_ > 1 || hi_ < lo_) {
    throw Error(ErrorKind::OutOfDomain, "not a subinterval of [0,1]: [" + lo_.str() + ", " + hi_.str() + "]");
  }
}

UnitInterval UnitInterval::clipped(const Rational& lo, const Rational& hi) {
  return UnitInterval(max(lo, Rational(0)), min(hi, Rational(1)));
}

Rational interval_length(const UnitInterval& j) { return j.length(); }

std::optional<UnitInterval> interval_intersect(const UnitInterval& a, const UnitInterval& b) {
  const Rational& lo = max(a.lo(), b.lo());
  const Rational& hi = min(a.hi(), b.hi());
  if (hi < lo) return std::nullopt;
  return UnitInterval(lo, hi);
}

UnitInterval interval_hull(const UnitInterval& a, const UnitInterval& b) {
  return UnitInterval(min(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

}  // namespace skewspec
