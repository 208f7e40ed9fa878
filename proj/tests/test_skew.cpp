#include "doctest.h"

#include "generators.hpp"
#include "oracles.hpp"
#include "skewspec/skew.hpp"

TEST_SUITE_BEGIN("skew");

using namespace skewspec;
using namespace skewspec::testing;

namespace {

Rational r(long p, long q) { return make_rational(p, q); }
BasePoint bp(const char* s) { return BasePoint::parse(s); }
SkewSystem full_tv() { return SkewSystem(Sft::full_shift(2), {tent(), valley()}); }

}  // namespace

TEST_CASE("system construction") {
  CHECK_THROWS_AS(SkewSystem(Sft::full_shift(2), {tent()}), Error);
  CHECK(full_tv().fibres_expanding());
  CHECK(full_tv().fibres_surjective());
  CHECK_FALSE(SkewSystem(Sft::full_shift(1), {PwlMap::identity()}).fibres_expanding());
}

TEST_CASE("step") {
  const SkewSystem sys = full_tv();
  CHECK(step(sys, {bp("|1"), r(1, 4)}) == SkewPoint{bp("|1"), r(1, 2)});
  CHECK(step(sys, {bp("|21"), 0}) == SkewPoint{bp("|12"), 1});
  CHECK(step(sys, {bp("|1"), 0}) == SkewPoint{bp("|1"), 0});
  CHECK(iterate(sys, {bp("|1"), r(1, 8)}, 2) == SkewPoint{bp("|1"), r(1, 2)});
}

TEST_CASE("nonaut_compose and nonaut_image") {
  const SkewSystem sys = full_tv();
  CHECK(nonaut_compose(sys, bp("|12"), 3, 0, r(2, 7)) == r(2, 7));
  CHECK(nonaut_compose(sys, bp("|1"), 0, 2, r(1, 8)) == r(1, 2));
  CHECK(nonaut_compose(sys, bp("|12"), 0, 2, 0) == Rational(1));
  const UnitInterval j(0, r(1, 4));
  CHECK(nonaut_image(sys, bp("|1"), 0, 0, j) == j);
  CHECK(nonaut_image(sys, bp("|1"), 0, 1, j) == UnitInterval(0, r(1, 2)));
  CHECK(nonaut_image(sys, bp("|1"), 0, 3, j) == UnitInterval::unit());
}

TEST_CASE("product_metric") {
  CHECK(product_metric({bp("|12"), r(1, 3)}, {bp("|12"), r(1, 3)}) == Rational(0));
  CHECK(product_metric({bp("|1"), 0}, {bp("|1"), r(1, 4)}) == r(1, 4));
  CHECK(product_metric({bp("|1"), r(1, 2)}, {bp("|2"), r(1, 2)}) == Rational(1));
}

TEST_CASE("verify_tracing") {
  const SkewSystem sys = full_tv();
  SUBCASE("a periodic segment traces itself") {
    // tent fixes 2/3.
    const OrbitSegmentSpec segs[] = {{{bp("|1"), r(2, 3)}, 2}};
    const auto audit = verify_tracing(sys, segs, 1, {bp("|1"), r(2, 3)});
    CHECK(audit.r == std::vector<long>{0, 3});
    CHECK(audit.worst_defect == Rational(0));
    CHECK(audit.passes(0));
  }
  SUBCASE("wrong period") {
    const OrbitSegmentSpec segs[] = {{{bp("|1"), r(2, 3)}, 2}};
    CHECK_THROWS_AS((void)verify_tracing(sys, segs, 1, {bp("|12"), r(2, 3)}), Error);
    CHECK_THROWS_AS((void)verify_tracing(sys, segs, 1, {bp("|1"), r(1, 3)}), Error);
    CHECK_THROWS_AS((void)verify_tracing(sys, segs, 1, {bp("2|1"), r(2, 3)}), Error);
  }
}

TEST_CASE("property: semigroup law and factor property") {
  Rng rng(41);
  const SkewSystem systems[] = {full_tv(), SkewSystem(golden_mean(), {zigzag(), tent()}),
                                SkewSystem(Sft::full_shift(3), {tent(), valley(), zigzag()})};
  for (int n = 0; n < 1500; ++n) {
    const SkewSystem& sys = systems[n % 3];
    const BasePoint eta = random_base_point(rng, sys.base());
    const Rational x = random_unit(rng, 243);
    const auto j = static_cast<std::size_t>(uniform(rng, 0, 5));
    const auto i = static_cast<std::size_t>(uniform(rng, 0, 4));
    const auto i2 = static_cast<std::size_t>(uniform(rng, 0, 4));
    CHECK(nonaut_compose(sys, eta, j, i + i2, x) ==
          nonaut_compose(sys, eta, j + i, i2, nonaut_compose(sys, eta, j, i, x)));
    // Naive fold with the oracle evaluator.
    Rational y = x;
    for (std::size_t t = 0; t < i; ++t) y = oracle::eval(sys.fibre(eta.at(j + t)), y);
    CHECK(nonaut_compose(sys, eta, j, i, x) == y);
    const SkewPoint p{eta, x};
    CHECK(step(sys, p).base == shift(eta));
    CHECK(iterate(sys, p, i).base == shift_by(eta, i));
    CHECK(iterate(sys, p, i).fibre == nonaut_compose(sys, eta, 0, i, x));
  }
}

TEST_CASE("property: nonaut_image is the hull of sampled orbits") {
  Rng rng(42);
  const SkewSystem sys = full_tv();
  for (int n = 0; n < 200; ++n) {
    const BasePoint eta = random_base_point(rng, sys.base());
    const UnitInterval j = random_interval(rng, 32);
    const auto i = static_cast<std::size_t>(uniform(rng, 0, 3));
    const UnitInterval img = nonaut_image(sys, eta, 0, i, j);
    Rational lo = 1, hi = 0;
    constexpr long kSamples = 256;
    for (long s = 0; s <= kSamples; ++s) {
      const Rational x = j.lo() + j.length() * r(s, kSamples);
      const Rational y = nonaut_compose(sys, eta, 0, i, x);
      CHECK(img.contains(y));
      lo = min(lo, y);
      hi = max(hi, y);
    }
    // Sample spacing times the maximal slope 8 bounds the gap to the hull.
    CHECK(lo - img.lo() <= j.length() * r(8, kSamples));
    CHECK(img.hi() - hi <= j.length() * r(8, kSamples));
  }
}

TEST_CASE("property: product metric axioms") {
  Rng rng(43);
  const Sft b = golden_mean();
  for (int n = 0; n < 2000; ++n) {
    const SkewPoint p{random_base_point(rng, b), random_unit(rng)}, q{random_base_point(rng, b), random_unit(rng)},
        s{random_base_point(rng, b), random_unit(rng)};
    const Rational pq = product_metric(p, q);
    CHECK(pq == product_metric(q, p));
    CHECK(pq.sign() >= 0);
    CHECK((pq == 0) == (p.base == q.base && p.fibre == q.fibre));
    CHECK(product_metric(p, s) <= pq + product_metric(q, s));
    CHECK(pq == max(oracle::rho(p.base, q.base), abs(p.fibre - q.fibre)));
  }
}

TEST_SUITE_END();
