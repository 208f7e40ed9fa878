#include "doctest.h"

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"
#include "skewspec/pwl.hpp"

TEST_SUITE_BEGIN("pwl");

using namespace skewspec;
using namespace skewspec::testing;

namespace {

Rational r(long p, long q) { return make_rational(p, q); }

PwlMap phi(const Rational& xi) { return PwlMap({{0, xi}, {Rational(1) - xi, 1}, {1, 0}}); }
PwlMap f_map(const Rational& xi) { return PwlMap({{0, 1}, {Rational(1) - 2 * xi, 0}, {1, 2 * xi}}); }
PwlMap g_map() { return PwlMap({{0, 1}, {r(1, 4), r(1, 4)}, {r(1, 2), 0}, {1, r(1, 2)}}); }

}  // namespace

TEST_CASE("construction rejects malformed node lists") {
  CHECK_THROWS_AS(PwlMap({{0, 0}}), Error);
  CHECK_THROWS_AS(PwlMap({{0, 0}, {r(1, 2), 1}}), Error);
  CHECK_THROWS_AS(PwlMap({{0, 0}, {r(1, 2), 1}, {r(1, 2), 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(PwlMap({{0, 0}, {1, 2}}), Error);
  CHECK_THROWS_AS(PwlMap({{0, r(1, 2)}, {r(1, 2), r(1, 2)}, {1, 1}}), Error);
}

TEST_CASE("eval") {
  CHECK(eval(tent(), r(1, 4)) == r(1, 2));
  CHECK(eval(tent(), r(1, 2)) == Rational(1));
  const Rational xi = r(1, 5);
  CHECK(eval(phi(xi), 0) == xi);
  CHECK_THROWS_AS((void)eval(tent(), r(3, 2)), Error);
}

TEST_CASE("image_interval") {
  CHECK(image_interval(tent(), {0, r(1, 2)}) == UnitInterval::unit());
  CHECK(image_interval(tent(), {r(1, 4), r(3, 4)}) == UnitInterval(r(1, 2), 1));
  const Rational xi = r(1, 5);
  CHECK(image_interval(f_map(xi), {Rational(1) - 2 * xi, 1}) == UnitInterval(0, 2 * xi));
}

TEST_CASE("preimage_components") {
  using V = std::vector<UnitInterval>;
  CHECK(preimage_components(tent(), {0, r(1, 2)}) == V{{0, r(1, 4)}, {r(3, 4), 1}});
  CHECK(preimage_components(tent(), {1, 1}) == V{{r(1, 2), r(1, 2)}});
  CHECK(preimage_components(tent(), {r(1, 2), 1}) == V{{r(1, 4), r(3, 4)}});
  CHECK(preimage_components(PwlMap({{0, r(1, 4)}, {1, r(3, 4)}}), {r(7, 8), 1}).empty());
}

TEST_CASE("expansion_rate") {
  CHECK(expansion_rate(tent()) == Rational(2));
  CHECK(expansion_rate(g_map()) == Rational(1));
  CHECK(expansion_rate(zigzag()) == Rational(3));
  CHECK(is_expanding(tent()));
  CHECK_FALSE(is_expanding(g_map()));
}

TEST_CASE("leo_exponent") {
  CHECK(leo_exponent(tent(), 1) == 0);
  const int m_half = leo_exponent(tent(), r(1, 2));
  CHECK(oracle::leo_sound(tent(), r(1, 2), m_half));
  CHECK(oracle::minimal_leo(tent(), r(1, 2)) == 2);
  const int m_quarter = leo_exponent(tent(), r(1, 4));
  CHECK(m_quarter <= 4);
  CHECK(oracle::leo_sound(tent(), r(1, 4), m_quarter));
  CHECK_THROWS_AS((void)leo_exponent(PwlMap({{0, r(1, 4)}, {1, r(3, 4)}}), r(1, 2)), Error);
  CHECK_THROWS_AS((void)leo_exponent(tent(), 0), Error);
}

TEST_CASE("is_mixing") {
  CHECK(is_mixing(tent(), 10));
  CHECK_FALSE(is_mixing(PwlMap::identity(), 10));
  CHECK(is_mixing(valley(), 10));
  CHECK(is_mixing(zigzag(), 10));
  // Swaps [0,1/2] and [1/2,1], so no small interval ever covers.
  CHECK_FALSE(is_mixing(PwlMap({{0, r(1, 2)}, {r(1, 4), 1}, {r(1, 2), r(1, 2)}, {r(3, 4), 0}, {1, r(1, 2)}}), 20));
}

TEST_CASE("is_surjective") {
  CHECK(is_surjective(tent()));
  CHECK_FALSE(is_surjective(PwlMap({{0, r(1, 4)}, {1, r(3, 4)}})));
  CHECK(is_surjective(phi(r(1, 5))));
}

TEST_CASE("laps and critical points") {
  const PwlMap t({{0, 0}, {r(1, 4), r(1, 2)}, {r(1, 2), 1}, {1, 0}});
  CHECK(t.laps().laps.size() == 2);
  CHECK(std::vector<Rational>(t.critical_points().begin(), t.critical_points().end()) ==
        std::vector<Rational>{0, r(1, 2), 1});
}

TEST_CASE("compose") {
  const PwlMap tt = compose(tent(), tent());
  for (long k = 0; k <= 64; ++k) CHECK(tt(r(k, 64)) == tent()(tent()(r(k, 64))));
  CHECK(expansion_rate(tt) == Rational(4));
}

TEST_CASE("covering_pullback") {
  CHECK(covering_pullback(tent(), UnitInterval::unit(), UnitInterval::unit()) == UnitInterval(0, r(1, 2)));
  CHECK(covering_pullback(tent(), UnitInterval::unit(), {r(1, 4), r(1, 2)}) == UnitInterval(r(1, 8), r(1, 4)));
  CHECK_THROWS_AS((void)covering_pullback(tent(), {0, r(1, 8)}, {0, r(1, 2)}), Error);
}

TEST_CASE("property: image matches the node-list oracle and the expanding inequality") {
  Rng rng(21);
  for (int i = 0; i < 1500; ++i) {
    const PwlMap t = random_map(rng);
    const UnitInterval j = random_interval(rng);
    const UnitInterval img = image_interval(t, j);
    CHECK(img == oracle::image(t, j));
    for (const UnitInterval& lap : t.laps().laps) {
      if (auto sub = interval_intersect(lap, j); sub && !sub->degenerate()) {
        CHECK(image_interval(t, *sub).length() >= expansion_rate(t) * sub->length());
      }
    }
    for (std::size_t k = 0; k < t.nodes().size(); ++k) CHECK(t(t.nodes()[k].x) == t.nodes()[k].y);
  }
}

TEST_CASE("property: preimage/image adjunction") {
  Rng rng(22);
  for (int i = 0; i < 1500; ++i) {
    const PwlMap t = random_map(rng);
    const UnitInterval j = random_interval(rng, 16, false);
    const auto comps = preimage_components(t, j);
    for (const UnitInterval& c : comps) CHECK(j.contains(c.degenerate() ? UnitInterval::point(t(c.lo())) : image_interval(t, c)));
    for (long k = 0; k <= 96; ++k) {
      const Rational x = r(k, 96);
      if (j.contains(oracle::eval(t, x))) {
        CHECK(std::any_of(comps.begin(), comps.end(), [&](const UnitInterval& c) { return c.contains(x); }));
      }
    }
  }
}

TEST_CASE("property: compose agrees pointwise") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const PwlMap a = random_map(rng, 4), b = random_map(rng, 4);
    const PwlMap ab = compose(a, b);
    for (int s = 0; s < 10; ++s) {
      const Rational x = random_unit(rng, 97);
      CHECK(ab(x) == a(b(x)));
    }
    const PwlMap* seq[] = {&b, &a};
    const PwlMap in_order = compose_in_order(seq);
    const Rational x = random_unit(rng, 89);
    CHECK(in_order(x) == a(b(x)));
  }
}

TEST_CASE("property: covering_pullback is exactly onto and minimal") {
  Rng rng(24);
  int checked = 0;
  while (checked < 1500) {
    const PwlMap t = random_map(rng);
    const UnitInterval source = random_interval(rng);
    const UnitInterval img = image_interval(t, source);
    Rational a = img.lo() + img.length() * random_unit(rng, 8);
    Rational b = img.lo() + img.length() * random_unit(rng, 8);
    if (b < a) std::swap(a, b);
    const UnitInterval target(a, b);
    const UnitInterval v = covering_pullback(t, source, target);
    CHECK(source.contains(v));
    CHECK(oracle::image(t, v) == target);
    if (!target.degenerate()) {
      // Endpoints of a minimal cover hit the endpoints of the target.
      const Rational fu = t(v.lo()), fv = t(v.hi());
      CHECK(((fu == a && fv == b) || (fu == b && fv == a)));
    }
    ++checked;
  }
}

TEST_CASE("property: leo_exponent is sound against brute force") {
  Rng rng(25);
  for (int i = 0; i < 40; ++i) {
    const PwlMap t = random_expanding_map(rng);
    const Rational gamma = r(uniform(rng, 8, 32), 32);
    int m = 0;
    try {
      m = leo_exponent(t, gamma, 64);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotLeoWithinCap);
      continue;
    }
    CHECK(oracle::leo_sound(t, gamma, m, 64));
  }
}

TEST_SUITE_END();
