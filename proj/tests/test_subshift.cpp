#include "doctest.h"

#include "generators.hpp"
#include "oracles.hpp"
#include "skewspec/subshift.hpp"

TEST_SUITE_BEGIN("subshift");

using namespace skewspec;
using namespace skewspec::testing;

namespace {

Rational r(long p, long q) { return make_rational(p, q); }
Sft two_cycle() { return Sft({{false, true}, {true, false}}); }
BasePoint bp(const char* s) { return BasePoint::parse(s); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalContradiction;
}

}  // namespace

TEST_CASE("words and base points parse") {
  CHECK(parse_word("1213") == Word{1, 2, 1, 3});
  CHECK(to_string(Word{2, 1}) == "21");
  CHECK_THROWS_AS((void)parse_word("1a"), Error);
  CHECK(bp("12|3").str() == "12|3");
  CHECK(bp("21").str() == "|21");
  CHECK_THROWS_AS((void)bp("1|"), Error);
  CHECK_THROWS_AS((void)bp("1|2|3"), Error);
}

TEST_CASE("symbol_at") {
  CHECK(symbol_at(bp("12|3"), 5) == 3);
  CHECK(symbol_at(bp("|12"), 3) == 2);
  CHECK(symbol_at(bp("|1"), 1000000) == 1);
}

TEST_CASE("shift") {
  CHECK(shift(bp("|12")).str() == "|21");
  CHECK(shift(bp("1|2")).str() == "|2");
  CHECK(shift(bp("|1")).str() == "|1");
}

TEST_CASE("rho") {
  CHECK(rho(bp("|12"), bp("|12")) == Rational(0));
  CHECK(rho(bp("|1"), bp("|2")) == Rational(1));
  CHECK(rho(bp("|12"), bp("|11")) == r(1, 2));
  // Same sequence written two ways.
  CHECK(rho(bp("1|21"), bp("|12")) == Rational(0));
  CHECK(bp("1|21") == bp("|12"));
  CHECK(rho(bp("|1"), bp("1111111111111111111111111111111111|2")) == pow2_neg(34));
}

TEST_CASE("is_word") {
  CHECK(is_word(golden_mean(), parse_word("121")));
  CHECK_FALSE(is_word(golden_mean(), parse_word("122")));
  CHECK(is_word(Sft::full_shift(2), parse_word("2212211")));
  CHECK_FALSE(is_word(Sft::full_shift(2), parse_word("13")));
  CHECK(lies_in(golden_mean(), bp("2|1")));
  CHECK_FALSE(lies_in(golden_mean(), bp("|2")));
}

TEST_CASE("sft construction") {
  const std::pair<Symbol, Symbol> forbid[] = {{2, 2}};
  CHECK(Sft::from_forbidden(2, forbid).matrix() == golden_mean().matrix());
  CHECK_THROWS_AS(Sft({{true, false}}), Error);
  CHECK_THROWS_AS(Sft({{true, false}, {false, false}}), Error);
}

TEST_CASE("primitivity_exponent") {
  CHECK(primitivity_exponent(Sft::full_shift(2)) == 0);
  CHECK(primitivity_exponent(golden_mean()) == 2);
  CHECK(kind_of([] { (void)primitivity_exponent(two_cycle()); }) == ErrorKind::NotPrimitive);
}

TEST_CASE("connecting_word") {
  CHECK(connecting_word(golden_mean(), 2, 2, 2) == parse_word("11"));
  CHECK(connecting_word(Sft::full_shift(2), 1, 2, 0).empty());
  CHECK(connecting_word(golden_mean(), 1, 1, 2) == parse_word("11"));
  CHECK(kind_of([] { (void)connecting_word(golden_mean(), 2, 2, 0); }) == ErrorKind::NoPath);
  CHECK(kind_of([] { (void)connecting_word(two_cycle(), 1, 1, 0); }) == ErrorKind::NoPath);
  CHECK(connecting_word(two_cycle(), 1, 1, 1) == parse_word("2"));
}

TEST_CASE("base_gap_length") {
  CHECK(agreement_depth(r(1, 4)) == 2);
  CHECK(agreement_depth(r(1, 3)) == 2);
  CHECK(agreement_depth(r(1, 2)) == 1);
  CHECK(base_gap_length(Sft::full_shift(2), r(1, 4)) == 2);
  CHECK(base_gap_length(golden_mean(), r(1, 4)) == 4);
  CHECK(base_gap_length(Sft::full_shift(2), r(1, 2)) == 1);
  CHECK_THROWS_AS((void)base_gap_length(golden_mean(), 1), Error);
}

TEST_CASE("construct_base_witness") {
  SUBCASE("full shift, one segment") {
    const BaseSegment segs[] = {{bp("|1"), 2, {}}};
    const BasePoint eta = construct_base_witness(Sft::full_shift(2), segs, r(1, 2), 1, 2);
    CHECK(eta.period().size() == 4);
    const std::pair<BasePoint, int> audit_segs[] = {{bp("|1"), 2}};
    const int gaps[] = {2};
    const auto audit = verify_base_tracing(audit_segs, gaps, eta);
    CHECK(audit.periodic);
    CHECK(audit.worst_defect <= r(1, 2));
  }
  SUBCASE("zero free gap") {
    const BaseSegment segs[] = {{bp("|12"), 3, {}}, {bp("2|1"), 2, {}}};
    const int K = base_gap_length(golden_mean(), r(1, 4));
    const BasePoint eta = construct_base_witness(golden_mean(), segs, r(1, 4), K, K);
    const std::pair<BasePoint, int> audit_segs[] = {{bp("|12"), 3}, {bp("2|1"), 2}};
    const int gaps[] = {K, K};
    const auto audit = verify_base_tracing(audit_segs, gaps, eta);
    CHECK(audit.periodic);
    CHECK(audit.worst_defect <= r(1, 4));
  }
  SUBCASE("golden mean keeps the segment and avoids 22") {
    const BaseSegment segs[] = {{bp("|12"), 2, {}}};
    const BasePoint eta = construct_base_witness(golden_mean(), segs, r(1, 4), 4, 4);
    CHECK(eta.prefix(4) == parse_word("1212"));
    Word twice = eta.period();
    twice.insert(twice.end(), eta.period().begin(), eta.period().end());
    CHECK(is_word(golden_mean(), twice));
  }
  SUBCASE("errors") {
    const BaseSegment segs[] = {{bp("|12"), 2, {}}};
    CHECK(kind_of([&] { (void)construct_base_witness(golden_mean(), segs, r(1, 4), 3, 4); }) ==
          ErrorKind::BudgetTooSmall);
    const BaseSegment bad[] = {{bp("|2"), 2, {}}};
    CHECK(kind_of([&] { (void)construct_base_witness(golden_mean(), bad, r(1, 4), 4, 4); }) ==
          ErrorKind::InvalidArgument);
    const BaseSegment big[] = {{bp("|12"), 2, InsertBlock{bp("|1"), 3}}};
    CHECK(kind_of([&] { (void)construct_base_witness(golden_mean(), big, r(1, 4), 4, 8); }) ==
          ErrorKind::BudgetTooSmall);
  }
}

TEST_CASE("property: primitivity exponent matches integer matrix powers") {
  Rng rng(31);
  int primitive = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = static_cast<int>(uniform(rng, 1, 4));
    std::vector<std::vector<bool>> a(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (auto& row : a)
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = uniform(rng, 0, 2) > 0;
    std::optional<Sft> b;
    try {
      b.emplace(a);
    } catch (const Error&) {
      continue;
    }
    std::optional<int> expected;
    if (oracle::positive(oracle::matrix_power(*b, 1))) expected = 0;
    for (int t = 2; !expected && t <= 20; ++t) {
      if (oracle::positive(oracle::matrix_power(*b, t))) expected = t;
    }
    if (expected) {
      ++primitive;
      CHECK(primitivity_exponent(*b) == *expected);
    } else {
      CHECK(kind_of([&] { (void)primitivity_exponent(*b); }) == ErrorKind::NotPrimitive);
    }
  }
  CHECK(primitive > 50);
}

TEST_CASE("property: connecting_word is the enumerated least word") {
  const Sft systems[] = {golden_mean(), Sft::full_shift(3), Sft({{false, true, false}, {false, true, true}, {true, true, false}})};
  for (const Sft& b : systems) {
    const int p = primitivity_exponent(b);
    for (Symbol a = 1; a <= b.alphabet_size(); ++a) {
      for (Symbol c = 1; c <= b.alphabet_size(); ++c) {
        for (int t = 0; t <= p + 5; ++t) {
          const auto expected = oracle::least_connector(b, a, c, t);
          if (t >= std::max(p, 1)) CHECK(expected.has_value());
          if (expected) {
            CHECK(connecting_word(b, a, c, t) == *expected);
          } else {
            CHECK(kind_of([&] { (void)connecting_word(b, a, c, t); }) == ErrorKind::NoPath);
          }
        }
      }
    }
  }
}

TEST_CASE("property: rho is an ultrametric with the first-symbol property") {
  Rng rng(32);
  const Sft b = Sft::full_shift(2);
  for (int i = 0; i < 3000; ++i) {
    const BasePoint x = random_base_point(rng, b), y = random_base_point(rng, b), z = random_base_point(rng, b);
    const Rational xy = rho(x, y);
    CHECK(xy == oracle::rho(x, y));
    CHECK(xy == rho(y, x));
    CHECK((xy == 0) == (x == y));
    CHECK(rho(x, x) == Rational(0));
    CHECK(rho(x, z) <= max(xy, rho(y, z)));
    if (xy < 1) CHECK(symbol_at(x, 0) == symbol_at(y, 0));
    for (std::size_t k = 0; k < 6; ++k) CHECK(symbol_at(shift(x), k) == symbol_at(x, k + 1));
    CHECK(shift(x).period().size() == x.period().size());
  }
}

TEST_CASE("property: constructed base witnesses pass the audit") {
  Rng rng(33);
  const Sft systems[] = {Sft::full_shift(2), golden_mean(), Sft::full_shift(3)};
  for (int i = 0; i < 1000; ++i) {
    const Sft& b = systems[i % 3];
    const Rational eps = pow2_neg(uniform(rng, 1, 4));
    const int K = base_gap_length(b, eps);
    const int gap = K + static_cast<int>(uniform(rng, 0, 4));
    std::vector<BaseSegment> segs;
    std::vector<std::pair<BasePoint, int>> audit_segs;
    const auto k = static_cast<std::size_t>(uniform(rng, 1, 4));
    for (std::size_t j = 0; j < k; ++j) {
      BaseSegment s{random_base_point(rng, b), static_cast<int>(uniform(rng, 1, 6)), {}};
      audit_segs.emplace_back(s.point, s.length);
      segs.push_back(std::move(s));
    }
    const BasePoint eta = construct_base_witness(b, segs, eps, K, gap);
    const std::vector<int> gaps(k, gap);
    const auto audit = verify_base_tracing(audit_segs, gaps, eta);
    CHECK(audit.periodic);
    CHECK(audit.worst_defect <= eps);
    // Independent re-check with the oracle metric.
    std::size_t r0 = 0;
    for (const auto& [omega, n] : audit_segs) {
      for (int t = 0; t < n; ++t) CHECK(oracle::rho(shift_by(omega, static_cast<std::size_t>(t)), shift_by(eta, r0 + static_cast<std::size_t>(t)), 256) <= eps);
      r0 += static_cast<std::size_t>(n + gap);
    }
  }
}

TEST_SUITE_END();
