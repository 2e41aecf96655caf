#include <doctest.h>

#include <random>

#include "glide/exponents.hpp"

using namespace glide;

namespace {

// Random pair with 1/q, 1/r in [0, 1/2] on a grid of denominator 840.
StrichartzPair random_pair(std::mt19937_64& rng, int d = 2, bool r_at_least_4 = false) {
  std::uniform_int_distribution<int> iq(0, 420), ir(0, r_at_least_4 ? 210 : 420);
  return {Rational(iq(rng), 840), Rational(ir(rng), 840), d};
}

}  // namespace

TEST_CASE("parsing exponents") {
  CHECK(parse_rational("36/7") == Rational(36, 7));
  CHECK(parse_rational("4.8") == Rational(24, 5));
  CHECK(parse_rational(" 5 ") == 5);
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("."), ValidationError);
  const StrichartzPair p = StrichartzPair::parse("36/7", "inf");
  CHECK(p.inv_q == Rational(7, 36));
  CHECK(p.inv_r == 0);
  CHECK(p.q_string() == "36/7");
  CHECK(p.r_string() == "inf");
  CHECK(StrichartzPair::parse("4", "infinity").r_string() == "inf");
  CHECK_THROWS_AS(StrichartzPair::parse("1", "inf"), ValidationError);
  CHECK_THROWS_AS(StrichartzPair::parse("0", "inf"), ValidationError);
  CHECK_THROWS_AS(StrichartzPair::make(4, 4, 1), ValidationError);
  CHECK(to_double(Rational(7, 36)) == doctest::Approx(7.0 / 36.0));
  CHECK(to_string(Rational(7, 36)) == "7/36");
}

TEST_CASE("scaling exponent beta") {
  CHECK(beta(StrichartzPair::with_infinite_r(5)) == Rational(4, 5));
  CHECK(beta(StrichartzPair::parse("inf", "2", 3)) == 0);
  CHECK(beta(StrichartzPair::with_infinite_r(4)) == Rational(3, 4));
  CHECK(alpha(StrichartzPair::with_infinite_r(5)) == Rational(2, 5));
  CHECK_THROWS_AS(alpha(StrichartzPair::make(4, 2)), DomainError);
}

TEST_CASE("boundary pairs land on zero slack") {
  CHECK(region(Region::thm1, StrichartzPair::with_infinite_r(5)).slack == 0);
  CHECK(region(Region::thm1, StrichartzPair::with_infinite_r(5)).satisfied);
  CHECK(region(Region::ilp3, StrichartzPair::with_infinite_r(Rational(36, 7))).slack == 0);
  CHECK(region(Region::doi2d, StrichartzPair::with_infinite_r(Rational(24, 5))).slack == 0);
  CHECK(region(Region::free, StrichartzPair::with_infinite_r(4)).slack == 0);
  CHECK(region(Region::thm1, StrichartzPair::with_infinite_r(Rational(49, 10))).slack < 0);
  CHECK_FALSE(region(Region::thm1, StrichartzPair::with_infinite_r(Rational(49, 10))).satisfied);
  // the doi line passes through its two stated endpoints
  CHECK(region(Region::doi_line, StrichartzPair::with_infinite_r(Rational(24, 5))).slack == 0);
  CHECK(region(Region::doi_line, StrichartzPair::make(8, 4)).slack == 0);
  CHECK_THROWS_AS(region(Region::doi_line, StrichartzPair::make(4, 3)), DomainError);
  CHECK_THROWS_AS(region(Region::thm1, StrichartzPair::with_infinite_r(5, 3)), DomainError);
  CHECK_THROWS_AS(region(Region::thm2, StrichartzPair::make(4, 3, 3)), DomainError);
  for (Region r : all_regions()) CHECK(parse_region(to_string(r)) == r);
  CHECK_THROWS_AS(parse_region("nope"), ValidationError);
}

TEST_CASE("planar condition") {
  CHECK(thm1_condition(StrichartzPair::with_infinite_r(5)));
  CHECK_FALSE(thm1_condition(StrichartzPair::make(5, 10)));
  CHECK_THROWS_AS(thm1_condition(StrichartzPair::with_infinite_r(5, 3)), DomainError);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const StrichartzPair p = random_pair(rng);
    CHECK(thm1_condition(p) == region(Region::thm1, p).satisfied);
  }
}

TEST_CASE("assembled higher-dimensional condition") {
  std::mt19937_64 rng(2);
  for (int d : {2, 3, 4, 5})
    for (int i = 0; i < 1000; ++i) {
      const StrichartzPair p = random_pair(rng, d, true);
      CHECK(thm2_condition(p) == region(Region::thm2, p).satisfied);
      CHECK(thm2_margin(p) == 4 * region(Region::thm2, p).slack);
    }
  CHECK(region(Region::thm2, StrichartzPair::with_infinite_r(Rational(24, 5))).slack == 0);
  CHECK_THROWS_AS(thm2_condition(StrichartzPair::make(4, 3, 3)), DomainError);
}

TEST_CASE("monotone and nested regions") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    StrichartzPair p = random_pair(rng, 2, true);
    const Rational sf = region(Region::free, p).slack;
    const Rational s1 = region(Region::thm1, p).slack;
    const Rational s3 = region(Region::ilp3, p).slack;
    CHECK(s3 <= s1);
    CHECK(s1 <= sf);
    CHECK(region(Region::quarter_loss, p).slack <= sf);
    for (Region r : all_regions()) {
      const bool before = region(r, p).satisfied;
      StrichartzPair larger_q = p;
      larger_q.inv_q = p.inv_q / 2;
      if (before) CHECK(region(r, larger_q).satisfied);
    }
  }
}

TEST_CASE("parameter budget") {
  const ARule cube = ARule::cube_root;
  CHECK(budget_exponent(Rational(1, 5), 0, cube, MRule::lambda_cube_root) == 0);
  CHECK(budget_exponent(Rational(1, 4), 0, cube, MRule::lambda_cube_root) == Rational(-1, 12));
  CHECK(budget_exponent(Rational(1, 6), 0, cube, MRule::lambda_cube_root) == Rational(1, 18));
  CHECK(budget_exponent(Rational(1, 4), 0, cube, MRule::m_a) < 0);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const StrichartzPair p = random_pair(rng);
    // the cube-root budget is the planar condition
    CHECK((budget_exponent(p.inv_q, p.inv_r, cube, MRule::lambda_cube_root) >= 0) == thm1_condition(p));
    // eps -> 0 limit of the eps family: 3/q + 1/r <= 15/24
    const Rational net = budget_exponent(p.inv_q, p.inv_r, ARule::half_minus_eps, MRule::m_a, 0);
    CHECK((net >= 0) == (3 * p.inv_q + p.inv_r <= Rational(15, 24)));
    const Rational small = budget_exponent(p.inv_q, p.inv_r, ARule::half_minus_eps, MRule::m_a, Rational(1, 1000000));
    CHECK(abs(small - net) < Rational(1, 10000));
  }
  CHECK_THROWS_AS(budget_exponent(0, 0, ARule::given, MRule::m_a), ValidationError);
  CHECK_THROWS_AS(budget_exponent(0, 0, ARule::half_minus_eps, MRule::m_a, Rational(1, 2)), ValidationError);
}

TEST_CASE("Knapp exponent") {
  CHECK(knapp_exponent(3, Rational(1, 2)) == 0);
  CHECK(knapp_exponent(3, 0) == Rational(-1, 4));
  CHECK(knapp_exponent(5, 0) == Rational(-3, 4));
  CHECK_THROWS_AS(knapp_exponent(2, 0), DomainError);
}
