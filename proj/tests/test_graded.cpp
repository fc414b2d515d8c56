#include "doctest.h"

#include "carnot/graded.hpp"
#include "carnot/rational.hpp"

using namespace carnot;

TEST_CASE("rationals parse and print canonically") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK_THROWS_AS(parse_rational("1.5"), SchemaError);
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK(parse_point("1, 2/3,-4") == Point{1, Rational(2, 3), -4});
}

TEST_CASE("weighted degree and dilation") {
  const WeightVector w({1, 1, 2, 3});
  CHECK(w.step() == 3);
  CHECK(w.weighted_degree(MultiIndex(std::vector<int>{1, 0, 1, 1})) == 6);
  const Point x{1, 2, 3, 4};
  CHECK(dilate(x, Rational(2), w) == Point{2, 4, 12, 32});
  CHECK(dilate(dilate(x, Rational(1, 3), w), Rational(3), w) == x);
  CHECK(w.doubled().values() == std::vector<int>{1, 1, 2, 3, 1, 1, 2, 3});
}

TEST_CASE("weights must be positive and nondecreasing") {
  CHECK_THROWS(WeightVector({2, 1}));
  CHECK_THROWS(WeightVector({0, 1}));
}

TEST_CASE("graded lex order") {
  const GradedLexLess less;
  const MultiIndex x1sq(std::vector<int>{2, 0}), x1x2(std::vector<int>{1, 1}), x2sq(std::vector<int>{0, 2});
  CHECK(less(MultiIndex::unit(0), x1sq));
  CHECK(less(x1sq, x1x2));
  CHECK(less(x1x2, x2sq));
}

TEST_CASE("pseudo norm is homogeneous") {
  const WeightVector w({1, 2});
  const std::vector<double> x{0.3, -0.7};
  CHECK(pseudo_norm(dilate(x, 0.25, w), w) == doctest::Approx(0.25 * pseudo_norm(x, w)));
}
