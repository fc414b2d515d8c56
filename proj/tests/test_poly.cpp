#include "doctest.h"
#include "support.hpp"

#include "carnot/poly.hpp"

using namespace carnot;
using namespace carnot::test;

namespace {

Poly random_poly(Rng& rng, std::size_t n, int max_degree) {
  Poly p(n);
  for (const auto& alpha : monomials_in_weight_range(WeightVector(std::vector<int>(n, 1)), 0, max_degree))
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) p.add_term(alpha, random_rational(rng));
  return p;
}

}  // namespace

TEST_CASE("printing") {
  const Poly p = var(3, 2) - Rational(1, 2) * mono(3, {1, 1, 0});
  CHECK(to_string(p) == "x3 - x1*x2/2");
  CHECK(to_string(Poly(2)) == "0");
}

TEST_CASE("ring axioms on random polynomials") {
  auto g = rng(1);
  for (int i = 0; i < 20; ++i) {
    const Poly a = random_poly(g, 3, 3), b = random_poly(g, 3, 3), c = random_poly(g, 3, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("derivative satisfies Leibniz and inverts antiderivative") {
  auto g = rng(2);
  for (int i = 0; i < 20; ++i) {
    const Poly a = random_poly(g, 3, 3), b = random_poly(g, 3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK((a * b).derivative(j) == a.derivative(j) * b + a * b.derivative(j));
      CHECK(a.antiderivative(j).derivative(j) == a);
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  auto g = rng(3);
  for (int i = 0; i < 20; ++i) {
    const Poly a = random_poly(g, 3, 3), b = random_poly(g, 3, 3);
    const Point x = random_point(g, 3);
    CHECK((a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x));
    CHECK((a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x));
  }
}

TEST_CASE("weight filtrations") {
  const WeightVector w({1, 1, 2});
  const Poly p = var(3, 0) + mono(3, {1, 1, 0}) + var(3, 2) + mono(3, {1, 0, 1}, 3);
  CHECK(p.min_weight(w) == 1);
  CHECK(p.max_weight(w) == 3);
  CHECK(p.homogeneous_part(2, w) == mono(3, {1, 1, 0}) + var(3, 2));
  CHECK(p.truncated(2, w) == p - mono(3, {1, 0, 1}, 3));
  CHECK(Poly::multiply_truncated(p, p, w, 2) == (p * p).truncated(2, w));
}

TEST_CASE("composition agrees with evaluation") {
  auto g = rng(4);
  for (int i = 0; i < 10; ++i) {
    PolyMap inner = PolyMap::zero(2, 3);
    for (std::size_t k = 0; k < 3; ++k) inner[k] = random_poly(g, 2, 2);
    const Poly outer = random_poly(g, 3, 3);
    const Point x = random_point(g, 2);
    CHECK(substitute(outer, inner).evaluate(x) == outer.evaluate(inner.evaluate(x)));
  }
}

TEST_CASE("linear maps") {
  const PolyMap m = PolyMap::linear({{1, 2}, {0, 1}}, Point{1, 1});
  CHECK(m.evaluate(Point{1, 1}) == Point{0, 0});
  CHECK(m.evaluate(Point{2, 3}) == Point{5, 2});
}

TEST_CASE("variable count limits") {
  CHECK_THROWS_AS(Poly(kMaxVars + 1), DimensionMismatch);
  CHECK_THROWS_AS(var(2, 0) + var(3, 0), DimensionMismatch);
}
