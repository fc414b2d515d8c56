#include "doctest.h"
#include "support.hpp"

#include "carnot/catalog.hpp"
#include "carnot/frame.hpp"
#include "carnot/vfield.hpp"

using namespace carnot;
using namespace carnot::test;

namespace {

VectorField random_field(Rng& g, std::size_t n) {
  std::vector<Poly> a;
  for (std::size_t k = 0; k < n; ++k) {
    Poly p(n);
    for (const auto& alpha : monomials_in_weight_range(WeightVector(std::vector<int>(n, 1)), 0, 2))
      if (std::uniform_int_distribution<int>(0, 2)(g) == 0) p.add_term(alpha, random_rational(g));
    a.push_back(p);
  }
  return VectorField(a);
}

VectorField contact_x2() {
  VectorField x = VectorField::coordinate(3, 1);
  x[2] = var(3, 0);
  return x;
}

}  // namespace

TEST_CASE("bracket of the contact frame") {
  const VectorField x1 = VectorField::coordinate(3, 0);
  CHECK(bracket(x1, contact_x2()) == VectorField::coordinate(3, 2));
  CHECK(to_string(contact_x2()) == "(1)*d2 + (x1)*d3");
}

TEST_CASE("bracket is antisymmetric, satisfies Jacobi and acts as a derivation") {
  auto g = rng(21);
  for (int i = 0; i < 10; ++i) {
    const VectorField x = random_field(g, 3), y = random_field(g, 3), z = random_field(g, 3);
    CHECK(bracket(x, y) == Rational(-1) * bracket(y, x));
    CHECK((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero());
    const Poly f = var(3, 0) * var(3, 1) + mono(3, {0, 0, 2}), h = var(3, 2) - mono(3, {1, 0, 1});
    CHECK(x.apply(f * h) == x.apply(f) * h + f * x.apply(h));
    CHECK(bracket(x, y).apply(f) == x.apply(y.apply(f)) - y.apply(x.apply(f)));
  }
}

TEST_CASE("weight expansion") {
  const WeightVector w({1, 1, 2});
  VectorField x = VectorField::coordinate(3, 0);
  x[2] = var(3, 1) + mono(3, {2, 0, 0});
  const auto parts = expand(x, w);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(-1) == homogeneous_part(x, -1, w));
  CHECK(field_weight(x, w) == -1);
  CHECK_FALSE(is_homogeneous(x, -1, w));
  CHECK(is_homogeneous(contact_x2(), -1, w));
  CHECK(parts.at(0)[2] == mono(3, {2, 0, 0}));
}

TEST_CASE("homogeneous fields rescale by their degree") {
  const WeightVector w({1, 1, 2});
  const VectorField x = contact_x2();
  for (const Rational t : {Rational(1, 2), Rational(3)}) CHECK(rescale(x, t, w) == power(1 / t, 1) * x);
  CHECK_THROWS(rescale(x, 0, w));
}

TEST_CASE("pushforward by a polynomial diffeomorphism preserves brackets") {
  const WeightVector w({1, 1, 2});
  PolyMap m = PolyMap::identity(3);
  m[2] += mono(3, {1, 1, 0}, Rational(1, 2));
  PolyMap m_inv = PolyMap::identity(3);
  m_inv[2] -= mono(3, {1, 1, 0}, Rational(1, 2));
  const VectorField x1 = VectorField::coordinate(3, 0), x2 = contact_x2();
  const VectorField p1 = pushforward(x1, m, m_inv), p2 = pushforward(x2, m, m_inv);
  CHECK(bracket(p1, p2) == pushforward(bracket(x1, x2), m, m_inv));
  CHECK(pushforward(p1, m_inv, m) == x1);
}
