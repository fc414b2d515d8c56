#include "doctest.h"
#include "support.hpp"

#include "carnot/triangular.hpp"

using namespace carnot;
using namespace carnot::test;

TEST_CASE("class E maps invert exactly") {
  auto g = rng(41);
  for (const auto& w : {WeightVector({1, 1, 2}), WeightVector({1, 1, 2, 3}), WeightVector({1, 1, 2, 3, 3})}) {
    for (int i = 0; i < 20; ++i) {
      const PolyMap m = random_class_e(g, w);
      REQUIRE(is_class_e(m, w));
      const TriangularMap t(m, w);
      CHECK(t.compose(t.inverse()) == TriangularMap::identity(w));
      CHECK(t.inverse().compose(t) == TriangularMap::identity(w));
    }
  }
}

TEST_CASE("unipotent triangular inverse") {
  const WeightVector w({1, 1, 2, 3});
  PolyMap m = PolyMap::identity(4);
  m[2] += mono(4, {1, 1, 0, 0}) + var(4, 0);
  m[3] += mono(4, {1, 0, 1, 0}, 3);
  REQUIRE(is_unipotent_triangular(m, w));
  CHECK(compose(m, invert_unipotent_triangular(m, w)) == PolyMap::identity(4));
  CHECK_FALSE(is_class_e(m, w));
}

TEST_CASE("non triangular maps are rejected") {
  const WeightVector w({1, 1, 2});
  PolyMap m = PolyMap::identity(3);
  m[0] += var(3, 2);
  CHECK_FALSE(is_unipotent_triangular(m, w));
  CHECK_THROWS_AS(TriangularMap(m, w), ShapeError);
  const PolyMap swap(3, {var(3, 1), var(3, 0) + mono(3, {0, 0, 2}), var(3, 2)});
  CHECK_THROWS_AS(invert_perturbed_triangular(swap, w, 3), ShapeError);
}

TEST_CASE("weight nondecreasing maps invert to any weight") {
  const WeightVector w({1, 1, 2});
  PolyMap m = PolyMap::identity(3);
  m[0] += mono(3, {0, 0, 1}) + mono(3, {2, 0, 0});
  m[2] += mono(3, {0, 0, 2});
  REQUIRE(is_weight_nondecreasing(m, w));
  for (int max = 2; max <= 6; ++max) {
    const PolyMap inv = invert_perturbed_triangular(m, w, max);
    CHECK(truncate(compose(m, inv), w, max) == PolyMap::identity(3));
  }
}

TEST_CASE("O_w classification") {
  const WeightVector w({1, 1, 2});
  PolyMap r = PolyMap::zero(3, 3);
  r[0] = mono(3, {2, 0, 0});
  r[2] = mono(3, {1, 0, 1});
  CHECK(ow_class_poly(r, 1, w));
  r[2] = mono(3, {1, 1, 0});
  CHECK_FALSE(ow_class_poly(r, 1, w));
  CHECK(ow_class_poly(r, 0, w));
}
