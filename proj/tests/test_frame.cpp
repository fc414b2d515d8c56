#include "doctest.h"
#include "support.hpp"

#include "carnot/catalog.hpp"
#include "carnot/coordinates.hpp"
#include "carnot/frame.hpp"

using namespace carnot;
using namespace carnot::test;

namespace {

Frame contact_frame(const Point& a = zero_point(3)) {
  std::vector<VectorField> x{VectorField::coordinate(3, 0), VectorField::coordinate(3, 1), VectorField::coordinate(3, 2)};
  x[1][2] = var(3, 0);
  return Frame(WeightVector({1, 1, 2}), a, x);
}

}  // namespace

TEST_CASE("frames need an invertible coefficient matrix at the base point") {
  std::vector<VectorField> x{VectorField::coordinate(2, 0), var(2, 0) * VectorField::coordinate(2, 1)};
  CHECK_THROWS_AS(Frame(WeightVector({1, 1}), zero_point(2), x), SingularMatrix);
  CHECK_NOTHROW(Frame(WeightVector({1, 1}), Point{1, 0}, x));
}

TEST_CASE("structure constants of the contact frame") {
  auto g = rng(31);
  for (int i = 0; i < 5; ++i) {
    const auto table = structure_constants_at(contact_frame(random_point(g, 3)));
    CHECK(table.graded == *catalog("heisenberg_3").algebra);
  }
}

TEST_CASE("brackets leaving the filtration are rejected") {
  std::vector<VectorField> x{VectorField::coordinate(3, 0), VectorField::coordinate(3, 1), VectorField::coordinate(3, 2)};
  x[1][2] = var(3, 0);
  CHECK_THROWS_AS(structure_constants_at(Frame(WeightVector({1, 1, 3}), zero_point(3), x)), ShapeError);
}

TEST_CASE("function order on the contact frame") {
  const Frame f = contact_frame();
  CHECK(function_order(var(3, 0), f, 4) == 1);
  CHECK(function_order(var(3, 2), f, 4) == 2);
  CHECK(function_order(mono(3, {1, 1, 0}), f, 4) == 2);
  CHECK(function_order(mono(3, {2, 0, 1}), f, 5) == 4);
  CHECK(function_order(mono(3, {2, 0, 1}), f, 3) == std::nullopt);
  CHECK(function_order(cst(3, 1), f, 3) == 0);
}

TEST_CASE("function order does not depend on the choice of H-frame") {
  // X2' = X2 + X1 and X3' = X3 + x1 X1 span the same filtration
  const Frame f = catalog("perturbed_heisenberg_3").frame;
  std::vector<VectorField> y = f.fields();
  y[1] = y[1] + y[0];
  y[2] = y[2] + var(3, 0) * y[0];
  const Frame g(f.weights(), f.base_point(), y);
  auto r = rng(32);
  for (int i = 0; i < 20; ++i) {
    Poly p(3);
    for (const auto& alpha : monomials_in_weight_range(f.weights(), 1, 4))
      if (std::uniform_int_distribution<int>(0, 3)(r) == 0) p.add_term(alpha, random_rational(r));
    CHECK(function_order(p, f, 5) == function_order(p, g, 5));
  }
}

TEST_CASE("both routes to the model fields agree") {
  for (const auto& name : catalog_names()) {
    const Frame f = epsilon_pipeline(catalog(name).frame).privileged_frame;
    for (std::size_t j = 0; j < f.dim(); ++j) CHECK(model_field(f, j) == model_field_jet(f, j));
  }
}

TEST_CASE("model fields of a group frame are the frame itself") {
  for (const auto& name : catalog_algebra_names()) {
    const Frame f = catalog(name).frame;
    CHECK(model_fields(f) == f.fields());
  }
}

TEST_CASE("graded triangular fields") {
  const auto w = WeightVector({1, 1, 2});
  CHECK(is_graded_triangular(contact_frame().fields(), w));
  std::vector<VectorField> bad = contact_frame().fields();
  bad[0][2] = var(3, 2);
  CHECK_FALSE(is_graded_triangular(bad, w));
}
