#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "carnot/catalog.hpp"
#include "carnot/coordinates.hpp"

using namespace carnot;
using namespace carnot::test;

namespace {

Frame contact_frame(const Point& a = zero_point(3)) {
  std::vector<VectorField> x{VectorField::coordinate(3, 0), VectorField::coordinate(3, 1), VectorField::coordinate(3, 2)};
  x[1][2] = var(3, 0);
  return Frame(WeightVector({1, 1, 2}), a, x);
}

Point flow_at(const PolyMap& flow, const Point& y, const Point& xi, const Rational& t) {
  Point args = y;
  args.insert(args.end(), xi.begin(), xi.end());
  args.push_back(t);
  return flow.evaluate(args);
}

PolyMap expected_map(std::initializer_list<Poly> components) {
  const std::size_t n = components.size();
  return PolyMap(n, std::vector<Poly>(components));
}

}  // namespace

TEST_CASE("exact flows form a one-parameter group") {
  auto g = rng(51);
  for (const auto& w : {WeightVector({1, 1, 2}), WeightVector({1, 1, 2, 3})}) {
    const auto fields = random_triangular_fields(g, w, 2);
    const PolyMap flow = exact_flow(fields, w);
    for (int i = 0; i < 5; ++i) {
      const Point y = random_point(g, w.size()), xi = random_point(g, w.size());
      const Rational s = random_rational(g), t = random_rational(g);
      CHECK(flow_at(flow, y, xi, s + t) == flow_at(flow, flow_at(flow, y, xi, s), xi, t));
      CHECK(flow_at(flow, y, xi, 0) == y);
      CHECK(exact_flow_at(fields, w, y, xi).evaluate(Point{t}) == flow_at(flow, y, xi, t));
    }
  }
}

TEST_CASE("exact flows reject non triangular fields") {
  std::vector<VectorField> x{VectorField::coordinate(2, 0), VectorField::coordinate(2, 1)};
  x[0][0] = var(2, 0);
  CHECK_THROWS_AS(exact_flow(x, WeightVector({1, 1})), ShapeError);
}

TEST_CASE("exp of homogeneous fields commutes with dilations") {
  for (const auto& name : catalog_names()) {
    const auto pipe = epsilon_pipeline(catalog(name).frame);
    const auto& w = pipe.privileged_frame.weights();
    auto g = rng(52);
    for (int i = 0; i < 5; ++i) {
      const Point x = random_point(g, w.size());
      const Rational t = random_rational(g, 5, 3) + 6;
      CHECK(pipe.exp.evaluate(dilate(x, t, w)) == dilate(pipe.exp.evaluate(x), t, w));
    }
  }
}

TEST_CASE("log inverts exp") {
  for (const auto& name : catalog_names()) {
    const auto pipe = epsilon_pipeline(catalog(name).frame);
    CHECK(compose(pipe.log, pipe.exp) == PolyMap::identity(pipe.exp.size()));
  }
}

TEST_CASE("epsilon on the abelian group is a translation") {
  const Frame f = catalog("abelian_2").frame.at(Point{1, 2});
  const CoordinateChange c = epsilon(f);
  CHECK(c.as_polymap() == expected_map({var(2, 0) - cst(2, 1), var(2, 1) - cst(2, 2)}));
}

TEST_CASE("epsilon at the identity of a group frame is the identity") {
  for (const auto& name : catalog_algebra_names())
    CHECK(epsilon(catalog(name).frame).as_polymap() == PolyMap::identity(catalog(name).frame.dim()));
}

TEST_CASE("epsilon of the Heisenberg contact frame") {
  const auto phi = epsilon(contact_frame()).as_polymap();
  CHECK(phi == expected_map({var(3, 0), var(3, 1), var(3, 2) - Rational(1, 2) * mono(3, {1, 1, 0})}));
}

TEST_CASE("linearization makes every catalog frame adapted") {
  auto g = rng(53);
  for (const auto& name : catalog_names()) {
    const Frame f = catalog(name).frame.at(random_point(g, catalog(name).frame.dim()));
    const auto lin = linearize(f);
    CHECK(lin.frame.linearly_adapted());
    CHECK(lin.frame.base_point() == zero_point(f.dim()));
    CHECK(lin.change.apply(f.base_point()) == zero_point(f.dim()));
  }
}

TEST_CASE("canonical coordinates of the second kind on the Heisenberg group") {
  const Frame f = catalog("heisenberg_3").frame;
  CHECK(second_kind_forward(f) == expected_map({var(3, 0), var(3, 1), var(3, 2) - Rational(1, 2) * mono(3, {1, 1, 0})}));
  CHECK(canonical_second_kind(f).as_polymap() ==
        expected_map({var(3, 0), var(3, 1), var(3, 2) + Rational(1, 2) * mono(3, {1, 1, 0})}));
  CHECK(canonical_first_kind(f).as_polymap() == PolyMap::identity(3));
}

TEST_CASE("canonical charts on the abelian group are translations") {
  const Frame f = catalog("abelian_2").frame.at(Point{3, -1});
  const PolyMap expected = expected_map({var(2, 0) - cst(2, 3), var(2, 1) + cst(2, 1)});
  CHECK(canonical_first_kind(f).as_polymap() == expected);
  CHECK(canonical_second_kind(f).as_polymap() == expected);
}

TEST_CASE("numeric forward maps agree with the exact ones") {
  const Frame f = catalog("perturbed_engel_4").frame.at(Point{1, Rational(1, 2), 0, -1});
  const PolyMap first = first_kind_forward(f), second = second_kind_forward(f);
  auto g = rng(54);
  for (int i = 0; i < 5; ++i) {
    const Point x = random_point(g, 4, 1, 2);
    const auto xd = to_double(x);
    const auto a = numeric_first_kind(f, xd), b = numeric_second_kind(f, xd);
    const auto ea = to_double(first.evaluate(x)), eb = to_double(second.evaluate(x));
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(a[k] == doctest::Approx(ea[k]).epsilon(1e-9));
      CHECK(b[k] == doctest::Approx(eb[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("Newton inversion recovers the exact chart") {
  const Frame f = catalog("perturbed_heisenberg_3").frame;
  const auto chart = canonical_first_kind(f);
  const auto forward = [&](std::span<const double> x) { return numeric_first_kind(f, x); };
  const Point p{Rational(1, 4), Rational(-1, 3), Rational(1, 5)};
  const auto x = invert_numeric(forward, to_double(p), to_double(p));
  const auto expected = to_double(chart.apply(p));
  for (std::size_t k = 0; k < 3; ++k) CHECK(x[k] == doctest::Approx(expected[k]).epsilon(1e-9));
}

TEST_CASE("conversion between nilpotent approximations") {
  const auto w = WeightVector({1, 1, 2});
  const auto model = left_invariant_fields(*catalog("heisenberg_3").algebra);
  const auto target = contact_frame().fields();
  const PolyMap phi = convert_nilpotent_approx(model, target, w);
  const PolyMap phi_inv = invert_unipotent_triangular(phi, w);
  for (std::size_t j = 0; j < 3; ++j) CHECK(pushforward(model[j], phi, phi_inv) == target[j]);
  CHECK_THROWS_AS(convert_nilpotent_approx(model, catalog("abelian_2").frame.fields(), w), DimensionMismatch);
  std::vector<VectorField> flat{VectorField::coordinate(3, 0), VectorField::coordinate(3, 1), VectorField::coordinate(3, 2)};
  CHECK_THROWS_AS(convert_nilpotent_approx(model, flat, w), ShapeError);
}

TEST_CASE("coordinate changes compose and invert") {
  auto g = rng(55);
  const Frame f = catalog("engel_4").frame.at(Point{1, 2, 0, -1});
  const CoordinateChange eps = epsilon(f);
  REQUIRE(eps.has_exact_inverse());
  CHECK(compose(eps.inverse(), eps.as_polymap()) == PolyMap::identity(4));
  const auto& w = eps.weights();
  const PolyMap h = random_homogeneous_unipotent(g, w, true);
  const CoordinateChange c = eps.then(h);
  CHECK(c.as_polymap() == compose(h, eps.as_polymap()));
  const Point x = random_point(g, 4);
  CHECK(c.apply(x) == h.evaluate(eps.apply(x)));
}

TEST_CASE("from_nonlinear splits weight nondecreasing parts") {
  const WeightVector w({1, 1, 2});
  PolyMap n = PolyMap::identity(3);
  n[0] += mono(3, {0, 0, 1});
  n[2] += mono(3, {1, 1, 0});
  const auto c = CoordinateChange::from_nonlinear(AffineMap::identity(3), n, w);
  CHECK(c.nonlinear() == n);
}
