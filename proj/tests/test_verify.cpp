#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "carnot/catalog.hpp"
#include "carnot/verify.hpp"

using namespace carnot;
using namespace carnot::test;

TEST_CASE("scaling report") {
  const std::vector<double> t{0.5, 0.25, 0.125, 0.0625};
  SUBCASE("linear decay passes with m = 1") {
    const auto r = scaling_report({{0.5, 0.25, 0.125, 0.0625}}, t, 1);
    CHECK(r.pass);
    CHECK(r.directions[0].slope == doctest::Approx(1.0));
  }
  SUBCASE("constant residual fails") {
    CHECK_FALSE(scaling_report({{1, 1, 1, 1}}, t, 1).pass);
  }
  SUBCASE("identically zero is exact") {
    const auto r = scaling_report({{0, 0, 0, 0}}, t, 1);
    CHECK(r.pass);
    CHECK(r.directions[0].exact);
  }
  SUBCASE("a single nonzero sample has no slope") {
    const auto r = scaling_report({{0, 0, 1e-3, 0}}, t, 1);
    CHECK_FALSE(r.pass);
    CHECK(std::isnan(r.directions[0].slope));
  }
}

TEST_CASE("exact and numeric scaling tests agree on a polynomial") {
  const WeightVector w({1, 1, 2});
  const PolyMap f(3, {mono(3, {2, 0, 0}), var(3, 2) * var(3, 0), mono(3, {1, 1, 1})});
  auto g = rng(61);
  std::vector<Point> dirs;
  std::vector<std::vector<double>> ddirs;
  for (int i = 0; i < 4; ++i) {
    dirs.push_back(random_unit_direction(g, 3));
    ddirs.push_back(to_double(dirs.back()));
  }
  const auto grid = dyadic_grid(8);
  std::vector<double> dgrid;
  for (const auto& t : grid) dgrid.push_back(t.get_d());
  const auto exact = ow_scaling_test_exact([&](const Point& x) { return f.evaluate(x); }, w, w, 1, dirs, grid);
  const auto numeric = ow_scaling_test(
      [&](std::span<const double> x) {
        std::vector<double> out;
        for (const auto& p : f.components()) out.push_back(p.evaluate(x));
        return out;
      },
      w, w, 1, ddirs, dgrid);
  CHECK(exact.pass);
  CHECK(numeric.pass);
  for (std::size_t d = 0; d < dirs.size(); ++d)
    CHECK(exact.directions[d].slope == doctest::Approx(numeric.directions[d].slope).epsilon(1e-9));
}

TEST_CASE("group frames are Carnot in their own coordinates") {
  for (const auto& name : catalog_algebra_names()) {
    const FrameContext ctx(catalog(name).frame, name);
    const auto id = CoordinateChange::identity(ctx.frame().weights(), ctx.frame().base_point());
    CHECK(check_privileged(ctx, id).pass);
    CHECK(check_carnot(ctx, id).pass);
  }
}

TEST_CASE("a homogeneous change keeps privilege but loses the Carnot property") {
  const FrameContext ctx(catalog("heisenberg_3").frame, "heisenberg_3");
  PolyMap h = PolyMap::identity(3);
  h[2] += mono(3, {1, 1, 0});
  const auto v = generate_privileged_variant(ctx.epsilon(), h, PolyMap::zero(3, 3));
  CHECK(check_privileged(ctx, v).pass);
  const auto r = check_carnot(ctx, v);
  CHECK_FALSE(r.pass);
  CHECK(r.witnesses.back().residual == "x1*x2 in component 3");
}

TEST_CASE("non privileged coordinates are reported") {
  const FrameContext ctx(catalog("heisenberg_3").frame, "heisenberg_3");
  const auto& w = ctx.frame().weights();
  // x3 -> x3 + x1: the order of the new x3 drops to 1
  Matrix m = identity_matrix(3);
  m[2][0] = 1;
  const auto c = CoordinateChange::affine_only(AffineMap{m, zero_point(3)}, w);
  CHECK_FALSE(check_privileged(ctx, c).pass);
  CHECK_FALSE(check_carnot(ctx, c).pass);
}

TEST_CASE("generators validate their inputs") {
  const FrameContext ctx(catalog("heisenberg_3").frame, "heisenberg_3");
  PolyMap bad_hom = PolyMap::identity(3);
  bad_hom[2] += mono(3, {1, 0, 1});
  CHECK_THROWS_AS(generate_privileged_variant(ctx.epsilon(), bad_hom, PolyMap::zero(3, 3)), ShapeError);
  PolyMap linear = PolyMap::zero(3, 3);
  linear[0] = var(3, 2);
  CHECK_THROWS_AS(generate_carnot_variant(ctx.epsilon(), linear), ShapeError);
  PolyMap low = PolyMap::zero(3, 3);
  low[2] = mono(3, {1, 1, 0});
  CHECK_THROWS_AS(generate_carnot_variant(ctx.epsilon(), low), ShapeError);
}

TEST_CASE("Carnot coordinates are privileged") {
  auto g = rng(62);
  for (const auto& name : catalog_names()) {
    const FrameContext ctx(catalog(name).frame.at(random_point(g, catalog(name).frame.dim(), 2, 2)), name);
    const auto& w = ctx.frame().weights();
    for (int i = 0; i < 5; ++i) {
      const auto c = generate_carnot_variant(ctx.epsilon(), random_ow_perturbation(g, w));
      if (check_carnot(ctx, c).pass) CHECK(check_privileged(ctx, c).pass);
    }
  }
}

TEST_CASE("group chart identity") {
  auto g = rng(63);
  for (const auto& name : catalog_algebra_names())
    CHECK(group_chart_check(*catalog(name).algebra, random_point(g, catalog(name).frame.dim())).pass);
}

TEST_CASE("osculation is the same serially and in parallel") {
  const FrameContext ctx(catalog("perturbed_heisenberg_3").frame, "perturbed_heisenberg_3");
  auto g = rng(64);
  OsculationOptions options;
  for (int i = 0; i < 3; ++i) options.directions.push_back(random_unit_direction(g, 6));
  options.t_grid = dyadic_grid(6);
  const auto par = osculation_report(ctx, ctx.epsilon(), options);
  options.parallel = false;
  const auto ser = osculation_report(ctx, ctx.epsilon(), options);
  REQUIRE(par.scaling.size() == ser.scaling.size());
  for (std::size_t i = 0; i < par.scaling.size(); ++i)
    for (std::size_t d = 0; d < 3; ++d)
      CHECK(par.scaling[i].second.directions[d].norms == ser.scaling[i].second.directions[d].norms);
}

TEST_CASE("second kind coordinates on engel_4") {
  const FrameContext ctx(catalog("engel_4").frame, "engel_4");
  const auto chart = canonical_second_kind(ctx.frame());
  CHECK(check_privileged(ctx, chart).pass);
  CHECK_FALSE(check_carnot(ctx, chart).pass);
}

TEST_CASE("first kind coordinates pass the exact residual check") {
  for (const auto& name : catalog_names()) CHECK(first_kind_check_exact(FrameContext(catalog(name).frame, name)).pass);
}
