#include "doctest.h"
#include "support.hpp"

#include "carnot/catalog.hpp"
#include "carnot/json_io.hpp"

using namespace carnot;
using namespace carnot::test;

TEST_CASE("polynomials serialize in weighted canonical order") {
  const WeightVector w({1, 1, 2});
  const Poly p = var(3, 2) + mono(3, {1, 1, 0}, Rational(-1, 2)) + var(3, 0);
  const Json j = poly_to_json(p, &w);
  CHECK(j.dump() ==
        R"({"vars":3,"terms":[{"exp":[1,0,0],"coef":"1"},{"exp":[1,1,0],"coef":"-1/2"},{"exp":[0,0,1],"coef":"1"}]})");
  CHECK(poly_from_json(j) == p);
}

TEST_CASE("catalog artifacts round trip bit exactly") {
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    const Json f = frame_to_json(e.frame);
    CHECK(frame_from_json(f) == e.frame);
    CHECK(frame_to_json(frame_from_json(Json::parse(f.dump()))).dump() == f.dump());
    if (e.algebra) {
      const Json a = algebra_to_json(*e.algebra);
      CHECK(algebra_from_json(a) == *e.algebra);
      CHECK(algebra_to_json(algebra_from_json(a)).dump() == a.dump());
    }
    const CoordinateChange c = epsilon(e.frame.at(random_point(*std::make_unique<Rng>(5), e.frame.dim())));
    const Json cj = change_to_json(c);
    CHECK(change_from_json(Json::parse(cj.dump()), e.frame.weights()) == c);
    CHECK(change_to_json(change_from_json(cj, e.frame.weights())).dump() == cj.dump());
  }
}

TEST_CASE("changes with both factors keep them") {
  const WeightVector w({1, 1, 2});
  PolyMap n = PolyMap::identity(3);
  n[0] += mono(3, {0, 0, 1});
  n[2] += mono(3, {1, 1, 0});
  const auto c = CoordinateChange::from_nonlinear(AffineMap::identity(3), n, w);
  CHECK(change_from_json(change_to_json(c), w) == c);
}

TEST_CASE("malformed input is a schema error") {
  const auto parse_poly = [](const char* s) { return poly_from_json(Json::parse(s)); };
  CHECK_THROWS_AS(parse_poly(R"({"vars":2,"terms":[{"exp":[1,0],"coef":"1.5"}]})"), SchemaError);
  CHECK_THROWS_AS(parse_poly(R"({"vars":2,"terms":[{"exp":[1,0],"coef":"1"},{"exp":[1,0],"coef":"2"}]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_poly(R"({"vars":2,"terms":[{"exp":[1,0,0],"coef":"1"}]})"), SchemaError);
  CHECK_THROWS_AS(parse_poly(R"({"vars":2})"), SchemaError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"weights":[1,1,2],"brackets":[{"i":1,"j":1,"k":3,"coef":"1"}]})")),
                  SchemaError);
  CHECK_THROWS_AS(weights_from_json(Json::parse("[2,1]")), SchemaError);
  CHECK_THROWS_AS(check_schema_tag(Json::parse(R"({"schema":"carnot-kit/0"})")), SchemaError);
  CHECK_NOTHROW(check_schema_tag(Json::parse(R"({"schema":"carnot-kit/1"})")));
}

TEST_CASE("reports carry verdicts and witnesses") {
  const FrameContext ctx(catalog("heisenberg_3").frame, "heisenberg_3");
  const Json j = report_to_json(check_carnot(ctx, canonical_second_kind(ctx.frame())));
  CHECK(j.at("verdict") == "fail");
  CHECK(j.at("witnesses").back().at("residual") == "x1*x2/2 in component 3");
}
