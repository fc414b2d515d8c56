#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <stdexcept>

#include "carnot/kernels.hpp"

using namespace carnot;
using namespace carnot::test;

TEST_CASE("rk4 integrates the exponential") {
  const Rhs rhs = [](const double* x, double* dx) { dx[0] = x[0]; };
  const std::vector<double> y0{1.0};
  CHECK(rk4(rhs, y0, 1.0, 1e-3)[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(rk4(rhs, y0, -1.0, 1e-3)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("compiled polynomials evaluate like the exact ones") {
  const Poly p = mono(3, {2, 1, 0}, Rational(3, 2)) - var(3, 2) + cst(3, 7);
  const std::vector<double> x{0.5, -2.0, 0.25};
  CHECK(CompiledPoly(p).evaluate(x.data()) == doctest::Approx(p.evaluate(x)));
}

TEST_CASE("serial and parallel batch flows agree") {
  auto g = rng(71);
  const WeightVector w({1, 1, 2, 3});
  std::vector<CompiledField> fields;
  for (const auto& f : random_triangular_fields(g, w, 2)) fields.emplace_back(f);
  std::vector<FlowJob> jobs;
  for (int i = 0; i < 64; ++i)
    jobs.push_back({to_double(random_point(g, 4, 1, 2)), to_double(random_point(g, 4, 1, 2)), 0.5});
  CHECK(serial::batch_flows(fields, jobs, 1e-3) == parallel::batch_flows(fields, jobs, 1e-3));
}

TEST_CASE("map_indices keeps order and propagates exceptions") {
  const std::function<int(std::size_t)> sq = [](std::size_t i) { return static_cast<int>(i * i); };
  CHECK(serial::map_indices(100, sq) == parallel::map_indices(100, sq));
  const std::function<int(std::size_t)> boom = [](std::size_t i) -> int {
    if (i == 17) throw std::runtime_error("17");
    return 0;
  };
  CHECK_THROWS_AS(parallel::map_indices(50, boom), std::runtime_error);
}
