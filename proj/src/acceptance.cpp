#include "carnot/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "carnot/catalog.hpp"
#include "carnot/coordinates.hpp"
#include "carnot/kernels.hpp"
#include "carnot/random.hpp"
#include "carnot/verify.hpp"

namespace carnot {

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome check(bool ok, const std::string& failure, Outcome& out) {
  if (!ok && out.pass) {
    out.pass = false;
    out.detail = failure;
  }
  return out;
}

std::string str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

PolyMap dilation_map(const Rational& t, const WeightVector& w) {
  const std::size_t n = w.size();
  PolyMap d = PolyMap::zero(n, n);
  for (std::size_t k = 0; k < n; ++k) d[k] = Poly::variable(n, k) * power(t, w[k]);
  return d;
}

std::vector<Point> base_points(Rng& rng, const Frame& frame, int extra) {
  std::vector<Point> pts{frame.base_point()};
  for (int i = 0; i < extra; ++i) pts.push_back(random_point(rng, frame.dim(), 3, 3));
  return pts;
}

Outcome group_axioms(Rng& rng) {
  Outcome out;
  int checked = 0;
  for (const auto& name : catalog_algebra_names()) {
    const GroupLaw g(*catalog(name).algebra);
    const std::size_t n = g.dim();
    const Point zero = zero_point(n);
    for (int i = 0; i < 100; ++i) {
      const Point x = random_point(rng, n), y = random_point(rng, n), z = random_point(rng, n);
      check(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)), name + ": associativity fails", out);
      check(g.multiply(x, zero) == x && g.multiply(zero, x) == x, name + ": 0 is not a unit", out);
      check(g.multiply(x, group_inverse(x)) == zero && g.multiply(group_inverse(x), x) == zero,
            name + ": -x is not the inverse", out);
      ++checked;
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " triples over 5 algebras";
  return out;
}

Outcome dilation_automorphism(Rng& rng) {
  Outcome out;
  for (const auto& name : catalog_algebra_names()) {
    const GroupLaw g(*catalog(name).algebra);
    const auto& w = g.algebra().weights();
    for (int i = 0; i < 20; ++i) {
      const Point x = random_point(rng, g.dim()), y = random_point(rng, g.dim());
      Rational t;
      do t = random_rational(rng); while (t == 0);
      check(dilate(g.multiply(x, y), t, w) == g.multiply(dilate(x, t, w), dilate(y, t, w)),
            name + ": dilation is not an automorphism at t=" + to_string(t), out);
    }
  }
  if (out.pass) out.detail = "20 samples x 5 algebras";
  return out;
}

Outcome exp_identity() {
  Outcome out;
  for (const auto& name : catalog_algebra_names()) {
    const auto l = *catalog(name).algebra;
    check(exp_map(left_invariant_fields(l), l.weights()) == PolyMap::identity(l.dim()), name + ": exp is not the identity",
          out);
  }
  if (out.pass) out.detail = "5 algebras";
  return out;
}

Outcome bracket_table() {
  Outcome out;
  int pairs = 0;
  for (const auto& name : catalog_algebra_names()) {
    const auto l = *catalog(name).algebra;
    const auto x = left_invariant_fields(l);
    const std::size_t n = l.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        VectorField expected = VectorField::zero(n);
        for (std::size_t k = 0; k < n; ++k) expected += l.get(i, j, k) * x[k];
        check(bracket(x[i], x[j]) == expected,
              name + ": [X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + "] mismatch", out);
        ++pairs;
      }
  }
  if (out.pass) out.detail = std::to_string(pairs) + " brackets";
  return out;
}

Outcome psi_orders(Rng& rng) {
  Outcome out;
  int frames = 0;
  for (const auto& name : catalog_names()) {
    const Frame base = catalog(name).frame;
    for (const auto& a : base_points(rng, base, 2)) {
      const auto pipeline = epsilon_pipeline(base.at(a));
      const Frame& f = pipeline.privileged_frame;
      const auto& w = f.weights();
      for (std::size_t k = 0; k < f.dim(); ++k)
        check(function_order(Poly::variable(f.dim(), k), f, w.step() + 1) == w[k],
              name + " at " + str(a) + ": order of x" + std::to_string(k + 1) + " differs from w_k", out);
      ++frames;
    }
  }
  if (out.pass) out.detail = std::to_string(frames) + " frame/base-point pairs";
  return out;
}

Outcome epsilon_carnot(Rng& rng) {
  Outcome out;
  int frames = 0;
  for (const auto& name : catalog_names()) {
    const Frame base = catalog(name).frame;
    for (const auto& a : base_points(rng, base, 3)) {
      const FrameContext ctx(base.at(a), name);
      const auto r = check_carnot(ctx, ctx.epsilon());
      check(r.pass, name + " at " + str(a) + ": " + (r.witnesses.empty() ? "" : r.witnesses[0].identity), out);
      ++frames;
    }
  }
  if (out.pass) out.detail = std::to_string(frames) + " frame/base-point pairs";
  return out;
}

Outcome group_law_identity(Rng& rng) {
  Outcome out;
  const auto h3 = *catalog("heisenberg_3").algebra;
  const Point v = epsilon(Frame(h3.weights(), Point{1, 2, 3}, left_invariant_fields(h3))).apply(Point{4, 6, 10});
  check(v == Point{3, 4, 8}, "h3: eps_(1,2,3)(4,6,10) = " + str(v), out);
  int count = 0;
  for (const char* name : {"heisenberg_3", "engel_4"}) {
    const auto l = *catalog(name).algebra;
    for (int i = 0; i < 5; ++i) {
      const Point a = random_point(rng, l.dim());
      check(group_chart_check(l, a).pass, std::string(name) + ": eps_a != (-a).x at a=" + str(a), out);
      ++count;
    }
  }
  if (out.pass) out.detail = "eps_(1,2,3)(4,6,10) = (3,4,8); " + std::to_string(count) + " random a";
  return out;
}

Outcome quadratic_coefficients(Rng& rng) {
  Outcome out;
  auto expected_quadratic = [](const Frame& f) {
    const std::size_t n = f.dim();
    const auto& w = f.weights();
    const Point zero = zero_point(n);
    std::vector<Poly> q(n, Poly(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (w[i] + w[j] != w[k]) continue;
          const Rational c = -Rational(1, 4) * (f[j][k].derivative(i).evaluate(zero) + f[i][k].derivative(j).evaluate(zero));
          q[k] += Poly::monomial(n, MultiIndex::unit(i) + MultiIndex::unit(j), c);
        }
    return q;
  };
  auto quadratic_part = [](const PolyMap& m) {
    std::vector<Poly> q;
    for (const auto& p : m.components()) {
      Poly part(p.nvars());
      for (const auto& [alpha, c] : p.terms())
        if (alpha.degree() == 2) part.add_term(alpha, c);
      q.push_back(std::move(part));
    }
    return q;
  };
  for (int i = 0; i < 20; ++i) {
    const Frame f = random_adapted_step2_frame(rng, 2 + i % 2, 1 + i % 2);
    const auto pipeline = epsilon_pipeline(f);
    check(quadratic_part(pipeline.log) == expected_quadratic(f), "random step-2 frame " + std::to_string(i), out);
  }
  const std::size_t n = 3;
  std::vector<VectorField> hx{VectorField::coordinate(n, 0), VectorField::coordinate(n, 1), VectorField::coordinate(n, 2)};
  hx[1][2] = Poly::variable(n, 0);
  const Frame heis(WeightVector({1, 1, 2}), zero_point(n), hx);
  const PolyMap phi = epsilon_pipeline(heis).log;
  PolyMap expected = PolyMap::identity(n);
  expected[2] -= Rational(1, 2) * Poly::monomial(n, MultiIndex(std::vector<int>{1, 1, 0}));
  check(phi == expected, "Heisenberg manifold frame: phi_3 = " + to_string(phi[2]), out);
  if (out.pass) out.detail = "20 random frames; phi = (x1, x2, x3 - x1*x2/2)";
  return out;
}

Outcome rescaling(Rng& rng) {
  Outcome out;
  std::vector<Frame> frames;
  for (const char* name : {"heisenberg_3", "perturbed_heisenberg_3", "engel_4", "perturbed_engel_4", "step3_filiform_5"})
    frames.push_back(catalog(name).frame);
  for (int i = 0; i < 3; ++i) frames.push_back(random_adapted_step2_frame(rng, 2, 1));
  int count = 0;
  for (const auto& f : frames) {
    const auto& w = f.weights();
    for (const Rational& t : {Rational(1, 2), Rational(1, 3), Rational(2)}) {
      const Point y = random_point(rng, f.dim(), 2, 3);
      std::vector<VectorField> hat;
      for (std::size_t j = 0; j < f.dim(); ++j) hat.push_back(power(t, w[j]) * rescale(f[j], t, w));
      const PolyMap lhs = epsilon(Frame(w, y, hat)).as_polymap();
      const PolyMap rhs = compose(dilation_map(1 / t, w),
                                  compose(epsilon(f.at(dilate(y, t, w))).as_polymap(), dilation_map(t, w)));
      check(lhs == rhs, "rescaling identity fails at t=" + to_string(t) + ", y=" + str(y), out);
      ++count;
    }
  }
  if (out.pass) out.detail = std::to_string(count) + " (frame, t, y) cases";
  return out;
}

std::vector<std::vector<double>> double_directions(Rng& rng, std::size_t n, int count) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < count; ++i) dirs.push_back(to_double(random_unit_direction(rng, n)));
  return dirs;
}

Outcome first_kind(Rng& rng) {
  Outcome out;
  int exact = 0;
  for (const auto& name : catalog_names()) {
    const Frame base = catalog(name).frame;
    for (const auto& a : base_points(rng, base, 2)) {
      const auto r = first_kind_check_exact(FrameContext(base.at(a), name));
      check(r.pass, name + " at " + str(a) + ": " + (r.witnesses.empty() ? "" : r.witnesses[0].residual), out);
      ++exact;
    }
  }
  const FrameContext ctx(catalog("perturbed_heisenberg_3").frame, "perturbed_heisenberg_3");
  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i) grid.push_back(std::ldexp(1.0, -i));
  const auto r = first_kind_check_numeric(ctx, double_directions(rng, 3, 8), grid);
  double worst = INFINITY;
  bool any_inexact = false;
  for (const auto& d : r.scaling.front().second.directions)
    if (!d.exact) {
      worst = std::min(worst, d.slope);
      any_inexact = true;
    }
  check(r.pass && any_inexact, "numeric perturbed_heisenberg_3: min slope " + std::to_string(worst), out);
  if (out.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", worst);
    out.detail = std::to_string(exact) + " exact residuals; numeric min slope " + buf;
  }
  return out;
}

Outcome second_kind() {
  Outcome out;
  for (const char* name : {"heisenberg_3", "engel_4"}) {
    const FrameContext ctx(catalog(name).frame, name);
    const auto chart = canonical_second_kind(ctx.frame());
    const auto carnot = check_carnot(ctx, chart);
    const auto priv = check_privileged(ctx, chart);
    check(!carnot.pass, std::string(name) + ": second-kind chart passes check_carnot", out);
    check(priv.pass, std::string(name) + ": second-kind chart fails check_privileged", out);
    const auto& w = ctx.frame().weights();
    const PolyMap dev = compose(chart.as_polymap(), ctx.epsilon().inverse()) - PolyMap::identity(ctx.frame().dim());
    bool weight_exact = false;
    for (std::size_t k = 0; k < dev.size(); ++k) {
      const Poly low = dev[k].truncated(w[k], w);
      for (const auto& [alpha, c] : low.terms()) {
        check(w.weighted_degree(alpha) == w[k], std::string(name) + ": witness monomial below weight w_k", out);
        weight_exact = true;
      }
    }
    check(weight_exact, std::string(name) + ": no witness of weight w_k", out);
    if (std::string(name) == "heisenberg_3") {
      bool found = false;
      for (const auto& wt : carnot.witnesses) found |= wt.residual == "x1*x2/2 in component 3";
      check(found, "heisenberg_3: witness x1*x2/2 in component 3 missing", out);
    }
  }
  if (out.pass) out.detail = "h3 witness x1*x2/2 in component 3; engel_4 fails Carnot, both privileged";
  return out;
}

Outcome osculation(Rng& rng) {
  Outcome out;
  std::ostringstream detail;
  for (const auto& name : {"heisenberg_3", "engel_4", "step3_filiform_5", "perturbed_heisenberg_3", "perturbed_engel_4"}) {
    const auto entry = catalog(name);
    const FrameContext ctx(entry.frame, name);
    OsculationOptions options;
    for (int i = 0; i < 8; ++i) options.directions.push_back(random_unit_direction(rng, 2 * entry.frame.dim()));
    const auto r = osculation_report(ctx, ctx.epsilon(), options);
    bool all_exact = true;
    double worst = INFINITY;
    for (const auto& [label, s] : r.scaling)
      for (const auto& d : s.directions) {
        all_exact &= d.exact;
        if (!d.exact) worst = std::min(worst, d.slope);
      }
    check(r.pass, std::string(name) + ": " + (r.witnesses.empty() ? "" : r.witnesses[0].residual), out);
    if (entry.algebra) {
      check(all_exact, std::string(name) + ": residual of a group frame is not identically 0", out);
      detail << name << " exact; ";
    } else {
      check(!all_exact, std::string(name) + ": perturbed frame has zero residual", out);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", worst);
      detail << name << " min slope " << buf << "; ";
    }
  }
  if (out.pass) out.detail = detail.str();
  return out;
}

Outcome generators(Rng& rng) {
  Outcome out;
  int priv = 0, carn = 0, adversarial = 0;
  for (const auto& name : catalog_names()) {
    const FrameContext ctx(catalog(name).frame, name);
    const auto& w = ctx.frame().weights();
    const auto& pipe = ctx.pipeline();
    const CoordinateChange psi_change(pipe.linear.change.affine(), pipe.psi, PolyMap::identity(w.size()), w);
    for (int i = 0; i < 50; ++i) {
      const CoordinateChange& base = i % 2 == 0 ? psi_change : ctx.epsilon();
      const auto v = generate_privileged_variant(base, random_homogeneous_unipotent(rng, w),
                                                 random_ow_perturbation(rng, w, 1, 1));
      check(check_privileged(ctx, v).pass, name + ": privileged variant " + std::to_string(i) + " rejected", out);
      ++priv;
      const auto c = generate_carnot_variant(ctx.epsilon(), random_ow_perturbation(rng, w, 1, 1));
      check(check_carnot(ctx, c).pass, name + ": Carnot variant " + std::to_string(i) + " rejected", out);
      ++carn;
    }
  }
  const std::vector<std::string> stepped{"heisenberg_3", "heisenberg_5", "engel_4", "step3_filiform_5",
                                         "perturbed_heisenberg_3", "perturbed_engel_4"};
  for (int i = 0; i < 10; ++i) {
    const auto& name = stepped[i % stepped.size()];
    const FrameContext ctx(catalog(name).frame, name);
    const auto& w = ctx.frame().weights();
    const PolyMap h = random_homogeneous_unipotent(rng, w, true);
    const auto v = ctx.epsilon().then(h);
    check(!check_carnot(ctx, v).pass, name + ": homogeneous composition kept the Carnot verdict", out);
    check(check_privileged(ctx, v).pass, name + ": homogeneous composition lost privilege", out);
    ++adversarial;
  }
  if (out.pass)
    out.detail = std::to_string(priv) + " privileged, " + std::to_string(carn) + " Carnot, " +
                 std::to_string(adversarial) + " adversarial";
  return out;
}

Outcome flow_agreement(Rng& rng) {
  Outcome out;
  const std::vector<WeightVector> shapes{WeightVector({1, 1, 2}), WeightVector({1, 1, 2, 3}),
                                         WeightVector({1, 1, 2, 3, 3}), WeightVector({1, 1, 1, 1, 2}),
                                         WeightVector({1, 2, 3, 4})};
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const WeightVector& w = shapes[i % shapes.size()];
    const std::size_t n = w.size();
    const auto fields = random_triangular_fields(rng, w, 3);
    auto bounded = [&](std::size_t m) {
      Point p = random_unit_direction(rng, m);
      const Rational s = random_rational(rng, 4, 4);
      for (auto& v : p) v *= (s < 0 ? Rational(-s) : s) / 4;
      return p;
    };
    const Point y = bounded(n), xi = bounded(n);
    Rational T(std::uniform_int_distribution<int>(1, 8)(rng), 8);
    const Point exact = exact_flow_at(fields, w, y, xi).evaluate(Point{T});
    std::vector<CompiledField> compiled;
    for (const auto& f : fields) compiled.emplace_back(f);
    const auto numeric = serial::batch_flows(compiled, {{to_double(y), to_double(xi), T.get_d()}}, 1e-3).front();
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(numeric[k] - exact[k].get_d()));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |RK4 - exact| = %.2e", worst);
  check(worst <= 1e-9, buf, out);
  if (out.pass) out.detail = std::string("50 flows, ") + buf;
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Rng rng(seed);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Dynkin group axioms", [&] { return group_axioms(rng); }},
      {"dilations are group automorphisms", [&] { return dilation_automorphism(rng); }},
      {"exp of the canonical basis is the identity", [] { return exp_identity(); }},
      {"left-invariant bracket table", [] { return bracket_table(); }},
      {"psi coordinates are privileged", [&] { return psi_orders(rng); }},
      {"eps_a passes check_carnot", [&] { return epsilon_carnot(rng); }},
      {"eps_a(x) = (-a).x on group frames", [&] { return group_law_identity(rng); }},
      {"log_map quadratic coefficients", [&] { return quadratic_coefficients(rng); }},
      {"rescaling equivariance", [&] { return rescaling(rng); }},
      {"canonical coordinates of the 1st kind", [&] { return first_kind(rng); }},
      {"canonical coordinates of the 2nd kind", [] { return second_kind(); }},
      {"osculation by the tangent group", [&] { return osculation(rng); }},
      {"characterization generators", [&] { return generators(rng); }},
      {"RK4 agrees with exact flows", [&] { return flow_agreement(rng); }},
  };
  std::vector<CriterionResult> results;
  int id = 1;
  for (const auto& [title, run] : criteria) {
    CriterionResult r;
    r.id = id++;
    r.title = title;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = run();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", r.seconds);
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + ": " + r.detail + " (" +
         time + ")";
}

}  // namespace carnot
