#include "carnot/verify.hpp"

#include <cmath>
#include <limits>

#include "carnot/kernels.hpp"

namespace carnot {

ScalingReport scaling_report(const std::vector<std::vector<double>>& norms, const std::vector<double>& t_grid, int m) {
  ScalingReport report;
  report.m = m;
  report.t_grid = t_grid;
  for (const auto& row : norms) {
    DirectionSlope d;
    d.norms = row;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0.0) continue;
      const double x = std::log(t_grid[i]);
      const double y = std::log(row[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    if (count == 0) {
      d.exact = true;
      d.slope = std::numeric_limits<double>::infinity();
    } else if (count == 1) {
      d.slope = std::numeric_limits<double>::quiet_NaN();
      report.pass = false;
    } else {
      d.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
      if (!(d.slope >= m - 0.1)) report.pass = false;
    }
    report.directions.push_back(std::move(d));
  }
  return report;
}

ScalingReport ow_scaling_test(const NumericMap& f, const WeightVector& in_w, const WeightVector& out_w, int m,
                              const std::vector<std::vector<double>>& directions, const std::vector<double>& t_grid) {
  std::vector<std::vector<double>> norms;
  for (const auto& d : directions) {
    if (d.size() != in_w.size()) throw DimensionMismatch("ow_scaling_test: direction has wrong length");
    std::vector<double> row;
    for (double t : t_grid) {
      const std::vector<double> v = f(dilate(d, t, in_w));
      if (v.size() != out_w.size()) throw DimensionMismatch("ow_scaling_test: map output has wrong length");
      double s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        const double scaled = v[k] * std::pow(t, -out_w[k]);
        s += scaled * scaled;
      }
      row.push_back(std::sqrt(s));
    }
    norms.push_back(std::move(row));
  }
  return scaling_report(norms, t_grid, m);
}

namespace {

double scaled_norm(const Point& v, const Rational& t, const WeightVector& out_w) {
  if (v.size() != out_w.size()) throw DimensionMismatch("ow_scaling_test: map output has wrong length");
  double s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    const double scaled = Rational(v[k] * power(t, -out_w[k])).get_d();
    s += scaled * scaled;
  }
  return std::sqrt(s);
}

}  // namespace

ScalingReport ow_scaling_test_exact(const ExactMap& f, const WeightVector& in_w, const WeightVector& out_w, int m,
                                    const std::vector<Point>& directions, const std::vector<Rational>& t_grid,
                                    bool parallel) {
  const std::size_t nt = t_grid.size();
  const std::function<double(std::size_t)> sample = [&](std::size_t i) {
    const Point& d = directions[i / nt];
    const Rational& t = t_grid[i % nt];
    return scaled_norm(f(dilate(d, t, in_w)), t, out_w);
  };
  for (const auto& d : directions)
    if (d.size() != in_w.size()) throw DimensionMismatch("ow_scaling_test: direction has wrong length");
  const std::vector<double> flat = parallel ? parallel::map_indices(directions.size() * nt, sample)
                                            : serial::map_indices(directions.size() * nt, sample);
  std::vector<std::vector<double>> norms(directions.size());
  for (std::size_t i = 0; i < flat.size(); ++i) norms[i / nt].push_back(flat[i]);
  std::vector<double> t_double;
  for (const auto& t : t_grid) t_double.push_back(t.get_d());
  return scaling_report(norms, t_double, m);
}

std::vector<Rational> dyadic_grid(int count) {
  std::vector<Rational> grid;
  for (int i = 1; i <= count; ++i) grid.push_back(power(Rational(1, 2), i));
  return grid;
}

FrameContext::FrameContext(Frame frame, std::string id)
    : frame_(std::move(frame)),
      id_(std::move(id)),
      table_(structure_constants_at(frame_)),
      group_(table_.graded),
      target_(left_invariant_fields(group_)),
      pipeline_(epsilon_pipeline(frame_)) {}

namespace {

VerificationReport new_report(const FrameContext& ctx, std::string check) {
  VerificationReport r;
  r.check = std::move(check);
  r.frame_id = ctx.id();
  r.base_point = ctx.frame().base_point();
  return r;
}

std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

/// Fills privileged-check witnesses; returns the pushed frame when it exists.
std::optional<Frame> privileged_into(const FrameContext& ctx, const CoordinateChange& change, VerificationReport& r) {
  const auto& w = ctx.frame().weights();
  const std::size_t n = ctx.frame().dim();
  const Point image = change.apply(ctx.frame().base_point());
  if (image != zero_point(n)) {
    r.fail("change maps the base point to 0", point_string(image));
    return std::nullopt;
  }
  Frame pushed = change.push(ctx.frame());
  for (std::size_t j = 0; j < n; ++j) {
    const std::string name = "X" + std::to_string(j + 1);
    const Point at0 = pushed[j].evaluate(zero_point(n));
    Point unit = zero_point(n);
    unit[j] = 1;
    if (at0 != unit) r.fail(name + "(0) = d" + std::to_string(j + 1), point_string(at0));
    const auto parts = expand(pushed[j], w);
    if (parts.empty() || parts.begin()->first < -w[j]) {
      const std::string detail =
          parts.empty() ? "0" : to_string(parts.begin()->second) + " (degree " + std::to_string(parts.begin()->first) + ")";
      r.fail(name + " has weight -" + std::to_string(w[j]), detail);
    } else if (parts.begin()->first != -w[j]) {
      r.fail(name + " has a nonzero part of degree -" + std::to_string(w[j]), "0");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto order = function_order(Poly::variable(n, k), pushed, w.step() + 1);
    if (order != w[k])
      r.fail("order of x" + std::to_string(k + 1) + " is " + std::to_string(w[k]),
             order ? std::to_string(*order) : ">= " + std::to_string(w.step() + 1));
  }
  return pushed;
}

}  // namespace

VerificationReport check_privileged(const FrameContext& ctx, const CoordinateChange& change) {
  VerificationReport r = new_report(ctx, "privileged");
  privileged_into(ctx, change, r);
  return r;
}

VerificationReport check_carnot(const FrameContext& ctx, const CoordinateChange& change) {
  VerificationReport r = new_report(ctx, "carnot");
  const auto pushed = privileged_into(ctx, change, r);
  if (!r.pass || !pushed) return r;
  const auto& w = ctx.frame().weights();
  const std::size_t n = ctx.frame().dim();
  bool mismatch = false;
  for (std::size_t j = 0; j < n; ++j) {
    const VectorField diff = homogeneous_part((*pushed)[j], -w[j], w) - ctx.target()[j];
    if (!diff.is_zero()) {
      mismatch = true;
      r.fail("model field of X" + std::to_string(j + 1) + " equals the left-invariant field", to_string(diff));
    }
  }
  if (!mismatch) return r;
  const PolyMap deviation = compose(change.as_polymap(), ctx.epsilon().inverse()) - PolyMap::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Poly low = deviation[k].truncated(w[k], w);
    if (!low.is_zero()) r.fail("deviation from eps_a", to_string(low) + " in component " + std::to_string(k + 1));
  }
  return r;
}

bool is_homogeneous_unipotent(const PolyMap& m, const WeightVector& w) {
  if (m.size() != w.size() || m.nvars() != w.size()) return false;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Poly rest = m[k] - Poly::variable(m.nvars(), k);
    for (const auto& [alpha, c] : rest.terms())
      if (alpha.degree() < 2 || w.weighted_degree(alpha) != w[k]) return false;
  }
  return true;
}

namespace {

void require_perturbation(const PolyMap& perturbation, const WeightVector& w) {
  if (!ow_class_poly(perturbation, 1, w)) throw ShapeError("perturbation is not O_w(|x|^{w+1})");
  for (const auto& p : perturbation.components())
    for (const auto& [alpha, c] : p.terms())
      if (alpha.degree() < 2) throw ShapeError("perturbation has a constant or linear term");
}

}  // namespace

CoordinateChange generate_privileged_variant(const CoordinateChange& change, const PolyMap& hom,
                                             const PolyMap& perturbation) {
  const auto& w = change.weights();
  if (!is_homogeneous_unipotent(hom, w)) throw ShapeError("hom_diffeo is not w-homogeneous with identity differential");
  require_perturbation(perturbation, w);
  return change.then(hom + perturbation);
}

CoordinateChange generate_carnot_variant(const CoordinateChange& change, const PolyMap& perturbation) {
  const auto& w = change.weights();
  require_perturbation(perturbation, w);
  return change.then(PolyMap::identity(w.size()) + perturbation);
}

VerificationReport osculation_report(const FrameContext& ctx, const CoordinateChange& carnot_change,
                                     const OsculationOptions& options) {
  VerificationReport r = new_report(ctx, "osculation");
  const auto& w = ctx.frame().weights();
  const std::size_t n = ctx.frame().dim();
  const Frame local = carnot_change.push(ctx.frame());
  const GroupLaw group(structure_constants_at(local).graded);
  const std::size_t nt = options.t_grid.size();

  struct Sample {
    Point forward;
    Point backward;
  };
  const std::function<Sample(std::size_t)> sample = [&](std::size_t i) {
    const Point& d = options.directions[i / nt];
    const Rational& t = options.t_grid[i % nt];
    const Point x = dilate(std::span<const Rational>(d).first(n), t, w);
    const Point y = dilate(std::span<const Rational>(d).subspan(n), t, w);
    const CoordinateChange eps = epsilon(local.at(y));
    Sample s;
    s.forward = eps.apply(x);
    const Point fwd_ref = group.multiply(group_inverse(y), x);
    s.backward = eps.inverse().evaluate(x);
    const Point bwd_ref = group.multiply(y, x);
    for (std::size_t k = 0; k < n; ++k) {
      s.forward[k] -= fwd_ref[k];
      s.backward[k] -= bwd_ref[k];
    }
    return s;
  };
  for (const auto& d : options.directions)
    if (d.size() != 2 * n) throw DimensionMismatch("osculation: directions live in R^{2n}");
  const std::size_t count = options.directions.size() * nt;
  const std::vector<Sample> samples =
      options.parallel ? parallel::map_indices(count, sample) : serial::map_indices(count, sample);

  std::vector<double> t_double;
  for (const auto& t : options.t_grid) t_double.push_back(t.get_d());
  auto norms_of = [&](auto member) {
    std::vector<std::vector<double>> norms(options.directions.size());
    for (std::size_t i = 0; i < count; ++i) {
      const Point& v = samples[i].*member;
      const Rational& t = options.t_grid[i % nt];
      double s = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (v[k] == 0) continue;
        const double scaled = Rational(v[k] * power(t, -w[k])).get_d();
        s += scaled * scaled;
      }
      norms[i / nt].push_back(std::sqrt(s));
    }
    return norms;
  };
  const ScalingReport fwd = scaling_report(norms_of(&Sample::forward), t_double, 1);
  const ScalingReport bwd = scaling_report(norms_of(&Sample::backward), t_double, 1);
  auto add = [&](const std::string& name, const ScalingReport& s) {
    r.scaling.emplace_back(name, s);
    for (std::size_t d = 0; d < s.directions.size(); ++d)
      if (!s.directions[d].exact && !(s.directions[d].slope >= s.m - 0.1))
        r.fail(name + " = O(|(x,y)|^{w+1})",
               "direction " + std::to_string(d + 1) + " slope " + std::to_string(s.directions[d].slope));
  };
  add("eps_y(x) - (-y).x", fwd);
  add("eps_y^-1(x) - y.x", bwd);
  return r;
}

VerificationReport group_chart_check(const StructureConstants& l, const Point& a) {
  const GroupLaw group(l);
  const Frame frame(l.weights(), a, left_invariant_fields(group));
  VerificationReport r;
  r.check = "group-chart";
  r.base_point = a;
  const PolyMap eps = epsilon(frame).as_polymap();
  const PolyMap translation = group.left_translation(group_inverse(a));
  const PolyMap diff = eps - translation;
  for (std::size_t k = 0; k < diff.size(); ++k)
    if (!diff[k].is_zero()) r.fail("eps_a(x) = (-a).x", to_string(diff[k]) + " in component " + std::to_string(k + 1));
  return r;
}

VerificationReport first_kind_check_exact(const FrameContext& ctx) {
  VerificationReport r = new_report(ctx, "first-kind");
  const auto& w = ctx.frame().weights();
  const std::size_t n = ctx.frame().dim();
  const PolyMap residual = compose(ctx.epsilon().as_polymap(), first_kind_forward(ctx.frame())) - PolyMap::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Poly low = residual[k].truncated(w[k], w);
    if (!low.is_zero())
      r.fail("eps_a o exp_X - id = O_w(|x|^{w+1})", to_string(low) + " in component " + std::to_string(k + 1));
  }
  return r;
}

VerificationReport first_kind_check_numeric(const FrameContext& ctx, const std::vector<std::vector<double>>& directions,
                                            const std::vector<double>& t_grid, double step) {
  VerificationReport r = new_report(ctx, "first-kind-numeric");
  const auto& w = ctx.frame().weights();
  const std::size_t n = ctx.frame().dim();
  const PolyMap eps = ctx.epsilon().as_polymap();
  std::vector<CompiledPoly> eps_c;
  for (const auto& p : eps.components()) eps_c.emplace_back(p);
  std::vector<CompiledField> fields;
  for (const auto& f : ctx.frame().fields()) fields.emplace_back(f);
  const std::vector<double> a = to_double(ctx.frame().base_point());

  std::vector<FlowJob> jobs;
  for (const auto& d : directions)
    for (double t : t_grid) jobs.push_back({a, dilate(d, t, w), 1.0});
  const auto ends = parallel::batch_flows(fields, jobs, step);
  std::vector<std::vector<double>> norms(directions.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double t = t_grid[i % t_grid.size()];
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double res = eps_c[k].evaluate(ends[i].data()) - jobs[i].xi[k];
      const double scaled = res * std::pow(t, -w[k]);
      s += scaled * scaled;
    }
    norms[i / t_grid.size()].push_back(std::sqrt(s));
  }
  const ScalingReport rep = scaling_report(norms, t_grid, 1);
  r.scaling.emplace_back("eps_a o exp_X - id", rep);
  for (std::size_t d = 0; d < rep.directions.size(); ++d)
    if (!rep.directions[d].exact && !(rep.directions[d].slope >= 0.9))
      r.fail("eps_a o exp_X - id = O_w(|x|^{w+1})",
             "direction " + std::to_string(d + 1) + " slope " + std::to_string(rep.directions[d].slope));
  return r;
}

}  // namespace carnot
