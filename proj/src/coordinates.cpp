#include "carnot/coordinates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

#include "carnot/kernels.hpp"

namespace carnot {

AffineMap AffineMap::identity(std::size_t n) { return {identity_matrix(n), zero_point(n)}; }

PolyMap AffineMap::as_polymap() const { return PolyMap::linear(matrix, offset); }

PolyMap AffineMap::inverse_polymap() const {
  PolyMap m = PolyMap::linear(inverse(matrix));
  for (std::size_t k = 0; k < m.size(); ++k) m[k] += Poly::constant(m.nvars(), offset[k]);
  return m;
}

Point AffineMap::apply(std::span<const Rational> x) const {
  if (x.size() != dim()) throw DimensionMismatch("affine map: point has wrong length");
  Point d(x.begin(), x.end());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= offset[k];
  return multiply(matrix, d);
}

CoordinateChange::CoordinateChange(AffineMap affine, PolyMap inner, PolyMap outer, WeightVector w)
    : affine_(std::move(affine)), inner_(std::move(inner)), outer_(std::move(outer)), w_(std::move(w)) {
  const std::size_t n = w_.size();
  if (affine_.matrix.size() != n || affine_.offset.size() != n || !is_square(affine_.matrix))
    throw DimensionMismatch("coordinate change: affine part has wrong shape");
  carnot::inverse(affine_.matrix);
  if (!is_unipotent_triangular(inner_, w_)) throw ShapeError("coordinate change: inner factor is not unipotent triangular");
  if (!is_weight_nondecreasing(outer_, w_) && !is_unipotent_triangular(outer_, w_))
    throw ShapeError("coordinate change: outer factor is neither weight nondecreasing nor unipotent triangular");
}

CoordinateChange CoordinateChange::identity(const WeightVector& w, Point base_point) {
  return affine_only({identity_matrix(w.size()), std::move(base_point)}, w);
}

CoordinateChange CoordinateChange::affine_only(AffineMap affine, WeightVector w) {
  const std::size_t n = w.size();
  return CoordinateChange(std::move(affine), PolyMap::identity(n), PolyMap::identity(n), std::move(w));
}

CoordinateChange CoordinateChange::from_nonlinear(AffineMap affine, const PolyMap& nonlinear, WeightVector w) {
  const std::size_t n = w.size();
  if (nonlinear.size() != n || nonlinear.nvars() != n) throw DimensionMismatch("coordinate change: nonlinear part has wrong shape");
  if (is_unipotent_triangular(nonlinear, w)) return CoordinateChange(std::move(affine), nonlinear, PolyMap::identity(n), w);
  if (is_weight_nondecreasing(nonlinear, w)) return CoordinateChange(std::move(affine), PolyMap::identity(n), nonlinear, w);
  // Peel off low-weight terms: nonlinear = outer o inner with inner unipotent triangular.
  PolyMap outer = nonlinear;
  PolyMap inner = PolyMap::identity(n);
  for (int round = 0; round <= 2 * w.step() + 2; ++round) {
    PolyMap peel = PolyMap::identity(n);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [alpha, c] : outer[k].terms())
        if (w.weighted_degree(alpha) < w[k]) {
          peel[k].add_term(alpha, c);
          any = true;
        }
    if (!any) break;
    outer = compose(outer, invert_unipotent_triangular(peel, w));
    inner = compose(peel, inner);
  }
  if (!is_weight_nondecreasing(outer, w)) throw ShapeError("coordinate change: no polynomial inverse available");
  return CoordinateChange(std::move(affine), std::move(inner), std::move(outer), std::move(w));
}

PolyMap CoordinateChange::nonlinear() const { return compose(outer_, inner_); }

PolyMap CoordinateChange::as_polymap() const { return compose(nonlinear(), affine_.as_polymap()); }

Point CoordinateChange::apply(std::span<const Rational> x) const {
  return outer_.evaluate(inner_.evaluate(affine_.apply(x)));
}

bool CoordinateChange::has_exact_inverse() const { return is_unipotent_triangular(outer_, w_); }

PolyMap CoordinateChange::inverse() const {
  if (!has_exact_inverse()) throw ShapeError("coordinate change has no exact polynomial inverse");
  return compose(affine_.inverse_polymap(),
                 compose(invert_unipotent_triangular(inner_, w_), invert_unipotent_triangular(outer_, w_)));
}

CoordinateChange CoordinateChange::then(const PolyMap& g) const {
  const std::size_t n = dim();
  const bool outer_trivial = outer_ == PolyMap::identity(n);
  if (outer_trivial && is_unipotent_triangular(g, w_)) return CoordinateChange(affine_, compose(g, inner_), outer_, w_);
  if (is_weight_nondecreasing(g, w_)) {
    PolyMap composed = compose(g, outer_);
    if (is_weight_nondecreasing(composed, w_)) return CoordinateChange(affine_, inner_, std::move(composed), w_);
  }
  return from_nonlinear(affine_, compose(g, nonlinear()), w_);
}

Frame CoordinateChange::push(const Frame& frame) const {
  if (!(frame.weights() == w_)) throw DimensionMismatch("coordinate change: frame weights differ");
  const std::size_t n = dim();
  const PolyMap identity = PolyMap::identity(n);
  const PolyMap a = affine_.as_polymap();
  const PolyMap a_inv = affine_.inverse_polymap();
  const bool inner_trivial = inner_ == identity;
  const bool outer_trivial = outer_ == identity;
  const bool outer_exact = !outer_trivial && is_unipotent_triangular(outer_, w_);
  const PolyMap inner_inv = inner_trivial ? identity : invert_unipotent_triangular(inner_, w_);
  PolyMap outer_inv = identity;
  if (outer_exact)
    outer_inv = invert_unipotent_triangular(outer_, w_);
  else if (!outer_trivial)
    outer_inv = invert_perturbed_triangular(outer_, w_, w_.step());
  std::vector<VectorField> fields;
  for (const auto& x : frame.fields()) {
    VectorField y = pushforward(x, a, a_inv);
    if (!inner_trivial) y = pushforward(y, inner_, inner_inv);
    if (outer_exact)
      y = pushforward(y, outer_, outer_inv);
    else if (!outer_trivial)
      y = pushforward_truncated(y, outer_, outer_inv, w_, 0);
    fields.push_back(std::move(y));
  }
  return Frame(w_, apply(frame.base_point()), std::move(fields));
}

Linearization linearize(const Frame& frame) {
  const Matrix m = inverse(transpose(frame.coefficient_matrix(frame.base_point())));
  CoordinateChange change = CoordinateChange::affine_only({m, frame.base_point()}, frame.weights());
  Frame pushed = change.push(frame);
  return {std::move(change), std::move(pushed)};
}

namespace {

/// X^alpha f = X_1^{alpha_1} o ... o X_n^{alpha_n} f (X_n applied first).
Poly apply_multi(const Frame& frame, const std::vector<int>& alpha, Poly f) {
  for (std::size_t j = frame.dim(); j-- > 0;)
    for (int e = 0; e < alpha[j]; ++e) f = frame[j].apply(f);
  return f;
}

/// All alpha with 2 <= |alpha| and <alpha> < bound, ordered by |alpha|.
std::vector<std::vector<int>> psi_indices(const WeightVector& w, int bound) {
  std::vector<std::vector<int>> out;
  const std::size_t n = w.size();
  std::vector<int> alpha(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int weight) -> void {
    if (pos == n) {
      if (std::accumulate(alpha.begin(), alpha.end(), 0) >= 2) out.push_back(alpha);
      return;
    }
    for (int e = 0; weight + e * w[pos] < bound; ++e) {
      alpha[pos] = e;
      self(self, pos + 1, weight + e * w[pos]);
    }
    alpha[pos] = 0;
  };
  rec(rec, 0, 0);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  return out;
}

}  // namespace

PolyMap psi_map(const Frame& adapted) {
  if (!adapted.linearly_adapted()) throw ShapeError("psi: frame is not linearly adapted at 0");
  const std::size_t n = adapted.dim();
  const auto& w = adapted.weights();
  const Point zero = zero_point(n);
  PolyMap psi = PolyMap::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto indices = psi_indices(w, w[k]);
    std::vector<std::pair<MultiIndex, Rational>> found;
    for (const auto& alpha : indices) {
      const MultiIndex mi(alpha);
      Rational rhs = -apply_multi(adapted, alpha, Poly::variable(n, k)).evaluate(zero);
      for (const auto& [beta, a] : found)
        if (beta.degree() < mi.degree()) rhs -= a * apply_multi(adapted, alpha, Poly::monomial(n, beta)).evaluate(zero);
      const Rational a = rhs / mi.factorial();
      if (a != 0) {
        found.emplace_back(mi, a);
        psi[k].add_term(mi, a);
      }
    }
  }
  return psi;
}

namespace {

void check_flow_fields(const std::vector<VectorField>& fields, const WeightVector& w) {
  const std::size_t n = w.size();
  if (fields.size() != n) throw DimensionMismatch("exact_flow: need one field per coordinate");
  for (const auto& x : fields) {
    if (x.dim() != n) throw DimensionMismatch("exact_flow: field has wrong dimension");
    for (std::size_t k = 0; k < n; ++k)
      if (!x[k].uses_only([&](std::size_t l) { return w[l] < w[k]; }))
        throw ShapeError("exact_flow: the d" + std::to_string(k + 1) +
                         " coefficient depends on a variable of weight >= " + std::to_string(w[k]));
  }
}

/// Solves x' = sum_j xi_j X_j(x), x(0) = y by increasing weight; t is variable t_var.
PolyMap solve_flow(const std::vector<VectorField>& fields, const WeightVector& w, const std::vector<Poly>& y,
                   const std::vector<Poly>& xi, std::size_t t_var) {
  const std::size_t n = w.size();
  const std::size_t nv = y.front().nvars();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  PolyMap x = PolyMap::zero(nv, n);
  for (std::size_t k : order) {
    Poly integrand(nv);
    for (std::size_t j = 0; j < n; ++j) {
      if (fields[j][k].is_zero() || xi[j].is_zero()) continue;
      integrand += xi[j] * substitute(fields[j][k], x);
    }
    x[k] = y[k] + integrand.antiderivative(t_var);
  }
  return x;
}

}  // namespace

PolyMap exact_flow(const std::vector<VectorField>& fields, const WeightVector& w) {
  check_flow_fields(fields, w);
  const std::size_t n = w.size();
  const std::size_t nv = 2 * n + 1;
  if (nv > kMaxVars) throw DimensionMismatch("exact_flow: dimension too large");
  std::vector<Poly> y, xi;
  for (std::size_t k = 0; k < n; ++k) {
    y.push_back(Poly::variable(nv, k));
    xi.push_back(Poly::variable(nv, n + k));
  }
  return solve_flow(fields, w, y, xi, 2 * n);
}

PolyMap exact_flow_at(const std::vector<VectorField>& fields, const WeightVector& w, const Point& y, const Point& xi) {
  check_flow_fields(fields, w);
  const std::size_t n = w.size();
  if (y.size() != n || xi.size() != n) throw DimensionMismatch("exact_flow_at: point has wrong dimension");
  std::vector<Poly> yp, xp;
  for (std::size_t k = 0; k < n; ++k) {
    yp.push_back(Poly::constant(1, y[k]));
    xp.push_back(Poly::constant(1, xi[k]));
  }
  return solve_flow(fields, w, yp, xp, 0);
}

namespace {

/// (y, xi, t) -> given polynomials, for composing with a flow.
PolyMap flow_substitution(std::vector<Poly> y, std::vector<Poly> xi, Poly t) {
  const std::size_t nv = t.nvars();
  std::vector<Poly> all = std::move(y);
  for (auto& p : xi) all.push_back(std::move(p));
  all.push_back(std::move(t));
  return PolyMap(nv, std::move(all));
}

}  // namespace

PolyMap exp_map(const std::vector<VectorField>& fields, const WeightVector& w) {
  if (!is_graded_triangular(fields, w)) throw ShapeError("exp_map: fields are not graded triangular");
  const std::size_t n = w.size();
  const PolyMap flow = exact_flow(fields, w);
  std::vector<Poly> y(n, Poly(n)), xi;
  for (std::size_t j = 0; j < n; ++j) xi.push_back(Poly::variable(n, j));
  return compose(flow, flow_substitution(std::move(y), std::move(xi), Poly::constant(n, 1)));
}

PolyMap log_map(const PolyMap& exp, const WeightVector& w) { return invert_unipotent_triangular(exp, w); }

EpsilonPipeline epsilon_pipeline(const Frame& frame) {
  const auto& w = frame.weights();
  const std::size_t n = frame.dim();
  Linearization lin = linearize(frame);
  PolyMap psi = psi_map(lin.frame);
  const PolyMap psi_inv = invert_unipotent_triangular(psi, w);
  std::vector<VectorField> pushed;
  for (const auto& x : lin.frame.fields()) pushed.push_back(pushforward(x, psi, psi_inv));
  Frame privileged(w, zero_point(n), std::move(pushed));
  std::vector<VectorField> model = model_fields(privileged);
  PolyMap exp = exp_map(model, w);
  PolyMap log = log_map(exp, w);
  CoordinateChange change(lin.change.affine(), compose(log, psi), PolyMap::identity(n), w);
  return {std::move(lin), std::move(psi), std::move(privileged), std::move(model), std::move(exp), std::move(log),
          std::move(change)};
}

CoordinateChange epsilon(const Frame& frame) { return epsilon_pipeline(frame).change; }

PolyMap convert_nilpotent_approx(const std::vector<VectorField>& model, const std::vector<VectorField>& target,
                                 const WeightVector& w) {
  const Point zero = zero_point(w.size());
  const auto lx = structure_constants_at(Frame(w, zero, model)).graded;
  const auto ly = structure_constants_at(Frame(w, zero, target)).graded;
  if (!(lx == ly)) throw ShapeError("convert_nilpotent_approx: structure constants at 0 differ");
  return compose(exp_map(target, w), log_map(exp_map(model, w), w));
}

PolyMap first_kind_forward(const Frame& frame) {
  const auto& w = frame.weights();
  const std::size_t n = frame.dim();
  const PolyMap flow = exact_flow(frame.fields(), w);
  std::vector<Poly> y, xi;
  for (std::size_t j = 0; j < n; ++j) {
    y.push_back(Poly::constant(n, frame.base_point()[j]));
    xi.push_back(Poly::variable(n, j));
  }
  return compose(flow, flow_substitution(std::move(y), std::move(xi), Poly::constant(n, 1)));
}

PolyMap second_kind_forward(const Frame& frame) {
  const auto& w = frame.weights();
  const std::size_t n = frame.dim();
  const PolyMap flow = exact_flow(frame.fields(), w);
  std::vector<Poly> p;
  for (std::size_t j = 0; j < n; ++j) p.push_back(Poly::constant(n, frame.base_point()[j]));
  for (std::size_t j = n; j-- > 0;) {
    std::vector<Poly> xi(n, Poly(n));
    xi[j] = Poly::constant(n, 1);
    p = compose(flow, flow_substitution(p, std::move(xi), Poly::variable(n, j))).components();
  }
  return PolyMap(n, std::move(p));
}

CoordinateChange chart_from_forward(const PolyMap& forward, const Frame& frame) {
  const std::size_t n = frame.dim();
  const auto& w = frame.weights();
  const Point zero = zero_point(n);
  if (forward.evaluate(zero) != frame.base_point()) throw ShapeError("forward map does not send 0 to the base point");
  const Matrix m = inverse(forward.jacobian_at(zero));
  PolyMap shifted = forward;
  for (std::size_t k = 0; k < n; ++k) shifted[k] -= Poly::constant(n, frame.base_point()[k]);
  const PolyMap normalized = compose(PolyMap::linear(m), shifted);
  if (!is_unipotent_triangular(normalized, w))
    throw ShapeError("normalized forward map is not unipotent triangular; use numeric mode");
  return CoordinateChange({m, frame.base_point()}, invert_unipotent_triangular(normalized, w), PolyMap::identity(n), w);
}

CoordinateChange canonical_first_kind(const Frame& frame) { return chart_from_forward(first_kind_forward(frame), frame); }

CoordinateChange canonical_second_kind(const Frame& frame) {
  return chart_from_forward(second_kind_forward(frame), frame);
}

std::vector<double> numeric_flow(const VectorField& field, std::span<const double> y, double duration, double step) {
  const CompiledField f(field);
  return rk4([&](const double* x, double* dx) { f.evaluate(x, dx); }, y, duration, step);
}

std::vector<double> numeric_first_kind(const Frame& frame, std::span<const double> x, double step) {
  std::vector<CompiledField> fields;
  for (const auto& f : frame.fields()) fields.emplace_back(f);
  FlowJob job{to_double(frame.base_point()), std::vector<double>(x.begin(), x.end()), 1.0};
  return serial::batch_flows(fields, {job}, step).front();
}

std::vector<double> numeric_second_kind(const Frame& frame, std::span<const double> x, double step) {
  std::vector<double> p = to_double(frame.base_point());
  for (std::size_t j = frame.dim(); j-- > 0;) p = numeric_flow(frame[j], p, x[j], step);
  return p;
}

std::vector<double> invert_numeric(const std::function<std::vector<double>(std::span<const double>)>& forward,
                                   std::span<const double> p, std::vector<double> x0, double tol, int max_iter) {
  const std::size_t n = p.size();
  Eigen::Map<const Eigen::VectorXd> target(p.data(), static_cast<Eigen::Index>(n));
  std::vector<double> x = std::move(x0);
  for (int it = 0; it < max_iter; ++it) {
    const std::vector<double> fx = forward(x);
    Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(fx.data(), static_cast<Eigen::Index>(n)) - target;
    if (r.norm() < tol) break;
    Eigen::MatrixXd jac(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> xh = x;
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      xh[j] += h;
      const std::vector<double> fh = forward(xh);
      for (std::size_t k = 0; k < n; ++k) jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = (fh[k] - fx[k]) / h;
    }
    const Eigen::VectorXd dx = jac.partialPivLu().solve(r);
    for (std::size_t j = 0; j < n; ++j) x[j] -= dx(static_cast<Eigen::Index>(j));
  }
  return x;
}

}  // namespace carnot
