#pragma once

#include <functional>
#include <vector>

#include "carnot/frame.hpp"
#include "carnot/linalg.hpp"
#include "carnot/triangular.hpp"

namespace carnot {

/// T(x) = M (x - offset).
struct AffineMap {
  Matrix matrix;
  Point offset;

  static AffineMap identity(std::size_t n);
  std::size_t dim() const { return offset.size(); }
  PolyMap as_polymap() const;
  /// y -> M^{-1} y + offset
  PolyMap inverse_polymap() const;
  Point apply(std::span<const Rational> x) const;
  bool operator==(const AffineMap&) const = default;
};

/// x -> outer(inner(T(x))) where inner is unipotent triangular (exact
/// polynomial inverse) and outer is weight nondecreasing (inverse known to
/// any weight). Either nonlinear factor may be the identity.
class CoordinateChange {
 public:
  CoordinateChange() = default;
  CoordinateChange(AffineMap affine, PolyMap inner, PolyMap outer, WeightVector w);
  static CoordinateChange identity(const WeightVector& w, Point base_point);
  static CoordinateChange affine_only(AffineMap affine, WeightVector w);
  /// Splits a nonlinear part with identity differential into the two
  /// factors. Throws ShapeError when no such split is found.
  static CoordinateChange from_nonlinear(AffineMap affine, const PolyMap& nonlinear, WeightVector w);

  const AffineMap& affine() const { return affine_; }
  const PolyMap& inner() const { return inner_; }
  const PolyMap& outer() const { return outer_; }
  const WeightVector& weights() const { return w_; }
  std::size_t dim() const { return w_.size(); }

  /// outer o inner
  PolyMap nonlinear() const;
  PolyMap as_polymap() const;
  Point apply(std::span<const Rational> x) const;
  /// True when the outer factor is also unipotent triangular.
  bool has_exact_inverse() const;
  /// Throws ShapeError unless has_exact_inverse().
  PolyMap inverse() const;

  /// g o this, for a map g with identity differential.
  CoordinateChange then(const PolyMap& g) const;

  /// Frame in the new coordinates, based at the image of its base point.
  /// With a nontrivial outer factor, component k keeps only monomials of
  /// weight <= w_k, which is every part of degree <= 0.
  Frame push(const Frame& frame) const;

  bool operator==(const CoordinateChange&) const = default;

 private:
  AffineMap affine_;
  PolyMap inner_;
  PolyMap outer_;
  WeightVector w_;
};

struct Linearization {
  CoordinateChange change;
  Frame frame;
};

/// T_a(x) = (B_X(a)^t)^{-1} (x - a) and the frame pushed by it.
Linearization linearize(const Frame& frame);

/// Class-E map psi with psi_k = x_k + sum a_ka x^a over 2 <= |a| <= <a> < w_k,
/// making a linearly adapted frame at 0 privileged.
PolyMap psi_map(const Frame& adapted);

/// Exact flow x(t) of sum_j xi_j X_j from y. Variables: y = 0..n-1,
/// xi = n..2n-1, t = 2n. The d_k coefficient of every field must use only
/// variables of weight < w_k (ShapeError otherwise).
PolyMap exact_flow(const std::vector<VectorField>& fields, const WeightVector& w);

/// The flow started at y with control xi, as polynomials in the single variable t.
PolyMap exact_flow_at(const std::vector<VectorField>& fields, const WeightVector& w, const Point& y, const Point& xi);

/// exp(x_1 X_1 + ... + x_n X_n)(0).
PolyMap exp_map(const std::vector<VectorField>& fields, const WeightVector& w);
/// Exact inverse of exp_map output.
PolyMap log_map(const PolyMap& exp, const WeightVector& w);

struct EpsilonPipeline {
  Linearization linear;
  PolyMap psi;
  Frame privileged_frame;
  std::vector<VectorField> model;
  PolyMap exp;
  PolyMap log;
  /// eps_a = log o psi o T_a
  CoordinateChange change;
};

EpsilonPipeline epsilon_pipeline(const Frame& frame);
CoordinateChange epsilon(const Frame& frame);

/// phi_Y = exp_Y o exp_X^{-1}, the w-homogeneous map pushing the model
/// fields to Y. Throws ShapeError when the structure constants at 0 differ.
PolyMap convert_nilpotent_approx(const std::vector<VectorField>& model, const std::vector<VectorField>& target,
                                 const WeightVector& w);

/// exp(x_1X_1 + ... + x_nX_n)(a), exact.
PolyMap first_kind_forward(const Frame& frame);
/// exp(x_1X_1) o ... o exp(x_nX_n)(a), exact.
PolyMap second_kind_forward(const Frame& frame);
/// Inverse chart of a forward map G with G(0) = a: with M = G'(0)^{-1},
/// the chart is (M(G - a))^{-1} o M(x - a). Throws ShapeError when
/// M(G - a) is not unipotent triangular.
CoordinateChange chart_from_forward(const PolyMap& forward, const Frame& frame);
CoordinateChange canonical_first_kind(const Frame& frame);
CoordinateChange canonical_second_kind(const Frame& frame);

/// Classic fixed-step RK4 approximation of exp(T X)(y); n_steps = ceil(T/step).
std::vector<double> numeric_flow(const VectorField& field, std::span<const double> y, double duration,
                                 double step = 1e-3);

/// Forward maps computed with numeric_flow; any polynomial frame.
std::vector<double> numeric_first_kind(const Frame& frame, std::span<const double> x, double step = 1e-3);
std::vector<double> numeric_second_kind(const Frame& frame, std::span<const double> x, double step = 1e-3);

/// Newton solve of forward(x) = p starting from x0 with a finite-difference
/// Jacobian. Returns the chart value x.
std::vector<double> invert_numeric(const std::function<std::vector<double>(std::span<const double>)>& forward,
                                   std::span<const double> p, std::vector<double> x0, double tol = 1e-12,
                                   int max_iter = 50);

}  // namespace carnot
