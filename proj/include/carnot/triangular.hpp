#pragma once

#include "carnot/poly.hpp"

namespace carnot {

/// Component k is x_k + (polynomial in the variables x_l with w_l < w_k).
bool is_unipotent_triangular(const PolyMap& m, const WeightVector& w);

/// Unipotent triangular and, beyond x_k, only monomials with |alpha| >= 2
/// and <alpha> <= w_k (class E).
bool is_class_e(const PolyMap& m, const WeightVector& w);

/// Component k is x_k plus terms of weight >= w_k, where linear terms must
/// have weight > w_k and there is no constant term.
bool is_weight_nondecreasing(const PolyMap& m, const WeightVector& w);

/// Exact inverse of a unipotent triangular map, solved by increasing weight:
/// inv_k = x_k - p_k(inv). Throws ShapeError for other maps.
PolyMap invert_unipotent_triangular(const PolyMap& m, const WeightVector& w);

/// Map of class E with its weights; the shape is validated at construction.
class TriangularMap {
 public:
  TriangularMap(PolyMap map, WeightVector w);
  static TriangularMap identity(const WeightVector& w);

  const PolyMap& map() const { return m_; }
  const WeightVector& weights() const { return w_; }

  TriangularMap inverse() const;
  /// this o other
  TriangularMap compose(const TriangularMap& other) const;

  bool operator==(const TriangularMap&) const = default;

 private:
  PolyMap m_;
  WeightVector w_;
};

/// Inverse of m modulo terms of weight > max_weight. m is either unipotent
/// triangular or weight nondecreasing; anything else throws ShapeError.
PolyMap invert_perturbed_triangular(const PolyMap& m, const WeightVector& w, int max_weight);

/// True iff every monomial of component k has weight >= w_k + m.
/// var_w weighs the variables, comp_w the components.
bool ow_class_poly(const PolyMap& residual, int m, const WeightVector& var_w, const WeightVector& comp_w);
inline bool ow_class_poly(const PolyMap& residual, int m, const WeightVector& w) {
  return ow_class_poly(residual, m, w, w);
}

}  // namespace carnot
