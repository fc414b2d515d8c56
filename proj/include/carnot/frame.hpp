#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "carnot/linalg.hpp"
#include "carnot/nilpotent.hpp"
#include "carnot/vfield.hpp"

namespace carnot {

/// Ordered H-frame (X_1..X_n) on R^n with weights w and a base point a.
/// X_j is a section of H_{w_j}.
class Frame {
 public:
  Frame() = default;
  /// Throws SingularMatrix when B_X(a) is not invertible.
  Frame(WeightVector w, Point base_point, std::vector<VectorField> fields);

  const WeightVector& weights() const { return w_; }
  const Point& base_point() const { return a_; }
  const std::vector<VectorField>& fields() const { return x_; }
  const VectorField& operator[](std::size_t j) const { return x_[j]; }
  std::size_t dim() const { return x_.size(); }

  Frame at(Point a) const { return Frame(w_, std::move(a), x_); }

  /// B_X(x)_{jk} = b_jk(x), the d_k coefficient of X_j.
  Matrix coefficient_matrix(std::span<const Rational> x) const;
  /// X_j(0) = d_j for all j.
  bool linearly_adapted() const;

  bool operator==(const Frame&) const = default;

 private:
  WeightVector w_;
  Point a_;
  std::vector<VectorField> x_;
};

struct BracketTable {
  /// Graded part, w_i + w_j = w_k: the tangent group algebra at a.
  StructureConstants graded;
  /// All L_ij^k(a) with i < j, w_k <= w_i + w_j.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> full;
};

/// Expresses [X_i, X_j](a) in the frame basis. Throws ShapeError when a
/// component along X_k with w_k > w_i + w_j is nonzero.
BracketTable structure_constants_at(const Frame& frame);

/// Smallest <I> with X_I f(a) != 0, X_I = X_{i_1} o ... o X_{i_k}; nullopt
/// when no sequence with <I> < n_max works.
std::optional<int> function_order(const Poly& f, const Frame& frame, int n_max);

/// Degree -w_j part of X_j. Requires a linearly adapted frame at 0 and
/// throws ShapeError when X_j has a part of degree < -w_j.
VectorField model_field(const Frame& frame, std::size_t j);
/// d_j + sum_{w_j + <alpha> = w_k} (1/alpha!) d^alpha b_jk(0) x^alpha d_k.
VectorField model_field_jet(const Frame& frame, std::size_t j);
std::vector<VectorField> model_fields(const Frame& frame);

/// The d_k coefficient of every field uses only variables of weight < w_k,
/// and X_j(0) = d_j.
bool is_graded_triangular(const std::vector<VectorField>& fields, const WeightVector& w);

}  // namespace carnot
