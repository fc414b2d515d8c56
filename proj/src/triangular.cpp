#include "carnot/triangular.hpp"

#include <algorithm>
#include <numeric>

namespace carnot {

namespace {

void check_square(const PolyMap& m, const WeightVector& w) {
  if (m.size() != m.nvars() || m.size() != w.size()) throw DimensionMismatch("triangular map: shape mismatch");
}

std::vector<std::size_t> by_weight(const WeightVector& w) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  return order;
}

}  // namespace

bool is_unipotent_triangular(const PolyMap& m, const WeightVector& w) {
  check_square(m, w);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Poly rest = m[k] - Poly::variable(m.nvars(), k);
    if (!rest.uses_only([&](std::size_t l) { return w[l] < w[k]; })) return false;
  }
  return true;
}

bool is_class_e(const PolyMap& m, const WeightVector& w) {
  if (!is_unipotent_triangular(m, w)) return false;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Poly rest = m[k] - Poly::variable(m.nvars(), k);
    for (const auto& [alpha, c] : rest.terms())
      if (alpha.degree() < 2 || w.weighted_degree(alpha) > w[k]) return false;
  }
  return true;
}

bool is_weight_nondecreasing(const PolyMap& m, const WeightVector& w) {
  check_square(m, w);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Poly rest = m[k] - Poly::variable(m.nvars(), k);
    for (const auto& [alpha, c] : rest.terms()) {
      const int d = w.weighted_degree(alpha);
      if (alpha.degree() == 0 || d < w[k] || (alpha.degree() == 1 && d == w[k])) return false;
    }
  }
  return true;
}

PolyMap invert_unipotent_triangular(const PolyMap& m, const WeightVector& w) {
  if (!is_unipotent_triangular(m, w)) throw ShapeError("map is not unipotent triangular");
  const std::size_t n = m.size();
  PolyMap inv = PolyMap::zero(n, n);
  for (std::size_t k : by_weight(w)) {
    const Poly rest = m[k] - Poly::variable(n, k);
    inv[k] = Poly::variable(n, k) - substitute(rest, inv);
  }
  return inv;
}

TriangularMap::TriangularMap(PolyMap map, WeightVector w) : m_(std::move(map)), w_(std::move(w)) {
  if (!is_class_e(m_, w_)) throw ShapeError("map is not of the triangular class");
}

TriangularMap TriangularMap::identity(const WeightVector& w) { return TriangularMap(PolyMap::identity(w.size()), w); }

TriangularMap TriangularMap::inverse() const { return TriangularMap(invert_unipotent_triangular(m_, w_), w_); }

TriangularMap TriangularMap::compose(const TriangularMap& other) const {
  if (!(other.w_ == w_)) throw DimensionMismatch("triangular compose: weights differ");
  return TriangularMap(carnot::compose(m_, other.m_), w_);
}

PolyMap invert_perturbed_triangular(const PolyMap& m, const WeightVector& w, int max_weight) {
  if (is_unipotent_triangular(m, w)) return truncate(invert_unipotent_triangular(m, w), w, max_weight);
  if (!is_weight_nondecreasing(m, w)) throw ShapeError("leading part of the map is not invertible in the triangular class");
  const std::size_t n = m.size();
  const PolyMap q = m - PolyMap::identity(n);
  // Each round raises (plain degree + weight excess) of the error by one.
  PolyMap g = PolyMap::identity(n);
  for (int it = 0; it < 2 * max_weight + 1; ++it) {
    const PolyMap next = truncate(PolyMap::identity(n) - compose_truncated(q, g, w, max_weight), w, max_weight);
    if (next == g) break;
    g = next;
  }
  return g;
}

bool ow_class_poly(const PolyMap& residual, int m, const WeightVector& var_w, const WeightVector& comp_w) {
  if (residual.size() != comp_w.size() || residual.nvars() != var_w.size())
    throw DimensionMismatch("ow_class_poly: shape mismatch");
  for (std::size_t k = 0; k < residual.size(); ++k)
    for (const auto& [alpha, c] : residual[k].terms())
      if (var_w.weighted_degree(alpha) < comp_w[k] + m) return false;
  return true;
}

}  // namespace carnot
