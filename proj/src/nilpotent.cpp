#include "carnot/nilpotent.hpp"

namespace carnot {

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
  const std::size_t n = dim();
  if (i >= n || j >= n || k >= n) throw DimensionMismatch("structure constant index out of range");
  if (i == j) {
    if (c != 0) throw std::invalid_argument("L_ii^k must vanish");
    return;
  }
  const auto key = i < j ? std::tuple{i, j, k} : std::tuple{j, i, k};
  const Rational v = i < j ? c : Rational(-c);
  if (v == 0)
    l_.erase(key);
  else
    l_[key] = v;
}

Rational StructureConstants::get(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return 0;
  auto it = l_.find(i < j ? std::tuple{i, j, k} : std::tuple{j, i, k});
  if (it == l_.end()) return 0;
  return i < j ? it->second : Rational(-it->second);
}

AlgebraReport validate_algebra(const StructureConstants& l) {
  const auto& w = l.weights();
  for (const auto& [key, c] : l.entries()) {
    const auto [i, j, k] = key;
    if (w[i] + w[j] != w[k])
      return {false, "grading violated: L_" + std::to_string(i + 1) + std::to_string(j + 1) + "^" +
                         std::to_string(k + 1) + " = " + to_string(c) + " but w_i + w_j = " +
                         std::to_string(w[i] + w[j]) + " != w_k = " + std::to_string(w[k])};
  }
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
          Rational s(0);
          for (std::size_t m = 0; m < n; ++m)
            s += l.get(i, j, m) * l.get(m, k, q) + l.get(j, k, m) * l.get(m, i, q) + l.get(k, i, m) * l.get(m, j, q);
          if (s != 0)
            return {false, "Jacobi identity fails for (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) +
                               ", e" + std::to_string(k + 1) + ") in component " + std::to_string(q + 1)};
        }
  return {};
}

GroupLaw::GroupLaw(StructureConstants l) : l_(std::move(l)) {
  const auto report = validate_algebra(l_);
  if (!report.ok) throw SchemaError("invalid Lie algebra: " + report.message);
  const std::size_t n = dim();
  std::vector<Poly> x, y;
  for (std::size_t j = 0; j < n; ++j) {
    x.push_back(Poly::variable(2 * n, j));
    y.push_back(Poly::variable(2 * n, n + j));
  }
  if (n == 0) {
    product_ = PolyMap(0, {});
    return;
  }
  product_ = PolyMap(2 * n, dynkin_product(l_, x, y));
}

Point GroupLaw::multiply(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("group product: point has wrong length");
  Point xy(x.begin(), x.end());
  xy.insert(xy.end(), y.begin(), y.end());
  return product_.evaluate(xy);
}

PolyMap GroupLaw::left_translation(std::span<const Rational> a) const {
  const std::size_t n = dim();
  if (a.size() != n) throw DimensionMismatch("left translation: point has wrong length");
  std::vector<Poly> sub;
  for (std::size_t j = 0; j < n; ++j) sub.push_back(Poly::constant(n, a[j]));
  for (std::size_t j = 0; j < n; ++j) sub.push_back(Poly::variable(n, j));
  return compose(product_, PolyMap(n, std::move(sub)));
}

std::vector<VectorField> left_invariant_fields(const GroupLaw& g) {
  const std::size_t n = g.dim();
  std::vector<Poly> restrict_y;
  for (std::size_t j = 0; j < n; ++j) restrict_y.push_back(Poly::variable(n, j));
  for (std::size_t j = 0; j < n; ++j) restrict_y.push_back(Poly(n));
  const PolyMap at_y0(n, std::move(restrict_y));
  std::vector<VectorField> fields;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Poly> c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(substitute(g.product_map()[k].derivative(n + j), at_y0));
    fields.emplace_back(std::move(c));
  }
  return fields;
}

std::vector<VectorField> left_invariant_fields(const StructureConstants& l) {
  return left_invariant_fields(GroupLaw(l));
}

}  // namespace carnot
