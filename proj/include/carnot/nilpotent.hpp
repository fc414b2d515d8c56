#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "carnot/graded.hpp"
#include "carnot/poly.hpp"
#include "carnot/vfield.hpp"

namespace carnot {

/// Structure constants L_ij^k of a Lie algebra on R^n with basis e_1..e_n,
/// [e_i, e_j] = sum_k L_ij^k e_k. Stored for i < j only (0-based).
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(WeightVector w) : w_(std::move(w)) {}

  const WeightVector& weights() const { return w_; }
  std::size_t dim() const { return w_.size(); }

  /// Sets L_ij^k (and implicitly L_ji^k = -L_ij^k). Requires i != j.
  void set(std::size_t i, std::size_t j, std::size_t k, const Rational& c);
  Rational get(std::size_t i, std::size_t j, std::size_t k) const;
  /// Nonzero entries with i < j.
  const std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational>& entries() const { return l_; }

  bool operator==(const StructureConstants&) const = default;

 private:
  WeightVector w_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> l_;
};

struct AlgebraReport {
  bool ok = true;
  /// First violated identity, empty when ok.
  std::string message;
};

/// Checks grading (L_ij^k = 0 unless w_i + w_j = w_k) and the Jacobi identity.
/// Antisymmetry holds by construction.
AlgebraReport validate_algebra(const StructureConstants& l);

namespace detail {
template <class S>
S zero_like(const S& s) {
  return s - s;
}
}  // namespace detail

/// [x, y]_k = sum_{i,j} L_ij^k x_i y_j over any commutative scalar ring S.
template <class S>
std::vector<S> lie_bracket(const StructureConstants& l, const std::vector<S>& x, const std::vector<S>& y) {
  if (x.size() != l.dim() || y.size() != l.dim()) throw DimensionMismatch("bracket: vector has wrong length");
  std::vector<S> out(l.dim(), detail::zero_like(x[0]));
  for (const auto& [key, c] : l.entries()) {
    const auto [i, j, k] = key;
    out[k] += (x[i] * y[j] - x[j] * y[i]) * c;
  }
  return out;
}

/// A(x)_{kj} = sum_i L_ij^k x_i, the matrix of ad_x.
template <class S>
std::vector<std::vector<S>> adjoint_matrix(const StructureConstants& l, const std::vector<S>& x) {
  if (x.size() != l.dim()) throw DimensionMismatch("adjoint_matrix: vector has wrong length");
  const S zero = detail::zero_like(x[0]);
  std::vector<std::vector<S>> a(l.dim(), std::vector<S>(l.dim(), zero));
  for (const auto& [key, c] : l.entries()) {
    const auto [i, j, k] = key;
    a[k][j] += x[i] * c;
    a[k][i] -= x[j] * c;
  }
  return a;
}

template <class S>
std::vector<S> apply_matrix(const std::vector<std::vector<S>>& a, const std::vector<S>& v) {
  std::vector<S> out(a.size(), detail::zero_like(v[0]));
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j < v.size(); ++j) out[k] += a[k][j] * v[j];
  return out;
}

/// Dynkin form of the BCH series x.y, truncated at word length r = step.
/// A word with blocks (a_1,b_1,...,a_m,b_m) contributes
/// (-1)^{m+1}/m * 1/(s * prod a_i! b_i!) ad_x^{a_1} ad_y^{b_1} ... applied to the last letter.
template <class S>
std::vector<S> dynkin_product(const StructureConstants& l, const std::vector<S>& x, const std::vector<S>& y) {
  const int r = l.weights().step();
  const std::size_t n = l.dim();
  if (x.size() != n || y.size() != n) throw DimensionMismatch("dynkin_product: vector has wrong length");
  std::vector<S> out(n, detail::zero_like(x[0]));
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] + y[k];
  if (r <= 1 || l.entries().empty()) return out;

  const auto ax = adjoint_matrix(l, x);
  const auto ay = adjoint_matrix(l, y);

  // Enumerate words as sequences of blocks; the total letter count s ranges over 2..r.
  std::vector<std::pair<int, int>> blocks;
  auto emit = [&](int s) {
    const int m = static_cast<int>(blocks.size());
    const auto [am, bm] = blocks.back();
    std::vector<S> v;
    int ax_last = am, ay_last = bm;
    if (bm >= 1) {
      v = y;
      ay_last = bm - 1;
    } else {
      if (am != 1) return;
      v = x;
      ax_last = 0;
    }
    for (int e = 0; e < ay_last; ++e) v = apply_matrix(ay, v);
    for (int e = 0; e < ax_last; ++e) v = apply_matrix(ax, v);
    for (int b = m - 2; b >= 0; --b) {
      for (int e = 0; e < blocks[b].second; ++e) v = apply_matrix(ay, v);
      for (int e = 0; e < blocks[b].first; ++e) v = apply_matrix(ax, v);
    }
    Rational c(m % 2 == 1 ? 1 : -1, m);
    c /= s;
    for (const auto& [a, b] : blocks) c /= factorial(a) * factorial(b);
    c.canonicalize();
    for (std::size_t k = 0; k < n; ++k) out[k] += v[k] * c;
  };
  auto rec = [&](auto&& self, int used) -> void {
    for (int a = 0; used + a <= r; ++a)
      for (int b = 0; used + a + b <= r; ++b) {
        if (a + b == 0) continue;
        blocks.emplace_back(a, b);
        const int s = used + a + b;
        if (s >= 2) emit(s);
        self(self, s);
        blocks.pop_back();
      }
  };
  rec(rec, 0);
  return out;
}

inline Point group_inverse(std::span<const Rational> x) {
  Point out(x.begin(), x.end());
  for (auto& v : out) v = -v;
  return out;
}

/// Group law of the simply connected group with Lie algebra l, in exponential
/// coordinates, as an exact polynomial map R^{2n} -> R^n.
class GroupLaw {
 public:
  explicit GroupLaw(StructureConstants l);

  const StructureConstants& algebra() const { return l_; }
  std::size_t dim() const { return l_.dim(); }
  /// (x, y) -> x.y with x = vars 0..n-1, y = vars n..2n-1.
  const PolyMap& product_map() const { return product_; }

  Point multiply(std::span<const Rational> x, std::span<const Rational> y) const;
  /// z -> a.z as a polynomial map of z.
  PolyMap left_translation(std::span<const Rational> a) const;

 private:
  StructureConstants l_;
  PolyMap product_;
};

/// X_j f(x) = d/dt f(x.(t e_j)) at t = 0.
std::vector<VectorField> left_invariant_fields(const GroupLaw& g);
std::vector<VectorField> left_invariant_fields(const StructureConstants& l);

}  // namespace carnot
