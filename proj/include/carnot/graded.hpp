#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Upper bound on the number of variables of any polynomial. Flows use
/// 2n+1 variables, so n <= 7 fits.
inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector (alpha_1, ..., alpha_n). Unused slots are zero.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::span<const int> exponents);

  static MultiIndex unit(std::size_t j) {
    MultiIndex m;
    m.e_[j] = 1;
    return m;
  }

  int operator[](std::size_t j) const { return e_[j]; }
  void set(std::size_t j, int value);

  /// |alpha|
  int degree() const;
  bool is_zero() const { return degree() == 0; }
  /// Largest index with a nonzero exponent plus one.
  std::size_t support_size() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// alpha! = prod alpha_j!
  Rational factorial() const;

  std::vector<int> to_vector(std::size_t n) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
};

/// Graded-lex order on plain degree: |alpha| ascending, then exponents in
/// descending lexicographic order (x1^2 < x1*x2 < x2^2).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return b < a;
  }
};

/// Weight sequence w_1 <= ... <= w_n of a Carnot filtration.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<int> weights);

  std::size_t size() const { return w_.size(); }
  int operator[](std::size_t j) const { return w_[j]; }
  const std::vector<int>& values() const { return w_; }
  /// r = max weight.
  int step() const { return w_.empty() ? 0 : w_.back(); }

  /// <alpha> = sum w_j alpha_j over the first size() variables.
  int weighted_degree(const MultiIndex& alpha) const;

  /// The weights (w, w) of the product space R^n x R^n.
  WeightVector doubled() const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<int> w_;
};

/// t.x = (t^{w_1} x_1, ..., t^{w_n} x_n).
Point dilate(std::span<const Rational> x, const Rational& t, const WeightVector& w);
std::vector<double> dilate(std::span<const double> x, double t, const WeightVector& w);

/// sum |x_j|^{1/w_j}; homogeneous of degree 1 under dilations.
double pseudo_norm(std::span<const double> x, const WeightVector& w);

/// Sorts by (<alpha>, descending lex), the canonical serialization order.
struct WeightedLexLess {
  const WeightVector* w;
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = w->weighted_degree(a), db = w->weighted_degree(b);
    if (da != db) return da < db;
    return b < a;
  }
};

}  // namespace carnot
