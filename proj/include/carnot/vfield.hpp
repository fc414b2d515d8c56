#pragma once

#include <map>
#include <optional>
#include <vector>

#include "carnot/poly.hpp"

namespace carnot {

/// X = sum_k a_k(x) d/dx_k with polynomial coefficients.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Poly> coefficients);

  /// d/dx_j on R^n.
  static VectorField coordinate(std::size_t n, std::size_t j);
  static VectorField zero(std::size_t n);

  std::size_t dim() const { return a_.size(); }
  const Poly& operator[](std::size_t k) const { return a_[k]; }
  Poly& operator[](std::size_t k) { return a_[k]; }
  const std::vector<Poly>& coefficients() const { return a_; }

  /// X f = sum_k a_k d_k f
  Poly apply(const Poly& f) const;
  Point evaluate(std::span<const Rational> x) const;
  std::vector<double> evaluate(std::span<const double> x) const;
  bool is_zero() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(const Rational& c);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }
  /// Multiplication by a function.
  friend VectorField operator*(const Poly& f, const VectorField& x);

  bool operator==(const VectorField&) const = default;

 private:
  std::vector<Poly> a_;
};

/// [X, Y] = sum_k (X(b_k) - Y(a_k)) d_k
VectorField bracket(const VectorField& x, const VectorField& y);

/// delta_t^* X = sum_k t^{-w_k} a_k(t.x) d_k. Throws for t = 0.
VectorField rescale(const VectorField& x, const Rational& t, const WeightVector& w);

/// Homogeneous decomposition: part l collects a x^alpha d_k with <alpha> - w_k = l,
/// so delta_t^* X^[l] = t^l X^[l]. Zero parts are omitted.
std::map<int, VectorField> expand(const VectorField& x, const WeightVector& w);
VectorField homogeneous_part(const VectorField& x, int degree, const WeightVector& w);
/// Smallest degree with a nonzero part; nullopt for X = 0.
std::optional<int> field_weight(const VectorField& x, const WeightVector& w);
bool is_homogeneous(const VectorField& x, int degree, const WeightVector& w);

/// Pushforward m_* X = (X(m_k)) o m_inv, where m_inv is the inverse of m.
VectorField pushforward(const VectorField& x, const PolyMap& m, const PolyMap& m_inv);
/// Same, keeping only monomials with <alpha> <= w_k + slack in component k.
/// Exact on those monomials provided every component of m_inv is x_l plus
/// terms of weight >= w_l and m_inv is exact up to weight w_k + slack.
VectorField pushforward_truncated(const VectorField& x, const PolyMap& m, const PolyMap& m_inv,
                                  const WeightVector& w, int slack);

std::string to_string(const VectorField& x);

}  // namespace carnot
