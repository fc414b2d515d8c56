#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carnot/graded.hpp"
#include "carnot/rational.hpp"

namespace carnot {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

  explicit Poly(std::size_t nvars = 0) : n_(nvars) { check_nvars(nvars); }

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t j);
  static Poly monomial(std::size_t nvars, const MultiIndex& alpha, const Rational& c = Rational(1));

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const MultiIndex& alpha) const;
  Rational constant_term() const { return coefficient(MultiIndex{}); }

  void add_term(const MultiIndex& alpha, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  /// Product with every term of weight > max_weight dropped.
  static Poly multiply_truncated(const Poly& a, const Poly& b, const WeightVector& w, int max_weight);

  Poly derivative(std::size_t j) const;
  /// Antiderivative in x_j vanishing on {x_j = 0}.
  Poly antiderivative(std::size_t j) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  /// Terms with <alpha> == d.
  Poly homogeneous_part(int d, const WeightVector& w) const;
  /// Terms with <alpha> <= max_weight.
  Poly truncated(int max_weight, const WeightVector& w) const;
  /// Smallest / largest <alpha> among the terms; nullopt for the zero polynomial.
  std::optional<int> min_weight(const WeightVector& w) const;
  std::optional<int> max_weight(const WeightVector& w) const;
  int total_degree() const;
  /// True iff the polynomial uses only variables j with pred(j).
  template <class Pred>
  bool uses_only(Pred pred) const {
    for (const auto& [alpha, c] : terms_)
      for (std::size_t j = 0; j < n_; ++j)
        if (alpha[j] != 0 && !pred(j)) return false;
    return true;
  }

  /// Re-express in a ring with new_nvars variables, variable j -> var_map[j].
  Poly embed(std::size_t new_nvars, std::span<const std::size_t> var_map) const;

  bool operator==(const Poly& other) const { return n_ == other.n_ && terms_ == other.terms_; }

 private:
  static void check_nvars(std::size_t n);
  void check_same(const Poly& other, const char* op) const;

  std::size_t n_ = 0;
  TermMap terms_;
};

/// Human readable form, e.g. "x3 - x1*x2/2". Variable names default to x1..xn.
std::string to_string(const Poly& p, std::span<const std::string> names = {});

/// Polynomial map R^nvars -> R^{components.size()}.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t nvars, std::vector<Poly> components);

  static PolyMap identity(std::size_t n);
  static PolyMap zero(std::size_t nvars, std::size_t ncomponents);
  static PolyMap linear(const std::vector<std::vector<Rational>>& matrix, std::span<const Rational> offset = {});

  std::size_t nvars() const { return n_; }
  std::size_t size() const { return c_.size(); }
  const Poly& operator[](std::size_t k) const { return c_[k]; }
  Poly& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Poly>& components() const { return c_; }

  Point evaluate(std::span<const Rational> x) const;
  std::vector<double> evaluate(std::span<const double> x) const;

  /// Jacobian matrix d(component k)/d(x_j) evaluated at x.
  std::vector<std::vector<Rational>> jacobian_at(std::span<const Rational> x) const;

  PolyMap operator+(const PolyMap& other) const;
  PolyMap operator-(const PolyMap& other) const;

  bool is_zero() const;
  bool operator==(const PolyMap& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Poly> c_;
};

/// f o m: requires m.size() == f.nvars().
Poly substitute(const Poly& f, const PolyMap& m);
/// f o m with every intermediate term of weight > max_weight (in the
/// variables of m, weights w) dropped.
Poly substitute_truncated(const Poly& f, const PolyMap& m, const WeightVector& w, int max_weight);

/// f o g (apply g first).
PolyMap compose(const PolyMap& f, const PolyMap& g);
PolyMap compose_truncated(const PolyMap& f, const PolyMap& g, const WeightVector& w, int max_weight);

/// Keep terms with <alpha> <= max_weight in every component.
PolyMap truncate(const PolyMap& m, const WeightVector& w, int max_weight);

}  // namespace carnot
