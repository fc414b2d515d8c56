#include "carnot/graded.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace carnot {

MultiIndex::MultiIndex(std::span<const int> exponents) {
  if (exponents.size() > kMaxVars) throw DimensionMismatch("too many variables for a multi-index");
  for (std::size_t j = 0; j < exponents.size(); ++j) set(j, exponents[j]);
}

void MultiIndex::set(std::size_t j, int value) {
  if (j >= kMaxVars) throw DimensionMismatch("multi-index slot out of range");
  if (value < 0 || value > std::numeric_limits<std::uint8_t>::max())
    throw std::out_of_range("exponent out of range: " + std::to_string(value));
  e_[j] = static_cast<std::uint8_t>(value);
}

int MultiIndex::degree() const {
  int d = 0;
  for (auto v : e_) d += v;
  return d;
}

std::size_t MultiIndex::support_size() const {
  for (std::size_t j = kMaxVars; j > 0; --j)
    if (e_[j - 1] != 0) return j;
  return 0;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out;
  for (std::size_t j = 0; j < kMaxVars; ++j) out.set(j, int(e_[j]) + int(other.e_[j]));
  return out;
}

Rational MultiIndex::factorial() const {
  Rational f(1);
  for (auto v : e_)
    if (v > 1) f *= carnot::factorial(v);
  return f;
}

std::vector<int> MultiIndex::to_vector(std::size_t n) const {
  std::vector<int> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = e_[j];
  return out;
}

WeightVector::WeightVector(std::vector<int> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw ShapeError("weight vector must be nonempty");
  if (w_.size() > kMaxVars) throw ShapeError("weight vector too long");
  for (std::size_t j = 0; j < w_.size(); ++j) {
    if (w_[j] < 1) throw ShapeError("weights must be positive integers");
    if (j > 0 && w_[j] < w_[j - 1]) throw ShapeError("weights must be nondecreasing");
  }
}

int WeightVector::weighted_degree(const MultiIndex& alpha) const {
  int d = 0;
  for (std::size_t j = 0; j < w_.size(); ++j) d += w_[j] * alpha[j];
  return d;
}

WeightVector WeightVector::doubled() const {
  // (w, w) is not nondecreasing; skip the constructor check.
  WeightVector out;
  out.w_ = w_;
  out.w_.insert(out.w_.end(), w_.begin(), w_.end());
  return out;
}

Point dilate(std::span<const Rational> x, const Rational& t, const WeightVector& w) {
  if (x.size() != w.size()) throw DimensionMismatch("dilate: point and weights differ in length");
  Point out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = power(t, w[j]) * x[j];
  return out;
}

std::vector<double> dilate(std::span<const double> x, double t, const WeightVector& w) {
  if (x.size() != w.size()) throw DimensionMismatch("dilate: point and weights differ in length");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = std::pow(t, w[j]) * x[j];
  return out;
}

double pseudo_norm(std::span<const double> x, const WeightVector& w) {
  if (x.size() != w.size()) throw DimensionMismatch("pseudo_norm: point and weights differ in length");
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(std::abs(x[j]), 1.0 / w[j]);
  return s;
}

}  // namespace carnot
