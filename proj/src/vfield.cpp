#include "carnot/vfield.hpp"

#include <algorithm>

namespace carnot {

VectorField::VectorField(std::vector<Poly> coefficients) : a_(std::move(coefficients)) {
  for (const auto& p : a_)
    if (p.nvars() != a_.size()) throw DimensionMismatch("vector field coefficient lives in the wrong ring");
}

VectorField VectorField::coordinate(std::size_t n, std::size_t j) {
  VectorField x = zero(n);
  x.a_[j] = Poly::constant(n, Rational(1));
  return x;
}

VectorField VectorField::zero(std::size_t n) { return VectorField(std::vector<Poly>(n, Poly(n))); }

Poly VectorField::apply(const Poly& f) const {
  if (f.nvars() != dim()) throw DimensionMismatch("apply: field and function dimensions differ");
  Poly out(dim());
  for (std::size_t k = 0; k < dim(); ++k)
    if (!a_[k].is_zero()) out += a_[k] * f.derivative(k);
  return out;
}

Point VectorField::evaluate(std::span<const Rational> x) const {
  Point out;
  for (const auto& p : a_) out.push_back(p.evaluate(x));
  return out;
}

std::vector<double> VectorField::evaluate(std::span<const double> x) const {
  std::vector<double> out;
  for (const auto& p : a_) out.push_back(p.evaluate(x));
  return out;
}

bool VectorField::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_zero(); });
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (other.dim() != dim()) throw DimensionMismatch("vector field sum: dimensions differ");
  for (std::size_t k = 0; k < dim(); ++k) a_[k] += other.a_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (other.dim() != dim()) throw DimensionMismatch("vector field difference: dimensions differ");
  for (std::size_t k = 0; k < dim(); ++k) a_[k] -= other.a_[k];
  return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
  for (auto& p : a_) p *= c;
  return *this;
}

VectorField operator*(const Poly& f, const VectorField& x) {
  std::vector<Poly> c;
  for (const auto& p : x.coefficients()) c.push_back(f * p);
  return VectorField(std::move(c));
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("bracket: dimensions differ");
  std::vector<Poly> c;
  for (std::size_t k = 0; k < x.dim(); ++k) c.push_back(x.apply(y[k]) - y.apply(x[k]));
  return VectorField(std::move(c));
}

VectorField rescale(const VectorField& x, const Rational& t, const WeightVector& w) {
  if (t == 0) throw std::invalid_argument("rescale: t must be nonzero");
  if (w.size() != x.dim()) throw DimensionMismatch("rescale: weight vector has wrong length");
  std::vector<Poly> c;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    Poly p(x.dim());
    for (const auto& [alpha, coef] : x[k].terms()) p.add_term(alpha, coef * power(t, w.weighted_degree(alpha) - w[k]));
    c.push_back(std::move(p));
  }
  return VectorField(std::move(c));
}

std::map<int, VectorField> expand(const VectorField& x, const WeightVector& w) {
  if (w.size() != x.dim()) throw DimensionMismatch("expand: weight vector has wrong length");
  std::map<int, VectorField> parts;
  for (std::size_t k = 0; k < x.dim(); ++k)
    for (const auto& [alpha, coef] : x[k].terms()) {
      const int l = w.weighted_degree(alpha) - w[k];
      auto it = parts.try_emplace(l, VectorField::zero(x.dim())).first;
      it->second[k].add_term(alpha, coef);
    }
  return parts;
}

VectorField homogeneous_part(const VectorField& x, int degree, const WeightVector& w) {
  auto parts = expand(x, w);
  auto it = parts.find(degree);
  return it == parts.end() ? VectorField::zero(x.dim()) : it->second;
}

std::optional<int> field_weight(const VectorField& x, const WeightVector& w) {
  auto parts = expand(x, w);
  if (parts.empty()) return std::nullopt;
  return parts.begin()->first;
}

bool is_homogeneous(const VectorField& x, int degree, const WeightVector& w) {
  auto parts = expand(x, w);
  return parts.empty() || (parts.size() == 1 && parts.begin()->first == degree);
}

VectorField pushforward(const VectorField& x, const PolyMap& m, const PolyMap& m_inv) {
  if (m.nvars() != x.dim() || m.size() != x.dim() || m_inv.size() != x.dim())
    throw DimensionMismatch("pushforward: map and field dimensions differ");
  std::vector<Poly> c;
  for (std::size_t k = 0; k < m.size(); ++k) c.push_back(x.apply(m[k]));
  return VectorField(compose(PolyMap(x.dim(), std::move(c)), m_inv).components());
}

VectorField pushforward_truncated(const VectorField& x, const PolyMap& m, const PolyMap& m_inv,
                                  const WeightVector& w, int slack) {
  if (m.nvars() != x.dim() || m.size() != x.dim() || m_inv.size() != x.dim())
    throw DimensionMismatch("pushforward: map and field dimensions differ");
  std::vector<Poly> c;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const int bound = w[k] + slack;
    const Poly g = x.apply(m[k]).truncated(bound, w);
    c.push_back(substitute_truncated(g, truncate(m_inv, w, bound), w, bound));
  }
  return VectorField(std::move(c));
}

std::string to_string(const VectorField& x) {
  std::string out;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (x[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(x[k]) + ")*d" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace carnot
