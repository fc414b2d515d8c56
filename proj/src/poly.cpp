#include "carnot/poly.hpp"

#include <algorithm>
#include <sstream>

namespace carnot {

void Poly::check_nvars(std::size_t n) {
  if (n > kMaxVars) throw DimensionMismatch("polynomial has too many variables");
}

void Poly::check_same(const Poly& other, const char* op) const {
  if (n_ != other.n_)
    throw DimensionMismatch(std::string(op) + ": polynomials live in rings with " + std::to_string(n_) + " and " +
                            std::to_string(other.n_) + " variables");
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(MultiIndex{}, c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t j) {
  if (j >= nvars) throw DimensionMismatch("variable index out of range");
  Poly p(nvars);
  p.add_term(MultiIndex::unit(j), Rational(1));
  return p;
}

Poly Poly::monomial(std::size_t nvars, const MultiIndex& alpha, const Rational& c) {
  if (alpha.support_size() > nvars) throw DimensionMismatch("monomial uses a variable outside the ring");
  Poly p(nvars);
  p.add_term(alpha, c);
  return p;
}

Rational Poly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const MultiIndex& alpha, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  check_same(other, "add");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same(other, "subtract");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b, "multiply");
  Poly out(a.n_);
  for (const auto& [alpha, ca] : a.terms_)
    for (const auto& [beta, cb] : b.terms_) out.add_term(alpha + beta, ca * cb);
  return out;
}

Poly Poly::multiply_truncated(const Poly& a, const Poly& b, const WeightVector& w, int max_weight) {
  a.check_same(b, "multiply");
  Poly out(a.n_);
  for (const auto& [alpha, ca] : a.terms_) {
    const int wa = w.weighted_degree(alpha);
    if (wa > max_weight) continue;
    for (const auto& [beta, cb] : b.terms_)
      if (wa + w.weighted_degree(beta) <= max_weight) out.add_term(alpha + beta, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [alpha, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::derivative(std::size_t j) const {
  if (j >= n_) throw DimensionMismatch("derivative: variable index out of range");
  Poly out(n_);
  for (const auto& [alpha, c] : terms_) {
    const int e = alpha[j];
    if (e == 0) continue;
    MultiIndex beta = alpha;
    beta.set(j, e - 1);
    out.add_term(beta, c * e);
  }
  return out;
}

Poly Poly::antiderivative(std::size_t j) const {
  if (j >= n_) throw DimensionMismatch("antiderivative: variable index out of range");
  Poly out(n_);
  for (const auto& [alpha, c] : terms_) {
    MultiIndex beta = alpha;
    const int e = alpha[j] + 1;
    beta.set(j, e);
    out.add_term(beta, c / e);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> x) const {
  if (x.size() != n_) throw DimensionMismatch("evaluate: point has wrong dimension");
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t j = 0; j < n_; ++j)
      if (alpha[j] != 0) term *= power(x[j], alpha[j]);
    sum += term;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionMismatch("evaluate: point has wrong dimension");
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = c.get_d();
    for (std::size_t j = 0; j < n_; ++j)
      for (int e = 0; e < alpha[j]; ++e) term *= x[j];
    sum += term;
  }
  return sum;
}

Poly Poly::homogeneous_part(int d, const WeightVector& w) const {
  Poly out(n_);
  for (const auto& [alpha, c] : terms_)
    if (w.weighted_degree(alpha) == d) out.terms_.emplace_hint(out.terms_.end(), alpha, c);
  return out;
}

Poly Poly::truncated(int max_weight, const WeightVector& w) const {
  Poly out(n_);
  for (const auto& [alpha, c] : terms_)
    if (w.weighted_degree(alpha) <= max_weight) out.terms_.emplace_hint(out.terms_.end(), alpha, c);
  return out;
}

std::optional<int> Poly::min_weight(const WeightVector& w) const {
  std::optional<int> best;
  for (const auto& [alpha, c] : terms_) {
    const int d = w.weighted_degree(alpha);
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<int> Poly::max_weight(const WeightVector& w) const {
  std::optional<int> best;
  for (const auto& [alpha, c] : terms_) {
    const int d = w.weighted_degree(alpha);
    if (!best || d > *best) best = d;
  }
  return best;
}

int Poly::total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

Poly Poly::embed(std::size_t new_nvars, std::span<const std::size_t> var_map) const {
  if (var_map.size() != n_) throw DimensionMismatch("embed: variable map has wrong length");
  Poly out(new_nvars);
  for (const auto& [alpha, c] : terms_) {
    MultiIndex beta;
    for (std::size_t j = 0; j < n_; ++j) {
      if (alpha[j] == 0) continue;
      if (var_map[j] >= new_nvars) throw DimensionMismatch("embed: target variable out of range");
      beta.set(var_map[j], beta[var_map[j]] + alpha[j]);
    }
    out.add_term(beta, c);
  }
  return out;
}

std::string to_string(const Poly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  auto name = [&](std::size_t j) { return j < names.size() ? names[j] : "x" + std::to_string(j + 1); };
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < p.nvars(); ++j) {
      if (alpha[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(j);
      if (alpha[j] > 1) mono += "^" + std::to_string(alpha[j]);
    }
    const mpz_class& num = mag.get_num();
    const mpz_class& den = mag.get_den();
    if (mono.empty()) {
      os << to_string(mag);
    } else {
      if (num != 1) os << num.get_str() << "*";
      os << mono;
      if (den != 1) os << "/" << den.get_str();
    }
  }
  return os.str();
}

PolyMap::PolyMap(std::size_t nvars, std::vector<Poly> components) : n_(nvars), c_(std::move(components)) {
  for (const auto& p : c_)
    if (p.nvars() != n_) throw DimensionMismatch("PolyMap: component lives in the wrong ring");
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<Poly> c;
  for (std::size_t j = 0; j < n; ++j) c.push_back(Poly::variable(n, j));
  return PolyMap(n, std::move(c));
}

PolyMap PolyMap::zero(std::size_t nvars, std::size_t ncomponents) {
  return PolyMap(nvars, std::vector<Poly>(ncomponents, Poly(nvars)));
}

PolyMap PolyMap::linear(const std::vector<std::vector<Rational>>& matrix, std::span<const Rational> offset) {
  const std::size_t rows = matrix.size();
  const std::size_t cols = rows == 0 ? 0 : matrix[0].size();
  if (!offset.empty() && offset.size() != cols) throw DimensionMismatch("linear map: offset has wrong length");
  std::vector<Poly> c;
  for (std::size_t k = 0; k < rows; ++k) {
    if (matrix[k].size() != cols) throw DimensionMismatch("linear map: ragged matrix");
    Poly p(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      p.add_term(MultiIndex::unit(j), matrix[k][j]);
      if (!offset.empty()) p.add_term(MultiIndex{}, -matrix[k][j] * offset[j]);
    }
    c.push_back(std::move(p));
  }
  return PolyMap(cols, std::move(c));
}

Point PolyMap::evaluate(std::span<const Rational> x) const {
  Point out;
  out.reserve(c_.size());
  for (const auto& p : c_) out.push_back(p.evaluate(x));
  return out;
}

std::vector<double> PolyMap::evaluate(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(c_.size());
  for (const auto& p : c_) out.push_back(p.evaluate(x));
  return out;
}

std::vector<std::vector<Rational>> PolyMap::jacobian_at(std::span<const Rational> x) const {
  std::vector<std::vector<Rational>> J(c_.size(), std::vector<Rational>(n_));
  for (std::size_t k = 0; k < c_.size(); ++k)
    for (std::size_t j = 0; j < n_; ++j) J[k][j] = c_[k].derivative(j).evaluate(x);
  return J;
}

PolyMap PolyMap::operator+(const PolyMap& other) const {
  if (other.n_ != n_ || other.size() != size()) throw DimensionMismatch("PolyMap +: shape mismatch");
  PolyMap out = *this;
  for (std::size_t k = 0; k < size(); ++k) out.c_[k] += other.c_[k];
  return out;
}

PolyMap PolyMap::operator-(const PolyMap& other) const {
  if (other.n_ != n_ || other.size() != size()) throw DimensionMismatch("PolyMap -: shape mismatch");
  PolyMap out = *this;
  for (std::size_t k = 0; k < size(); ++k) out.c_[k] -= other.c_[k];
  return out;
}

bool PolyMap::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

namespace {

// Lazily grown table of powers m_j^e.
class PowerCache {
 public:
  PowerCache(const PolyMap& m, const WeightVector* w, int max_weight)
      : m_(m), w_(w), max_weight_(max_weight), powers_(m.size()) {}

  const Poly& get(std::size_t j, int e) {
    auto& table = powers_[j];
    if (table.empty()) table.push_back(Poly::constant(m_.nvars(), Rational(1)));
    while (static_cast<int>(table.size()) <= e) {
      const Poly& last = table.back();
      table.push_back(w_ ? Poly::multiply_truncated(last, m_[j], *w_, max_weight_) : last * m_[j]);
    }
    return table[e];
  }

 private:
  const PolyMap& m_;
  const WeightVector* w_;
  int max_weight_;
  std::vector<std::vector<Poly>> powers_;
};

Poly substitute_impl(const Poly& f, const PolyMap& m, PowerCache& cache, const WeightVector* w, int max_weight) {
  if (m.size() != f.nvars())
    throw DimensionMismatch("substitute: map has " + std::to_string(m.size()) + " components, polynomial has " +
                            std::to_string(f.nvars()) + " variables");
  Poly out(m.nvars());
  for (const auto& [alpha, c] : f.terms()) {
    Poly term = Poly::constant(m.nvars(), c);
    for (std::size_t j = 0; j < f.nvars() && !term.is_zero(); ++j) {
      if (alpha[j] == 0) continue;
      const Poly& pw = cache.get(j, alpha[j]);
      term = w ? Poly::multiply_truncated(term, pw, *w, max_weight) : term * pw;
    }
    out += term;
  }
  return out;
}

}  // namespace

Poly substitute(const Poly& f, const PolyMap& m) {
  PowerCache cache(m, nullptr, 0);
  return substitute_impl(f, m, cache, nullptr, 0);
}

Poly substitute_truncated(const Poly& f, const PolyMap& m, const WeightVector& w, int max_weight) {
  PowerCache cache(m, &w, max_weight);
  return substitute_impl(f, m, cache, &w, max_weight);
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (f.nvars() != g.size()) throw DimensionMismatch("compose: inner map has the wrong number of components");
  PowerCache cache(g, nullptr, 0);
  std::vector<Poly> c;
  for (const auto& p : f.components()) c.push_back(substitute_impl(p, g, cache, nullptr, 0));
  return PolyMap(g.nvars(), std::move(c));
}

PolyMap compose_truncated(const PolyMap& f, const PolyMap& g, const WeightVector& w, int max_weight) {
  if (f.nvars() != g.size()) throw DimensionMismatch("compose: inner map has the wrong number of components");
  PowerCache cache(g, &w, max_weight);
  std::vector<Poly> c;
  for (const auto& p : f.components()) c.push_back(substitute_impl(p, g, cache, &w, max_weight));
  return PolyMap(g.nvars(), std::move(c));
}

PolyMap truncate(const PolyMap& m, const WeightVector& w, int max_weight) {
  std::vector<Poly> c;
  for (const auto& p : m.components()) c.push_back(p.truncated(max_weight, w));
  return PolyMap(m.nvars(), std::move(c));
}

}  // namespace carnot
