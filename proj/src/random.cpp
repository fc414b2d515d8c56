#include "carnot/random.hpp"

#include <cmath>

namespace carnot {

Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Point random_point(Rng& rng, std::size_t n, int max_num, int max_den) {
  Point p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(random_rational(rng, max_num, max_den));
  return p;
}

Point random_unit_direction(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0;
  do {
    s = 0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s < 1e-6);
  Point p;
  for (double x : v) {
    Rational q(static_cast<long>(std::lround(1000 * x / std::sqrt(s))), 1000);
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

std::vector<MultiIndex> monomials_in_weight_range(const WeightVector& w, int lo, int hi) {
  std::vector<MultiIndex> out;
  const std::size_t n = w.size();
  std::vector<int> alpha(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int weight) -> void {
    if (pos == n) {
      if (weight >= lo) out.emplace_back(alpha);
      return;
    }
    for (int e = 0; weight + e * w[pos] <= hi; ++e) {
      alpha[pos] = e;
      self(self, pos + 1, weight + e * w[pos]);
    }
    alpha[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational nonzero_rational(Rng& rng) {
  Rational q;
  do q = random_rational(rng); while (q == 0);
  return q;
}

}  // namespace

PolyMap random_homogeneous_unipotent(Rng& rng, const WeightVector& w, bool force_nontrivial) {
  const std::size_t n = w.size();
  PolyMap m = PolyMap::identity(n);
  std::vector<std::pair<std::size_t, MultiIndex>> slots;
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& alpha : monomials_in_weight_range(w, w[k], w[k]))
      if (alpha.degree() >= 2) slots.emplace_back(k, alpha);
  bool any = false;
  for (const auto& [k, alpha] : slots)
    if (coin(rng, 0.5)) {
      m[k].add_term(alpha, nonzero_rational(rng));
      any = true;
    }
  if (force_nontrivial && !any && !slots.empty()) {
    const auto& [k, alpha] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
    m[k].add_term(alpha, nonzero_rational(rng));
  }
  return m;
}

PolyMap random_ow_perturbation(Rng& rng, const WeightVector& w, int m, int extra) {
  const std::size_t n = w.size();
  PolyMap p = PolyMap::zero(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& alpha : monomials_in_weight_range(w, w[k] + m, w[k] + m + extra))
      if (alpha.degree() >= 2 && coin(rng, 0.3)) p[k].add_term(alpha, nonzero_rational(rng));
  return p;
}

PolyMap random_class_e(Rng& rng, const WeightVector& w) {
  const std::size_t n = w.size();
  PolyMap m = PolyMap::identity(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& alpha : monomials_in_weight_range(w, 2, w[k])) {
      if (alpha.degree() < 2) continue;
      bool lower = true;
      for (std::size_t l = 0; l < n; ++l)
        if (alpha[l] != 0 && w[l] >= w[k]) lower = false;
      if (lower && coin(rng, 0.5)) m[k].add_term(alpha, nonzero_rational(rng));
    }
  return m;
}

std::vector<VectorField> random_triangular_fields(Rng& rng, const WeightVector& w, int max_degree) {
  const std::size_t n = w.size();
  std::vector<VectorField> fields;
  for (std::size_t j = 0; j < n; ++j) {
    VectorField x = VectorField::coordinate(n, j);
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& alpha : monomials_in_weight_range(w, 1, max_degree * w.step())) {
        if (alpha.degree() > max_degree) continue;
        bool lower = true;
        for (std::size_t l = 0; l < n; ++l)
          if (alpha[l] != 0 && w[l] >= w[k]) lower = false;
        if (lower && coin(rng, 0.25)) x[k].add_term(alpha, nonzero_rational(rng));
      }
    fields.push_back(std::move(x));
  }
  return fields;
}

Frame random_adapted_step2_frame(Rng& rng, std::size_t n1, std::size_t n2) {
  const std::size_t n = n1 + n2;
  std::vector<int> weights(n1, 1);
  weights.resize(n, 2);
  const WeightVector w(weights);
  std::vector<VectorField> fields;
  for (std::size_t j = 0; j < n; ++j) {
    VectorField x = VectorField::coordinate(n, j);
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& alpha : monomials_in_weight_range(w, 1, 3)) {
        if (alpha.degree() > 2) continue;
        const int degree = w.weighted_degree(alpha) - w[k];
        // keep X_j of weight >= -w_j and X_j(0) = d_j
        if (degree < -w[j]) continue;
        if (coin(rng, 0.3)) x[k].add_term(alpha, nonzero_rational(rng));
      }
    fields.push_back(std::move(x));
  }
  return Frame(w, zero_point(n), std::move(fields));
}

}  // namespace carnot
