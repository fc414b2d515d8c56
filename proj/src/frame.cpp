#include "carnot/frame.hpp"

namespace carnot {

Frame::Frame(WeightVector w, Point base_point, std::vector<VectorField> fields)
    : w_(std::move(w)), a_(std::move(base_point)), x_(std::move(fields)) {
  if (w_.size() != x_.size() || a_.size() != x_.size())
    throw DimensionMismatch("frame: weights, base point and fields must have the same length");
  for (const auto& f : x_)
    if (f.dim() != x_.size()) throw DimensionMismatch("frame: field dimension differs from frame size");
  inverse(coefficient_matrix(a_));
}

Matrix Frame::coefficient_matrix(std::span<const Rational> x) const {
  Matrix b;
  for (const auto& f : x_) b.push_back(f.evaluate(x));
  return b;
}

bool Frame::linearly_adapted() const {
  return coefficient_matrix(zero_point(dim())) == identity_matrix(dim());
}

BracketTable structure_constants_at(const Frame& frame) {
  const std::size_t n = frame.dim();
  const auto& w = frame.weights();
  const Matrix bt = transpose(frame.coefficient_matrix(frame.base_point()));
  BracketTable table{StructureConstants(w), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point v = bracket(frame[i], frame[j]).evaluate(frame.base_point());
      const Point l = solve(bt, v);
      for (std::size_t k = 0; k < n; ++k) {
        if (l[k] == 0) continue;
        if (w[k] > w[i] + w[j])
          throw ShapeError("bracket condition violated: [X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) +
                           "] has component " + to_string(l[k]) + " along X" + std::to_string(k + 1) +
                           " of weight " + std::to_string(w[k]));
        table.full[{i, j, k}] = l[k];
        if (w[k] == w[i] + w[j]) table.graded.set(i, j, k, l[k]);
      }
    }
  return table;
}

std::optional<int> function_order(const Poly& f, const Frame& frame, int n_max) {
  const auto& w = frame.weights();
  const auto& a = frame.base_point();
  if (n_max <= 0) return std::nullopt;
  // level[d] holds X_I f for all sequences with <I> = d.
  std::vector<std::vector<Poly>> level(n_max);
  level[0].push_back(f);
  for (int d = 0; d < n_max; ++d) {
    for (const auto& g : level[d])
      if (g.evaluate(a) != 0) return d;
    for (const auto& g : level[d]) {
      if (g.is_zero()) continue;
      for (std::size_t i = 0; i < frame.dim(); ++i) {
        const int e = d + w[i];
        if (e >= n_max) continue;
        Poly h = frame[i].apply(g);
        if (!h.is_zero()) level[e].push_back(std::move(h));
      }
    }
  }
  return std::nullopt;
}

namespace {
void require_adapted(const Frame& frame) {
  if (!frame.linearly_adapted()) throw ShapeError("frame is not linearly adapted at 0");
}
}  // namespace

VectorField model_field(const Frame& frame, std::size_t j) {
  require_adapted(frame);
  const auto& w = frame.weights();
  const auto parts = expand(frame[j], w);
  if (!parts.empty() && parts.begin()->first < -w[j])
    throw ShapeError("X" + std::to_string(j + 1) + " has weight " + std::to_string(parts.begin()->first) + " < -" +
                     std::to_string(w[j]) + "; coordinates are not privileged");
  auto it = parts.find(-w[j]);
  return it == parts.end() ? VectorField::zero(frame.dim()) : it->second;
}

VectorField model_field_jet(const Frame& frame, std::size_t j) {
  require_adapted(frame);
  const auto& w = frame.weights();
  const std::size_t n = frame.dim();
  const Point zero = zero_point(n);
  VectorField out = VectorField::coordinate(n, j);
  for (std::size_t k = 0; k < n; ++k) {
    const int target = w[k] - w[j];
    if (target <= 0) continue;
    // Enumerate alpha with <alpha> = target.
    std::vector<int> alpha(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
      if (pos == n) {
        if (remaining != 0) return;
        Poly d = frame[j][k];
        for (std::size_t l = 0; l < n; ++l)
          for (int e = 0; e < alpha[l]; ++e) d = d.derivative(l);
        const MultiIndex mi(alpha);
        const Rational c = d.evaluate(zero) / mi.factorial();
        out[k].add_term(mi, c);
        return;
      }
      for (int e = 0; e * w[pos] <= remaining; ++e) {
        alpha[pos] = e;
        self(self, pos + 1, remaining - e * w[pos]);
      }
      alpha[pos] = 0;
    };
    rec(rec, 0, target);
  }
  return out;
}

std::vector<VectorField> model_fields(const Frame& frame) {
  std::vector<VectorField> out;
  for (std::size_t j = 0; j < frame.dim(); ++j) out.push_back(model_field(frame, j));
  return out;
}

bool is_graded_triangular(const std::vector<VectorField>& fields, const WeightVector& w) {
  const std::size_t n = w.size();
  if (fields.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (fields[j].dim() != n) return false;
    for (std::size_t k = 0; k < n; ++k) {
      const Poly& c = fields[j][k];
      if (!c.uses_only([&](std::size_t l) { return w[l] < w[k]; })) return false;
      if (c.constant_term() != (k == j ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace carnot
