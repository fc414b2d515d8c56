#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "carnot/vfield.hpp"

namespace carnot {

/// Flattened double-precision copy of a polynomial for fast evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);
  double evaluate(const double* x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> coef_;
  std::vector<std::uint8_t> exps_;  // n_ exponents per term
};

class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const VectorField& x);
  std::size_t dim() const { return c_.size(); }
  void evaluate(const double* x, double* out) const;

 private:
  std::vector<CompiledPoly> c_;
};

using Rhs = std::function<void(const double* x, double* dx)>;

/// Fixed-step classic RK4 over [0, duration]; negative durations integrate
/// backwards. n_steps = ceil(|duration| / step).
std::vector<double> rk4(const Rhs& rhs, std::span<const double> y0, double duration, double step);

/// One RK4 flow: start y, direction xi, fields combined as sum xi_j X_j.
struct FlowJob {
  std::vector<double> y;
  std::vector<double> xi;
  double duration = 1.0;
};

namespace serial {
std::vector<std::vector<double>> batch_flows(const std::vector<CompiledField>& fields,
                                             const std::vector<FlowJob>& jobs, double step);
/// out[i] = fn(i)
template <class T>
std::vector<T> map_indices(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}
}  // namespace serial

namespace parallel {
std::vector<std::vector<double>> batch_flows(const std::vector<CompiledField>& fields,
                                             const std::vector<FlowJob>& jobs, double step);
/// OpenMP version of serial::map_indices; results in index order, the
/// first exception thrown by fn is rethrown.
template <class T>
std::vector<T> map_indices(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(carnot_map_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}
}  // namespace parallel

}  // namespace carnot
