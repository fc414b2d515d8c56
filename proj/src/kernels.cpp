#include "carnot/kernels.hpp"

#include <cmath>

namespace carnot {

CompiledPoly::CompiledPoly(const Poly& p) : n_(p.nvars()) {
  for (const auto& [alpha, c] : p.terms()) {
    coef_.push_back(c.get_d());
    for (std::size_t j = 0; j < n_; ++j) exps_.push_back(static_cast<std::uint8_t>(alpha[j]));
  }
}

double CompiledPoly::evaluate(const double* x) const {
  double sum = 0.0;
  const std::uint8_t* e = exps_.data();
  for (double c : coef_) {
    double term = c;
    for (std::size_t j = 0; j < n_; ++j, ++e)
      for (std::uint8_t k = 0; k < *e; ++k) term *= x[j];
    sum += term;
  }
  return sum;
}

CompiledField::CompiledField(const VectorField& x) {
  for (const auto& p : x.coefficients()) c_.emplace_back(p);
}

void CompiledField::evaluate(const double* x, double* out) const {
  for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k].evaluate(x);
}

std::vector<double> rk4(const Rhs& rhs, std::span<const double> y0, double duration, double step) {
  const std::size_t n = y0.size();
  std::vector<double> y(y0.begin(), y0.end());
  if (duration == 0.0) return y;
  const auto steps = static_cast<long>(std::ceil(std::abs(duration) / step));
  const double h = duration / static_cast<double>(steps);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long s = 0; s < steps; ++s) {
    rhs(y.data(), k1.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

namespace {

std::vector<double> run_job(const std::vector<CompiledField>& fields, const FlowJob& job, double step) {
  const std::size_t n = job.y.size();
  std::vector<double> buf(n);
  auto rhs = [&](const double* x, double* dx) {
    for (std::size_t k = 0; k < n; ++k) dx[k] = 0.0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (job.xi[j] == 0.0) continue;
      fields[j].evaluate(x, buf.data());
      for (std::size_t k = 0; k < n; ++k) dx[k] += job.xi[j] * buf[k];
    }
  };
  return rk4(rhs, job.y, job.duration, step);
}

}  // namespace

namespace serial {
std::vector<std::vector<double>> batch_flows(const std::vector<CompiledField>& fields,
                                             const std::vector<FlowJob>& jobs, double step) {
  std::vector<std::vector<double>> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(run_job(fields, job, step));
  return out;
}
}  // namespace serial

namespace parallel {
std::vector<std::vector<double>> batch_flows(const std::vector<CompiledField>& fields,
                                             const std::vector<FlowJob>& jobs, double step) {
  std::vector<std::vector<double>> out(jobs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(jobs.size()); ++i) out[i] = run_job(fields, jobs[i], step);
  return out;
}
}  // namespace parallel

}  // namespace carnot
