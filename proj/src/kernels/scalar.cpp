#include <cmath>

#include "tables.hpp"

namespace dcprox::kernels::detail {
namespace {

// Four-lane accumulation shared by every reduction; see kernels.hpp.
template <class Term>
double lane_sum(std::size_t n, Term term) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    l0 += term(i);
    l1 += term(i + 1);
    l2 += term(i + 2);
    l3 += term(i + 3);
  }
  double s = (l0 + l1) + (l2 + l3);
  for (; i < n; ++i) s += term(i);
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  return lane_sum(n, [&](std::size_t i) { return a[i] * b[i]; });
}

double squared_norm(const double* a, std::size_t n) {
  return lane_sum(n, [&](std::size_t i) { return a[i] * a[i]; });
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  return lane_sum(n, [&](std::size_t i) {
    const double t = a[i] - b[i];
    return t * t;
  });
}

// NaN is sticky so a bad residual can never compare as small.
double max_nan(double m, double v) { return (v > m || v != v) ? v : m; }

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = max_nan(m, std::fabs(a[i]));
  return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = max_nan(m, std::fabs(a[i] - b[i]));
  return m;
}

void subtract(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void axpy(double alpha, const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + alpha * x[i];
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Table kScalarTable{dot, squared_norm, squared_distance, max_abs,
                         max_abs_diff, subtract, axpy, scale};

}  // namespace dcprox::kernels::detail
