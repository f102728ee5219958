// Compiled with -mavx2 (no FMA). Only called after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace dcprox::kernels::detail {
namespace {

inline double combine(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double s = combine(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, va));
  }
  double s = combine(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
  }
  double s = combine(acc);
  for (; i < n; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double max_nan(double m, double v) { return (v > m || v != v) ? v : m; }

// max is order-independent, so lane layout does not matter here. maxpd drops
// NaN, so unordered lanes are tracked separately.
double max_of(__m256d m, __m256d nan_seen) {
  if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  return std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
}

double max_abs(const double* a, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  __m256d bad = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_and_pd(_mm256_loadu_pd(a + i), kAbsMask);
    bad = _mm256_or_pd(bad, _mm256_cmp_pd(t, t, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, t);
  }
  double r = max_of(m, bad);
  for (; i < n; ++i) r = max_nan(r, std::fabs(a[i]));
  return r;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  __m256d bad = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)), kAbsMask);
    bad = _mm256_or_pd(bad, _mm256_cmp_pd(t, t, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, t);
  }
  double r = max_of(m, bad);
  for (; i < n; ++i) r = max_nan(r, std::fabs(a[i] - b[i]));
  return r;
}

void subtract(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void axpy(double alpha, const double* x, const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) out[i] = y[i] + alpha * x[i];
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Table kAvx2Table{dot, squared_norm, squared_distance, max_abs,
                       max_abs_diff, subtract, axpy, scale};

}  // namespace dcprox::kernels::detail
