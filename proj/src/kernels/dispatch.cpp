#include <atomic>
#include <cstdlib>
#include <string>

#include "dcprox/error.hpp"
#include "tables.hpp"

namespace dcprox::kernels {
namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(DCPROX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(DCPROX_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on aarch64.
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (const char* env = std::getenv("DCPROX_SIMD")) {
    const std::string want(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (want == backend_name(b) && backend_available(b)) return b;
    }
  }
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{table_for(detect())};
  return table;
}

std::atomic<Backend>& current_backend() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

const Table& T() { return *current().load(std::memory_order_relaxed); }

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw ContractViolation("kernels: dimension mismatch");
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

const Table* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::kScalarTable;
    case Backend::Avx2:
#if defined(DCPROX_HAVE_AVX2)
      return &detail::kAvx2Table;
#else
      return nullptr;
#endif
    case Backend::Neon:
#if defined(DCPROX_HAVE_NEON)
      return &detail::kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

bool backend_available(Backend b) { return table_for(b) != nullptr && cpu_supports(b); }

Backend active_backend() { return current_backend().load(); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw ContractViolation("kernels: backend '" + std::string(backend_name(b)) + "' unavailable");
  }
  current().store(table_for(b));
  current_backend().store(b);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return T().dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> a) { return T().squared_norm(a.data(), a.size()); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return T().squared_distance(a.data(), b.data(), a.size());
}

double max_abs(std::span<const double> a) { return T().max_abs(a.data(), a.size()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return T().max_abs_diff(a.data(), b.data(), a.size());
}

void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_same(a.size(), b.size());
  check_same(a.size(), out.size());
  T().subtract(a.data(), b.data(), out.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<const double> y, std::span<double> out) {
  check_same(x.size(), y.size());
  check_same(x.size(), out.size());
  T().axpy(alpha, x.data(), y.data(), out.data(), x.size());
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  check_same(x.size(), out.size());
  T().scale(alpha, x.data(), out.data(), x.size());
}

}  // namespace dcprox::kernels
