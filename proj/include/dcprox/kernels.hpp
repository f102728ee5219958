#pragma once

// Dense vector primitives used on every iteration of the solvers and
// certificates. Each primitive has a scalar reference implementation and,
// where the CPU supports it, an AVX2 (x86-64) or NEON (aarch64) variant.
// The backend is picked once at startup from CPU features and can be
// overridden with DCPROX_SIMD=scalar|avx2|neon or set_backend().
//
// Reductions accumulate in four interleaved lanes (element i goes to lane
// i % 4), combine as (l0 + l1) + (l2 + l3), then add the tail in order.
// The scalar path follows the same order, so all backends are bit-identical
// as long as the build does not contract multiply-add into FMA.

#include <cstddef>
#include <span>
#include <string_view>

namespace dcprox::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

/// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend b);

Backend active_backend();

/// Force a backend. Throws ContractViolation if it is unavailable.
void set_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
/// ||a - b||^2
double squared_distance(std::span<const double> a, std::span<const double> b);
/// max_i |a_i|
double max_abs(std::span<const double> a);
/// max_i |a_i - b_i|
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// out = a - b
void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out = y + alpha * x
void axpy(double alpha, std::span<const double> x, std::span<const double> y, std::span<double> out);
/// out = alpha * x
void scale(double alpha, std::span<const double> x, std::span<double> out);

/// Function table for one backend. Exposed so equivalence tests can call a
/// specific variant without touching the process-wide selection.
struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_norm)(const double*, std::size_t);
  double (*squared_distance)(const double*, const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  void (*subtract)(const double*, const double*, double*, std::size_t);
  void (*axpy)(double, const double*, const double*, double*, std::size_t);
  void (*scale)(double, const double*, double*, std::size_t);
};

/// Table for a backend; nullptr if the backend is not compiled in.
const Table* table_for(Backend b);

}  // namespace dcprox::kernels
