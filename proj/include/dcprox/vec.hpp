#pragma once

// Point-returning conveniences over the dispatched kernels.

#include <cmath>

#include "dcprox/error.hpp"
#include "dcprox/kernels.hpp"

namespace dcprox::vec {

inline Point sub(const Point& a, const Point& b) {
  Point out(a.size());
  kernels::subtract(a, b, out);
  return out;
}

/// y + alpha * x
inline Point axpy(double alpha, const Point& x, const Point& y) {
  Point out(x.size());
  kernels::axpy(alpha, x, y, out);
  return out;
}

inline Point scaled(double alpha, const Point& x) {
  Point out(x.size());
  kernels::scale(alpha, x, out);
  return out;
}

inline double dot(const Point& a, const Point& b) { return kernels::dot(a, b); }
inline double norm(const Point& a) { return std::sqrt(kernels::squared_norm(a)); }
inline double dist(const Point& a, const Point& b) { return std::sqrt(kernels::squared_distance(a, b)); }
inline double inf_norm(const Point& a) { return kernels::max_abs(a); }

inline void require_dim(const Point& x, std::size_t n, const char* what) {
  if (x.size() != n) {
    throw ContractViolation(std::string(what) + ": expected dimension " + std::to_string(n) +
                            ", got " + std::to_string(x.size()));
  }
}

}  // namespace dcprox::vec
