#pragma once

// Proximal distances d(x, y) on an open convex set C, their gradients in the
// first argument, and the induced distances H used by the Fejer estimates.
//
// Shipped kernels (all coordinate-separable):
//   sq_euclidean       C = R^n (or an open box), d = H = 1/2 ||x - y||^2
//   boltzmann_shannon  C = R^n_{++}, Bregman distance of t log t - t
//   burg               C = R^n_{++}, Bregman distance of -log t
//   second_order       C = R^n_{++}, d = sum y_i^2 phi(x_i / y_i),
//                      phi(t) = t - log t - 1 + theta/2 (t - 1)^2,
//                      H = (1 + theta)/2 ||x - y||^2

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dcprox/error.hpp"

namespace dcprox {

/// Value returned by eval_d / eval_H outside the effective domain.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// Minimum per-coordinate clearance for a point to count as strictly inside C.
inline constexpr double kBoundaryMargin = 1e-12;

enum class DomainKind { AllSpace, PositiveOrthant, OpenBox };

class DomainC {
 public:
  static DomainC all_space(std::size_t dim);
  static DomainC positive_orthant(std::size_t dim);
  /// Requires lower_i < upper_i for all i.
  static DomainC open_box(Point lower, Point upper);

  DomainKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }

  /// Strict interiority with clearance kBoundaryMargin.
  bool contains(const Point& x) const;
  bool in_closure(const Point& x) const;
  /// Euclidean projection onto the closure (coordinate clamp).
  Point project_closure(const Point& x) const;
  bool is_bounded() const { return kind_ == DomainKind::OpenBox; }

  std::string name() const;

  friend bool operator==(const DomainC&, const DomainC&) = default;

 private:
  DomainC(DomainKind kind, std::size_t dim, Point lower, Point upper);

  DomainKind kind_;
  std::size_t dim_;
  Point lower_;
  Point upper_;
};

enum class Kernel { SquaredEuclidean, BoltzmannShannon, Burg, SecondOrderHomogeneous };

std::string_view kernel_name(Kernel k);
/// Inverse of kernel_name. Throws ContractViolation on unknown names.
Kernel kernel_from_name(std::string_view name);
inline constexpr Kernel kAllKernels[] = {Kernel::SquaredEuclidean, Kernel::BoltzmannShannon,
                                         Kernel::Burg, Kernel::SecondOrderHomogeneous};

/// A proximal distance d with its induced distance H on a domain C.
/// Immutable after construction.
class ProxDistancePair {
 public:
  /// Bregman and second-order kernels require a positive orthant domain;
  /// sq_euclidean accepts any domain. theta is used by second_order only and
  /// must be >= 1.
  ProxDistancePair(Kernel kernel, DomainC domain, double theta = 1.0);

  /// Kernel on its natural domain of dimension dim.
  static ProxDistancePair natural(Kernel kernel, std::size_t dim, double theta = 1.0);

  Kernel kernel() const { return kernel_; }
  const DomainC& domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }
  double theta() const { return theta_; }

  /// d(., y) blows up at the boundary of C, so minimizers stay interior
  /// automatically. False for sq_euclidean.
  bool is_barrier() const { return kernel_ != Kernel::SquaredEuclidean; }

  /// (d2) holds: dom d(., y) is contained in the closure of C. sq_euclidean on
  /// a bounded box fails this; such pairs can leave C and raise InfeasibleStep.
  bool satisfies_d2() const;

  /// Metadata: (d, H) registered as a Phi(C-bar) pair with H >= 0, so (H2)
  /// may be probed with z on the boundary. Declared, not verified.
  bool closure_pair() const { return satisfies_d2(); }

  std::string id() const;

  friend bool operator==(const ProxDistancePair&, const ProxDistancePair&) = default;

 private:
  Kernel kernel_;
  DomainC domain_;
  double theta_;
};

/// d(x, y). y strictly inside C; returns kInfinite when x leaves dom d(., y).
double eval_d(const ProxDistancePair& pair, const Point& x, const Point& y);

/// Gradient of d(., y) at x. Both points strictly inside C.
Point grad1_d(const ProxDistancePair& pair, const Point& x, const Point& y);

/// Diagonal of the Hessian of d(., y) at x (all shipped kernels are separable).
Point hess1_d_diag(const ProxDistancePair& pair, const Point& x, const Point& y);

/// H(x, y). x in the closure of C, y strictly inside.
double eval_H(const ProxDistancePair& pair, const Point& x, const Point& y);

/// H(z, x) - H(z, y) - <z - y, grad1_d(y, x)>. Nonnegative certifies (H2)
/// at the triple.
double h2_residual(const ProxDistancePair& pair, const Point& z, const Point& x, const Point& y);

/// The unique z strictly inside C with lambda * c + grad1_d(z, y) = 0, i.e.
/// the minimizer of lambda <c, z> + d(z, y). Throws InfeasibleStep when that
/// point is not strictly inside C.
Point kernel_map_inverse(const ProxDistancePair& pair, const Point& y, const Point& c, double lambda);

}  // namespace dcprox
