#include "dcprox/proxdist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcprox/vec.hpp"

namespace dcprox {

DomainC::DomainC(DomainKind kind, std::size_t dim, Point lower, Point upper)
    : kind_(kind), dim_(dim), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (dim_ == 0) throw ContractViolation("DomainC: dimension must be positive");
}

DomainC DomainC::all_space(std::size_t dim) { return DomainC(DomainKind::AllSpace, dim, {}, {}); }

DomainC DomainC::positive_orthant(std::size_t dim) {
  return DomainC(DomainKind::PositiveOrthant, dim, {}, {});
}

DomainC DomainC::open_box(Point lower, Point upper) {
  if (lower.size() != upper.size()) throw ContractViolation("DomainC: box bounds differ in dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw ContractViolation("DomainC: box requires finite lower_i < upper_i");
    }
  }
  const std::size_t n = lower.size();
  return DomainC(DomainKind::OpenBox, n, std::move(lower), std::move(upper));
}

bool DomainC::contains(const Point& x) const {
  vec::require_dim(x, dim_, "DomainC::contains");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(x[i])) return false;
    switch (kind_) {
      case DomainKind::AllSpace:
        break;
      case DomainKind::PositiveOrthant:
        if (!(x[i] > kBoundaryMargin)) return false;
        break;
      case DomainKind::OpenBox:
        if (!(x[i] - lower_[i] > kBoundaryMargin) || !(upper_[i] - x[i] > kBoundaryMargin)) return false;
        break;
    }
  }
  return true;
}

bool DomainC::in_closure(const Point& x) const {
  vec::require_dim(x, dim_, "DomainC::in_closure");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(x[i])) return false;
    if (kind_ == DomainKind::PositiveOrthant && x[i] < 0.0) return false;
    if (kind_ == DomainKind::OpenBox && (x[i] < lower_[i] || x[i] > upper_[i])) return false;
  }
  return true;
}

Point DomainC::project_closure(const Point& x) const {
  vec::require_dim(x, dim_, "DomainC::project_closure");
  Point p = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (kind_ == DomainKind::PositiveOrthant) p[i] = std::max(p[i], 0.0);
    if (kind_ == DomainKind::OpenBox) p[i] = std::clamp(p[i], lower_[i], upper_[i]);
  }
  return p;
}

std::string DomainC::name() const {
  switch (kind_) {
    case DomainKind::AllSpace:
      return "all_space";
    case DomainKind::PositiveOrthant:
      return "positive_orthant";
    case DomainKind::OpenBox:
      return "box";
  }
  return "unknown";
}

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::SquaredEuclidean: return "sq_euclidean";
    case Kernel::BoltzmannShannon: return "boltzmann_shannon";
    case Kernel::Burg: return "burg";
    case Kernel::SecondOrderHomogeneous: return "second_order";
  }
  return "unknown";
}

Kernel kernel_from_name(std::string_view name) {
  for (Kernel k : kAllKernels) {
    if (kernel_name(k) == name) return k;
  }
  throw ContractViolation("unknown kernel '" + std::string(name) +
                          "' (valid: boltzmann_shannon, burg, second_order, sq_euclidean)");
}

ProxDistancePair::ProxDistancePair(Kernel kernel, DomainC domain, double theta)
    : kernel_(kernel), domain_(std::move(domain)), theta_(theta) {
  if (kernel_ != Kernel::SquaredEuclidean && domain_.kind() != DomainKind::PositiveOrthant) {
    throw ContractViolation(std::string(kernel_name(kernel_)) + " requires the positive orthant domain");
  }
  // Below 1 the quadratic H fails (H2), e.g. theta = 0.9 gives residuals near -20.
  if (kernel_ == Kernel::SecondOrderHomogeneous && !(theta_ >= 1.0 && std::isfinite(theta_))) {
    throw ContractViolation("second_order: theta must be finite and >= 1");
  }
  if (kernel_ != Kernel::SecondOrderHomogeneous) theta_ = 1.0;
}

ProxDistancePair ProxDistancePair::natural(Kernel kernel, std::size_t dim, double theta) {
  return ProxDistancePair(kernel,
                          kernel == Kernel::SquaredEuclidean ? DomainC::all_space(dim)
                                                             : DomainC::positive_orthant(dim),
                          theta);
}

bool ProxDistancePair::satisfies_d2() const {
  return !(kernel_ == Kernel::SquaredEuclidean && domain_.kind() != DomainKind::AllSpace);
}

std::string ProxDistancePair::id() const {
  std::ostringstream os;
  os << kernel_name(kernel_);
  if (kernel_ == Kernel::SecondOrderHomogeneous) os << "(theta=" << theta_ << ")";
  os << "@" << domain_.name();
  return os.str();
}

namespace {

void require_interior(const ProxDistancePair& pair, const Point& y, const char* what) {
  vec::require_dim(y, pair.dim(), what);
  if (!pair.domain().contains(y)) {
    throw DomainError(std::string(what) + ": point is not strictly inside " + pair.domain().name());
  }
}

}  // namespace

double eval_d(const ProxDistancePair& pair, const Point& x, const Point& y) {
  require_interior(pair, y, "eval_d");
  vec::require_dim(x, pair.dim(), "eval_d");
  if (!pair.domain().in_closure(x)) return kInfinite;
  const std::size_t n = x.size();
  double s = 0.0;
  switch (pair.kernel()) {
    case Kernel::SquaredEuclidean:
      return 0.5 * kernels::squared_distance(x, y);
    case Kernel::BoltzmannShannon:
      for (std::size_t i = 0; i < n; ++i) {
        s += (x[i] > 0.0 ? x[i] * std::log(x[i] / y[i]) : 0.0) - x[i] + y[i];
      }
      return s;
    case Kernel::Burg:
      for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) return kInfinite;
        const double t = x[i] / y[i];
        s += t - std::log(t) - 1.0;
      }
      return s;
    case Kernel::SecondOrderHomogeneous:
      for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) return kInfinite;
        const double t = x[i] / y[i];
        s += y[i] * y[i] * (t - std::log(t) - 1.0 + 0.5 * pair.theta() * (t - 1.0) * (t - 1.0));
      }
      return s;
  }
  return kInfinite;
}

Point grad1_d(const ProxDistancePair& pair, const Point& x, const Point& y) {
  require_interior(pair, y, "grad1_d");
  require_interior(pair, x, "grad1_d");
  const std::size_t n = x.size();
  Point g(n);
  switch (pair.kernel()) {
    case Kernel::SquaredEuclidean:
      kernels::subtract(x, y, g);
      break;
    case Kernel::BoltzmannShannon:
      for (std::size_t i = 0; i < n; ++i) g[i] = std::log(x[i] / y[i]);
      break;
    case Kernel::Burg:
      for (std::size_t i = 0; i < n; ++i) g[i] = 1.0 / y[i] - 1.0 / x[i];
      break;
    case Kernel::SecondOrderHomogeneous:
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = y[i] - y[i] * y[i] / x[i] + pair.theta() * (x[i] - y[i]);
      }
      break;
  }
  return g;
}

Point hess1_d_diag(const ProxDistancePair& pair, const Point& x, const Point& y) {
  require_interior(pair, y, "hess1_d_diag");
  require_interior(pair, x, "hess1_d_diag");
  const std::size_t n = x.size();
  Point h(n, 1.0);
  switch (pair.kernel()) {
    case Kernel::SquaredEuclidean:
      break;
    case Kernel::BoltzmannShannon:
      for (std::size_t i = 0; i < n; ++i) h[i] = 1.0 / x[i];
      break;
    case Kernel::Burg:
      for (std::size_t i = 0; i < n; ++i) h[i] = 1.0 / (x[i] * x[i]);
      break;
    case Kernel::SecondOrderHomogeneous:
      for (std::size_t i = 0; i < n; ++i) h[i] = y[i] * y[i] / (x[i] * x[i]) + pair.theta();
      break;
  }
  return h;
}

double eval_H(const ProxDistancePair& pair, const Point& x, const Point& y) {
  if (pair.kernel() != Kernel::SecondOrderHomogeneous) return eval_d(pair, x, y);
  require_interior(pair, y, "eval_H");
  vec::require_dim(x, pair.dim(), "eval_H");
  if (!pair.domain().in_closure(x)) return kInfinite;
  return 0.5 * (1.0 + pair.theta()) * kernels::squared_distance(x, y);
}

double h2_residual(const ProxDistancePair& pair, const Point& z, const Point& x, const Point& y) {
  require_interior(pair, x, "h2_residual");
  require_interior(pair, y, "h2_residual");
  vec::require_dim(z, pair.dim(), "h2_residual");
  const bool z_ok = pair.closure_pair() ? pair.domain().in_closure(z) : pair.domain().contains(z);
  if (!z_ok) throw DomainError("h2_residual: z outside the admissible set");
  const Point grad = grad1_d(pair, y, x);
  return eval_H(pair, z, x) - eval_H(pair, z, y) - vec::dot(vec::sub(z, y), grad);
}

Point kernel_map_inverse(const ProxDistancePair& pair, const Point& y, const Point& c, double lambda) {
  require_interior(pair, y, "kernel_map_inverse");
  vec::require_dim(c, pair.dim(), "kernel_map_inverse");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ContractViolation("kernel_map_inverse: lambda must be positive and finite");
  }
  const std::size_t n = y.size();
  Point z(n);
  switch (pair.kernel()) {
    case Kernel::SquaredEuclidean:
      z = vec::axpy(-lambda, c, y);
      break;
    case Kernel::BoltzmannShannon:
      for (std::size_t i = 0; i < n; ++i) z[i] = y[i] * std::exp(-lambda * c[i]);
      break;
    case Kernel::Burg:
      // 1/z = 1/y + lambda c needs to stay positive.
      for (std::size_t i = 0; i < n; ++i) {
        const double s = 1.0 / y[i] + lambda * c[i];
        if (!(s > 0.0)) throw InfeasibleStep("burg step: 1/y + lambda c <= 0, no interior minimizer");
        z[i] = 1.0 / s;
      }
      break;
    case Kernel::SecondOrderHomogeneous: {
      // theta z^2 + B z - y^2 = 0 with B = lambda c + (1 - theta) y; positive root,
      // written to avoid cancellation for either sign of B.
      const double theta = pair.theta();
      for (std::size_t i = 0; i < n; ++i) {
        const double b = lambda * c[i] + (1.0 - theta) * y[i];
        const double disc = std::sqrt(b * b + 4.0 * theta * y[i] * y[i]);
        z[i] = b >= 0.0 ? 2.0 * y[i] * y[i] / (b + disc) : (disc - b) / (2.0 * theta);
      }
      break;
    }
  }
  if (!pair.domain().contains(z)) {
    throw InfeasibleStep("proximal step leaves " + pair.domain().name() + " (shrink lambda)");
  }
  return z;
}

}  // namespace dcprox
