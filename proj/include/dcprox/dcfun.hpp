#pragma once

// Convex oracles (value + one subgradient) and the DC problem f = g - h.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcprox/error.hpp"
#include "dcprox/proxdist.hpp"

namespace dcprox {

/// 1/2 x'Ax + b'x + c, kept alongside quadratic oracles so solvers can use
/// closed forms.
struct QuadraticForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double c = 0.0;
};

struct ConvexOracle {
  std::size_t dim = 0;
  std::function<double(const Point&)> eval;
  /// Any element of the subdifferential at the point.
  std::function<Point(const Point&)> subgrad;
  /// Empty unless the oracle is C^2 with a known Hessian.
  std::function<Eigen::MatrixXd(const Point&)> hessian;
  /// Strong convexity modulus rho in f(y) >= f(x) + <v, y-x> + rho/2 ||y-x||^2; 0 if none.
  double strong_convexity_modulus = 0.0;
  /// Lipschitz constant L of the gradient, when smooth.
  std::optional<double> grad_lipschitz;
  bool is_smooth = false;
  /// kappa with  subdiff(x) in subdiff(y) + kappa ||x-y|| B; unset when unbounded.
  std::optional<double> subdiff_lipschitz;
  /// subgrad_i depends on x_i only.
  bool is_separable = false;
  std::optional<QuadraticForm> quadratic;
  std::string description;
};

namespace oracles {

/// 1/2 x'Ax + b'x + c with A symmetric positive semidefinite.
ConvexOracle quadratic(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double c = 0.0);
/// max_i (a_i'x + b_i); subgradient is a_i for the smallest attaining i.
ConvexOracle affine_max(const std::vector<Point>& rows, const std::vector<double>& offsets);
/// mu/2 ||x||^2
ConvexOracle scaled_norm_sq(std::size_t dim, double mu);
ConvexOracle zero(std::size_t dim);
/// Pointwise sum; moduli, Lipschitz constants and kappa add.
ConvexOracle sum(const ConvexOracle& a, const ConvexOracle& b);

}  // namespace oracles

struct DCProblem {
  DCProblem(std::string id, ConvexOracle g, ConvexOracle h, DomainC domain);

  std::string id;
  ConvexOracle g;
  ConvexOracle h;
  DomainC domain;
  std::optional<Point> known_minimizer;
  std::vector<Point> known_critical_points;

  std::size_t dim() const { return domain.dim(); }
};

/// f(x) = g(x) - h(x) for x in the closure of the domain.
double dc_eval(const DCProblem& p, const Point& x);

struct SubgradPair {
  Point v;  // in subdiff g(x)
  Point w;  // in subdiff h(x)
};

/// Smallest slack of  f(y) - f(x) - <v, y - x>  over `probes` random y around
/// x, each divided by max(1, |f(y)|). Negative means v is not a subgradient.
double subgradient_probe_slack(const ConvexOracle& f, const Point& x, const Point& v, int probes,
                               std::uint64_t seed);

/// v in subdiff g(x), w in subdiff h(x). With certify, each is checked against
/// 20 random probes (slack >= -1e-10 relative) and OracleError is thrown on failure.
SubgradPair dc_subgrad_pair(const DCProblem& p, const Point& x, bool certify = true,
                            std::uint64_t seed = 0);

/// max ||subgrad(x) - subgrad(y)|| / ||x - y|| over sampled pairs in the box.
/// A value at most the declared kappa supports it; nonsmooth g drives it up.
double check_kappa_condition(const ConvexOracle& g, const Point& lower, const Point& upper, int samples,
                             std::uint64_t seed = 0);

}  // namespace dcprox
