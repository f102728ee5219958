#pragma once

// Runtime certificates for the descent and Fejer inequalities along a trace,
// criticality residuals, and independent brute-force / finite-difference
// oracles. Everything here is read-only over its inputs.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dcprox/dcfun.hpp"
#include "dcprox/solver.hpp"

namespace dcprox {

struct Certificate {
  std::string name;
  std::vector<double> per_iteration_slack;
  /// 0 for an empty trace.
  double min_slack = 0.0;
  double tolerance = 0.0;
  /// min_slack >= -tolerance
  bool passed = true;
};

Certificate make_certificate(std::string name, std::vector<double> slacks, double tolerance);

/// Scalar per-step data the descent/summability checks need. Built from a
/// Trace or reloaded from a trace CSV.
struct StepSeries {
  std::vector<double> f;       // f(x_k)
  std::vector<double> f_next;  // f(x_{k+1})
  std::vector<double> step_norm;
  std::vector<double> lambda;
  std::vector<double> beta;
  std::vector<double> alpha;

  std::size_t size() const { return f.size(); }
};

StepSeries step_series(const Trace& trace);

inline constexpr double kDescentTolerance = 1e-9;
inline constexpr double kFejerTolerance = 1e-9;
inline constexpr double kBetaTolerance = 1e-12;
inline constexpr double kCriticalityThreshold = 1e-7;

/// slack_k = f_k - f_{k+1} - (rho/2 - kappa) ||s_k||^2 - beta_k / lambda_k.
/// h_modulus is the strong convexity modulus of h in the (rho/2)||.||^2 sense,
/// so the descent estimate uses rho/2.
Certificate descent_certificate_alg1(const StepSeries& s, double h_modulus, double kappa);
Certificate descent_certificate_alg1(const Trace& trace, double h_modulus, double kappa);

/// slack_k = f_k - f_{k+1} - (rho/2) ||s_k||^2 - beta_k / lambda_k.
Certificate descent_certificate_alg2(const StepSeries& s, double h_modulus);
Certificate descent_certificate_alg2(const Trace& trace, double h_modulus);

/// beta_k >= 0 (tolerance kBetaTolerance).
Certificate beta_certificate(const StepSeries& s);

struct SummabilityReport {
  double sum_sq_steps = 0.0;
  double sum_beta = 0.0;
  /// Share of sum_sq_steps contributed by the last decile of steps; 0 when the sum is 0.
  double tail_ratio = 0.0;
  /// tail_ratio <= 0.05: the partial sums have flattened out.
  bool plateaued = true;
};

/// Needs at least 10 steps.
SummabilityReport summability_report(const StepSeries& s);

/// Fejer-type inequality at a critical point x_bar:
///   alg1: H(x_bar, x_{k+1}) + lambda_k (gamma - L) ||x_k - x_bar||^2 <= H(x_bar, x_k) + beta_k
///   alg2: H(x_bar, x_{k+1}) + lambda_k (gamma - L - 1/2) ||x_{k+1} - x_bar||^2 <= H(x_bar, x_k) + alpha_k
/// Throws ContractViolation if x_bar is not critical (residual > kCriticalityThreshold)
/// or the trace was produced by the other algorithm.
Certificate fejer_certificate(const Trace& trace, const DCProblem& p, const Point& x_bar, double gamma, double L,
                              const ProxDistancePair& pair, Algorithm algo);

/// max(0, -min <v - w, y - x> / ||y - x||) over feasible y in a radius ball
/// around x, with (v, w) the oracle subgradients at x. Candidates are the
/// steepest-descent direction, +-e_i, and `probes` random directions, each
/// projected onto the closure of C.
double criticality_residual(const DCProblem& p, const Point& x, int probes = 200, double radius = 1.0,
                            std::uint64_t seed = 0);

struct GridMinimum {
  Point x_min;
  double f_min = 0.0;
};

/// Exhaustive grid search over the box (dim <= 3, 2 <= resolution <= 401
/// nodes per axis, endpoints included). Ties keep the first node in
/// lexicographic order.
GridMinimum brute_force_min(const DCProblem& p, const Point& lower, const Point& upper, int resolution);

/// Central differences per coordinate. Throws NumericalError on non-finite values.
Point finite_diff_grad(const std::function<double(const Point&)>& fn, const Point& x, double step);

}  // namespace dcprox
