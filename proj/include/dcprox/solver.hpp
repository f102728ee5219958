#pragma once

// Interior subgradient iteration (Algorithm 1 in the module docs) and the
// proximal linearized iteration (Algorithm 2) for f = g - h over the closure
// of C, with a proximal distance as regularizer.
//
//   Alg1:  x+ = argmin_z  lambda <v - w, z> + d(z, x),       v in dg(x), w in dh(x)
//   Alg2:  x+ = argmin_z  g(z) - <w, z - x> + d(z, x)/lambda, w in dh(x)

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcprox/dcfun.hpp"
#include "dcprox/proxdist.hpp"

namespace dcprox {

enum class Algorithm { Alg1, Alg2 };
std::string_view algorithm_name(Algorithm a);

/// Step sizes with bounds lambda_minus <= lambda_k <= lambda_plus.
class StepSchedule {
 public:
  enum class Rule { Constant, Sequence };

  /// Bounds default to [value, value].
  static StepSchedule constant(double value);
  static StepSchedule constant(double value, double lambda_minus, double lambda_plus);
  /// Entries past the end repeat the last entry; out-of-range entries clamp.
  static StepSchedule sequence(std::vector<double> values, double lambda_minus, double lambda_plus);

  Rule rule() const { return rule_; }
  double lambda_minus() const { return lambda_minus_; }
  double lambda_plus() const { return lambda_plus_; }
  double constant_value() const { return value_; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const StepSchedule&, const StepSchedule&) = default;

 private:
  StepSchedule(Rule rule, double value, std::vector<double> values, double lo, double hi);

  Rule rule_;
  double value_;
  std::vector<double> values_;
  double lambda_minus_;
  double lambda_plus_;
};

struct LambdaQuery {
  double value;
  bool clamped;
};

LambdaQuery next_lambda(const StepSchedule& s, std::size_t k);

/// How the Alg2 subproblem is solved. Auto picks the closed form when g is
/// quadratic and d is Euclidean on R^n, Newton otherwise.
enum class InnerMethod { Auto, Newton, Separable };

struct SolverConfig {
  std::size_t max_iter = 10000;
  /// Stop once ||x_{k+1} - x_k|| <= step_tol.
  double step_tol = 1e-10;
  /// Stationarity tolerance (inf-norm) of the Alg2 inner solve.
  double inner_tol = 1e-10;
  /// Probe-certify oracle subgradients and the Alg2 z_{k+1} every iteration.
  bool record_certificates = true;
  std::uint64_t seed = 0;
  InnerMethod inner_method = InnerMethod::Auto;

  void validate() const;
  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

enum class SubproblemRoute { ClosedForm, Newton, Separable };
std::string_view route_name(SubproblemRoute r);

struct IterationRecord {
  std::size_t k = 0;
  Point x;       // x_k
  Point x_next;  // x_{k+1}
  double f_val = 0.0;
  double f_next = 0.0;
  double lambda = 0.0;
  bool lambda_clamped = false;
  /// <grad1 d(x_{k+1}, x_k), x_{k+1} - x_k>
  double beta = 0.0;
  /// lambda/2 ||x_k - x_{k+1}||^2
  double alpha = 0.0;
  double step_norm = 0.0;
  Point v;  // Alg1 only (empty for Alg2)
  Point w;
  std::optional<Point> z_next;  // Alg2: the element of dg(x_{k+1}) from the optimality condition
  /// inf-norm residual of the step's optimality condition
  double resid = 0.0;
  /// Subproblem objective at x_{k+1}, including constant terms.
  double subproblem_value = 0.0;
  /// sigma_k = lambda_0 + ... + lambda_k
  double sigma = 0.0;
  SubproblemRoute route = SubproblemRoute::ClosedForm;
};

enum class Termination { StepTol, MaxIter, InfeasibleStep, OracleError };
std::string_view termination_name(Termination t);

struct Trace {
  std::vector<IterationRecord> records;
  Termination termination = Termination::MaxIter;
  std::string message;
  std::string problem_id;
  std::string distance_id;
  Algorithm algorithm = Algorithm::Alg1;
  StepSchedule schedule = StepSchedule::constant(1.0);
  Point final_x;
  double final_f = 0.0;
  std::size_t clamped_lambdas = 0;
};

struct StepResult {
  Point x_next;
  IterationRecord record;
};

/// One Alg1 step. record.k, sigma and lambda_clamped are left for the caller.
StepResult alg1_step(const DCProblem& p, const ProxDistancePair& pair, const Point& x_k, double lambda,
                     const SolverConfig& config = {});

/// One Alg2 step; record.z_next holds z_{k+1}.
StepResult alg2_step(const DCProblem& p, const ProxDistancePair& pair, const Point& x_k, double lambda,
                     const SolverConfig& config = {});

/// Throws UnsupportedConfiguration unless the Alg2 subproblem has a solver
/// for this (g, d) combination.
void check_alg2_supported(const DCProblem& p, const ProxDistancePair& pair);

/// Iterate from x0 until step_tol or max_iter. Step failures end the run and
/// are reported in Trace::termination; precondition failures throw.
Trace run(const DCProblem& p, const ProxDistancePair& pair, Algorithm algo, const Point& x0,
          const StepSchedule& schedule, const SolverConfig& config = {});

}  // namespace dcprox
