#pragma once

// Run configuration: flat `key = value` text, one key per line, `#` starts a
// comment, vectors as `[1, 2.5]`, matrices as `[1, 0; 0, 1]`.
//
//   problem     = quadratic_dc | ... | inline
//   g, h        = oracle expressions for problem = inline, e.g.
//                 quadratic(A=[2], b=[0], c=0) + affine_max(rows=[1; -1], offsets=[0, 0])
//                 scaled_norm_sq(mu=1)   zero()
//   distance    = sq_euclidean | boltzmann_shannon | burg | second_order
//   theta       = second_order parameter (default 1)
//   domain      = all_space | positive_orthant | box   (default: the kernel's natural domain)
//   box_lower, box_upper
//   algorithm   = alg1 | alg2
//   x0          = [..]
//   lambda      = constant step     | lambda_seq = [..]
//   lambda_min, lambda_max           (default: lambda for constant steps)
//   max_iter, step_tol, inner_tol, inner_method = auto|newton|separable,
//   record_certificates = true|false, seed
//   certificates = comma list of beta, criticality, descent, fejer, summability
//   rho, kappa, gamma, L, x_bar, criticality_tol
//   trace, report                    output paths

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcprox/dcfun.hpp"
#include "dcprox/solver.hpp"

namespace dcprox {

/// Parse or validation failure; line() is 0 when not tied to one line.
class ConfigError : public ContractViolation {
 public:
  ConfigError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class CertificateKind { Beta, Criticality, Descent, Fejer, Summability };
std::string_view certificate_kind_name(CertificateKind k);
inline constexpr CertificateKind kAllCertificateKinds[] = {CertificateKind::Beta, CertificateKind::Criticality,
                                                           CertificateKind::Descent, CertificateKind::Fejer,
                                                           CertificateKind::Summability};

struct RunConfig {
  std::string problem;  // built-in name or "inline"
  std::string g_expr;   // inline only
  std::string h_expr;
  Kernel kernel = Kernel::SquaredEuclidean;
  double theta = 1.0;
  DomainKind domain = DomainKind::AllSpace;
  Point box_lower, box_upper;
  Algorithm algorithm = Algorithm::Alg1;
  Point x0;
  StepSchedule schedule = StepSchedule::constant(1.0);
  SolverConfig solver;
  std::vector<CertificateKind> certificates;
  std::optional<double> rho, kappa, gamma, L;
  std::optional<Point> x_bar;
  double criticality_tol = 1e-6;
  std::string trace_path = "dcprox_trace.csv";
  std::string report_path = "dcprox_report.txt";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse and fully validate. Certificate constants missing from the text are
/// filled from the built-in instance metadata when available.
RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

/// Parse an inline oracle expression of dimension dim.
ConvexOracle parse_oracle_expr(std::string_view expr, std::size_t dim);

DomainC make_domain(const RunConfig& c);
ProxDistancePair make_pair(const RunConfig& c);
DCProblem make_problem(const RunConfig& c);

}  // namespace dcprox
