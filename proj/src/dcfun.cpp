#include "dcprox/dcfun.hpp"

#include <cmath>
#include <sstream>

#include "dcprox/rng.hpp"
#include "dcprox/vec.hpp"

namespace dcprox {
namespace {

Eigen::Map<const Eigen::VectorXd> as_eigen(const Point& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

Point to_point(const Eigen::VectorXd& v) { return Point(v.data(), v.data() + v.size()); }

std::optional<double> add_opt(const std::optional<double>& a, const std::optional<double>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace

namespace oracles {

ConvexOracle quadratic(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double c) {
  const auto n = A.rows();
  if (n == 0 || A.cols() != n || b.size() != n) {
    throw ContractViolation("quadratic: A must be square and match b");
  }
  if (!A.allFinite() || !b.allFinite() || !std::isfinite(c)) {
    throw ContractViolation("quadratic: non-finite coefficients");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ContractViolation("quadratic: A must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (lmin < -1e-12 * scale) throw ContractViolation("quadratic: A must be positive semidefinite");

  QuadraticForm q{A, b, c};
  ConvexOracle o;
  o.dim = static_cast<std::size_t>(n);
  o.eval = [q](const Point& x) {
    const auto v = as_eigen(x);
    return 0.5 * v.dot(q.A * v) + q.b.dot(v) + q.c;
  };
  o.subgrad = [q](const Point& x) { return to_point(q.A * as_eigen(x) + q.b); };
  o.hessian = [A](const Point&) { return A; };
  o.strong_convexity_modulus = std::max(lmin, 0.0);
  o.grad_lipschitz = std::max(lmax, 0.0);
  o.subdiff_lipschitz = std::max(lmax, 0.0);
  o.is_smooth = true;
  o.is_separable = A.isDiagonal();
  o.quadratic = q;
  o.description = "quadratic";
  return o;
}

ConvexOracle affine_max(const std::vector<Point>& rows, const std::vector<double>& offsets) {
  if (rows.empty() || rows.size() != offsets.size()) {
    throw ContractViolation("affine_max: need one offset per row and at least one row");
  }
  const std::size_t n = rows.front().size();
  if (n == 0) throw ContractViolation("affine_max: empty rows");
  for (const auto& r : rows) vec::require_dim(r, n, "affine_max");

  auto values = [rows, offsets](const Point& x) {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = vec::dot(rows[i], x) + offsets[i];
    return v;
  };
  ConvexOracle o;
  o.dim = n;
  o.eval = [values](const Point& x) {
    const auto v = values(x);
    return *std::max_element(v.begin(), v.end());
  };
  // max_element returns the first maximum: smallest attaining index.
  o.subgrad = [values, rows](const Point& x) {
    const auto v = values(x);
    return rows[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())];
  };
  o.is_smooth = rows.size() == 1;
  if (o.is_smooth) {
    o.grad_lipschitz = 0.0;
    o.subdiff_lipschitz = 0.0;
    o.hessian = [n](const Point&) { return Eigen::MatrixXd::Zero(n, n).eval(); };
  }
  o.is_separable = n == 1;
  o.description = "affine_max";
  return o;
}

ConvexOracle scaled_norm_sq(std::size_t dim, double mu) {
  if (!(mu >= 0.0)) throw ContractViolation("scaled_norm_sq: mu must be nonnegative");
  const auto n = static_cast<Eigen::Index>(dim);
  ConvexOracle o = quadratic(mu * Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n), 0.0);
  o.description = "scaled_norm_sq";
  return o;
}

ConvexOracle zero(std::size_t dim) {
  ConvexOracle o = scaled_norm_sq(dim, 0.0);
  o.description = "zero";
  return o;
}

ConvexOracle sum(const ConvexOracle& a, const ConvexOracle& b) {
  if (a.dim != b.dim) throw ContractViolation("sum: oracle dimensions differ");
  ConvexOracle o;
  o.dim = a.dim;
  o.eval = [fa = a.eval, fb = b.eval](const Point& x) { return fa(x) + fb(x); };
  o.subgrad = [ga = a.subgrad, gb = b.subgrad](const Point& x) {
    Point s = ga(x);
    const Point t = gb(x);
    vec::require_dim(s, t.size(), "sum::subgrad");
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    return s;
  };
  if (a.hessian && b.hessian) {
    o.hessian = [ha = a.hessian, hb = b.hessian](const Point& x) { return (ha(x) + hb(x)).eval(); };
  }
  o.strong_convexity_modulus = a.strong_convexity_modulus + b.strong_convexity_modulus;
  o.grad_lipschitz = add_opt(a.grad_lipschitz, b.grad_lipschitz);
  o.subdiff_lipschitz = add_opt(a.subdiff_lipschitz, b.subdiff_lipschitz);
  o.is_smooth = a.is_smooth && b.is_smooth;
  o.is_separable = a.is_separable && b.is_separable;
  if (a.quadratic && b.quadratic) {
    o.quadratic = QuadraticForm{a.quadratic->A + b.quadratic->A, a.quadratic->b + b.quadratic->b,
                                a.quadratic->c + b.quadratic->c};
  }
  o.description = a.description + "+" + b.description;
  return o;
}

}  // namespace oracles

DCProblem::DCProblem(std::string id_, ConvexOracle g_, ConvexOracle h_, DomainC domain_)
    : id(std::move(id_)), g(std::move(g_)), h(std::move(h_)), domain(std::move(domain_)) {
  if (g.dim != domain.dim() || h.dim != domain.dim()) {
    throw ContractViolation("DCProblem: g, h and domain dimensions differ");
  }
}

double dc_eval(const DCProblem& p, const Point& x) {
  vec::require_dim(x, p.dim(), "dc_eval");
  return p.g.eval(x) - p.h.eval(x);
}

double subgradient_probe_slack(const ConvexOracle& f, const Point& x, const Point& v, int probes,
                               std::uint64_t seed) {
  vec::require_dim(v, f.dim, "subgradient probe");
  Rng rng(seed);
  const double fx = f.eval(x);
  const double radius = 1.0 + vec::inf_norm(x);
  double worst = kInfinite;
  Point y(x.size());
  for (int k = 0; k < probes; ++k) {
    // Log-uniform radius so probes see both kinks near x and far curvature.
    const double r = radius * std::pow(10.0, rng.uniform(-6.0, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + r * rng.uniform(-1.0, 1.0);
    const double fy = f.eval(y);
    const double slack = fy - fx - vec::dot(v, vec::sub(y, x));
    worst = std::min(worst, slack / std::max({1.0, std::fabs(fy), std::fabs(fx)}));
  }
  return worst;
}

SubgradPair dc_subgrad_pair(const DCProblem& p, const Point& x, bool certify, std::uint64_t seed) {
  vec::require_dim(x, p.dim(), "dc_subgrad_pair");
  if (!p.domain.contains(x)) throw DomainError("dc_subgrad_pair: x is not strictly inside the domain");
  SubgradPair out{p.g.subgrad(x), p.h.subgrad(x)};
  vec::require_dim(out.v, p.dim(), "g.subgrad");
  vec::require_dim(out.w, p.dim(), "h.subgrad");
  if (certify) {
    constexpr int kProbes = 20;
    constexpr double kTol = 1e-10;
    const double sg = subgradient_probe_slack(p.g, x, out.v, kProbes, seed);
    const double sh = subgradient_probe_slack(p.h, x, out.w, kProbes, seed ^ 0x9e3779b97f4a7c15ULL);
    if (sg < -kTol || sh < -kTol) {
      std::ostringstream os;
      os << "subgradient oracle failed probe certification (g slack " << sg << ", h slack " << sh << ")";
      throw OracleError(os.str());
    }
  }
  return out;
}

double check_kappa_condition(const ConvexOracle& g, const Point& lower, const Point& upper, int samples,
                             std::uint64_t seed) {
  vec::require_dim(lower, g.dim, "check_kappa_condition");
  vec::require_dim(upper, g.dim, "check_kappa_condition");
  for (std::size_t i = 0; i < g.dim; ++i) {
    if (!(lower[i] < upper[i])) throw ContractViolation("check_kappa_condition: degenerate box");
  }
  if (samples <= 0) throw ContractViolation("check_kappa_condition: samples must be positive");
  Rng rng(seed);
  const double diam = vec::dist(lower, upper);
  double worst = 0.0;
  Point x(g.dim), y(g.dim);
  for (int s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < g.dim; ++i) x[i] = rng.uniform(lower[i], upper[i]);
    if (s % 2 == 0) {
      for (std::size_t i = 0; i < g.dim; ++i) y[i] = rng.uniform(lower[i], upper[i]);
    } else {
      // Near pairs at log-uniform separation; these expose subgradient jumps.
      const double r = diam * std::pow(10.0, rng.uniform(-4.0, -1.0));
      for (std::size_t i = 0; i < g.dim; ++i) {
        y[i] = std::clamp(x[i] + r * rng.uniform(-1.0, 1.0), lower[i], upper[i]);
      }
    }
    const double dxy = vec::dist(x, y);
    if (dxy == 0.0) continue;
    worst = std::max(worst, vec::dist(g.subgrad(x), g.subgrad(y)) / dxy);
  }
  return worst;
}

}  // namespace dcprox
