#include "dcprox/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "dcprox/rng.hpp"
#include "dcprox/vec.hpp"

namespace dcprox {

Certificate make_certificate(std::string name, std::vector<double> slacks, double tolerance) {
  Certificate c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.min_slack = slacks.empty() ? 0.0 : *std::min_element(slacks.begin(), slacks.end());
  for (double s : slacks) {
    if (std::isnan(s)) c.min_slack = s;
  }
  c.passed = c.min_slack >= -tolerance;
  c.per_iteration_slack = std::move(slacks);
  return c;
}

StepSeries step_series(const Trace& trace) {
  StepSeries s;
  for (const auto& r : trace.records) {
    s.f.push_back(r.f_val);
    s.f_next.push_back(r.f_next);
    s.step_norm.push_back(r.step_norm);
    s.lambda.push_back(r.lambda);
    s.beta.push_back(r.beta);
    s.alpha.push_back(r.alpha);
  }
  return s;
}

namespace {

void require_algorithm(const Trace& trace, Algorithm want, const char* what) {
  if (trace.algorithm != want) {
    throw ContractViolation(std::string(what) + ": trace was produced by " +
                            std::string(algorithm_name(trace.algorithm)));
  }
}

std::vector<double> descent_slacks(const StepSeries& s, double coeff) {
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double sq = s.step_norm[k] * s.step_norm[k];
    out[k] = (s.f[k] - s.f_next[k]) - coeff * sq - s.beta[k] / s.lambda[k];
  }
  return out;
}

}  // namespace

Certificate descent_certificate_alg1(const StepSeries& s, double h_modulus, double kappa) {
  return make_certificate("descent_alg1", descent_slacks(s, 0.5 * h_modulus - kappa), kDescentTolerance);
}

Certificate descent_certificate_alg1(const Trace& trace, double h_modulus, double kappa) {
  require_algorithm(trace, Algorithm::Alg1, "descent_certificate_alg1");
  return descent_certificate_alg1(step_series(trace), h_modulus, kappa);
}

Certificate descent_certificate_alg2(const StepSeries& s, double h_modulus) {
  return make_certificate("descent_alg2", descent_slacks(s, 0.5 * h_modulus), kDescentTolerance);
}

Certificate descent_certificate_alg2(const Trace& trace, double h_modulus) {
  require_algorithm(trace, Algorithm::Alg2, "descent_certificate_alg2");
  return descent_certificate_alg2(step_series(trace), h_modulus);
}

Certificate beta_certificate(const StepSeries& s) { return make_certificate("beta_nonneg", s.beta, kBetaTolerance); }

SummabilityReport summability_report(const StepSeries& s) {
  const std::size_t n = s.size();
  if (n < 10) throw ContractViolation("summability_report: need at least 10 steps");
  SummabilityReport r;
  const std::size_t tail_start = n - std::max<std::size_t>(1, n / 10);
  double tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double sq = s.step_norm[k] * s.step_norm[k];
    r.sum_sq_steps += sq;
    r.sum_beta += s.beta[k];
    if (k >= tail_start) tail += sq;
  }
  r.tail_ratio = r.sum_sq_steps > 0.0 ? tail / r.sum_sq_steps : 0.0;
  r.plateaued = r.tail_ratio <= 0.05;
  return r;
}

Certificate fejer_certificate(const Trace& trace, const DCProblem& p, const Point& x_bar, double gamma, double L,
                              const ProxDistancePair& pair, Algorithm algo) {
  require_algorithm(trace, algo, "fejer_certificate");
  vec::require_dim(x_bar, p.dim(), "fejer_certificate");
  const double crit = criticality_residual(p, x_bar);
  if (!(crit <= kCriticalityThreshold)) {
    throw ContractViolation("fejer_certificate: x_bar is not critical (residual " + std::to_string(crit) + ")");
  }
  std::vector<double> slacks;
  slacks.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    const double h_now = eval_H(pair, x_bar, r.x);
    const double h_next = eval_H(pair, x_bar, r.x_next);
    double slack;
    if (algo == Algorithm::Alg1) {
      slack = h_now + r.beta - h_next - r.lambda * (gamma - L) * kernels::squared_distance(r.x, x_bar);
    } else {
      slack = h_now + r.alpha - h_next - r.lambda * (gamma - L - 0.5) * kernels::squared_distance(r.x_next, x_bar);
    }
    slacks.push_back(slack);
  }
  return make_certificate(algo == Algorithm::Alg1 ? "fejer_alg1" : "fejer_alg2", std::move(slacks), kFejerTolerance);
}

double criticality_residual(const DCProblem& p, const Point& x, int probes, double radius, std::uint64_t seed) {
  vec::require_dim(x, p.dim(), "criticality_residual");
  if (!(radius > 0.0)) throw ContractViolation("criticality_residual: radius must be positive");
  if (probes < 100) throw ContractViolation("criticality_residual: need at least 100 probes");
  if (!p.domain.in_closure(x)) throw DomainError("criticality_residual: x outside the closure of C");
  const Point c = vec::sub(p.g.subgrad(x), p.h.subgrad(x));
  const std::size_t n = x.size();

  double worst = kInfinite;
  auto consider = [&](const Point& dir) {
    const double dn = vec::norm(dir);
    if (!(dn > 0.0)) return;
    const Point y = p.domain.project_closure(vec::axpy(radius / dn, dir, x));
    const Point step = vec::sub(y, x);
    const double len = vec::norm(step);
    if (len <= 1e-14 * std::max(1.0, vec::norm(x))) return;
    worst = std::min(worst, vec::dot(c, step) / len);
  };

  consider(vec::scaled(-1.0, c));
  Point e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1.0;
    consider(e);
    e[i] = -1.0;
    consider(e);
    e[i] = 0.0;
  }
  Rng rng(seed);
  Point u(n);
  for (int k = 0; k < probes; ++k) {
    for (auto& ui : u) ui = rng.uniform(-1.0, 1.0);
    consider(u);
  }
  if (worst == kInfinite) return 0.0;
  return std::max(0.0, -worst);
}

GridMinimum brute_force_min(const DCProblem& p, const Point& lower, const Point& upper, int resolution) {
  const std::size_t n = p.dim();
  vec::require_dim(lower, n, "brute_force_min");
  vec::require_dim(upper, n, "brute_force_min");
  if (n > 3) throw ContractViolation("brute_force_min: dimension must be at most 3");
  if (resolution < 2 || resolution > 401) throw ContractViolation("brute_force_min: resolution must be in [2, 401]");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) throw ContractViolation("brute_force_min: empty box");
  }
  if (!p.domain.in_closure(lower) || !p.domain.in_closure(upper)) {
    throw DomainError("brute_force_min: box is not inside the closure of C");
  }
  const auto res = static_cast<std::size_t>(resolution);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= res;

  GridMinimum best;
  best.f_min = kInfinite;
  Point x(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Last axis varies fastest, so node order is lexicographic.
    std::size_t rem = idx;
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t j = rem % res;
      rem /= res;
      x[i] = j + 1 == res ? upper[i] : lower[i] + (upper[i] - lower[i]) * static_cast<double>(j) / static_cast<double>(res - 1);
    }
    const double f = dc_eval(p, x);
    if (f < best.f_min) {
      best.f_min = f;
      best.x_min = x;
    }
  }
  return best;
}

Point finite_diff_grad(const std::function<double(const Point&)>& fn, const Point& x, double step) {
  if (!(step > 0.0)) throw ContractViolation("finite_diff_grad: step must be positive");
  Point g(x.size());
  Point xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    const double fp = fn(xp);
    xp[i] = x[i] - step;
    const double fm = fn(xp);
    xp[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw NumericalError("finite_diff_grad: non-finite value within one step of x");
    }
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

}  // namespace dcprox
