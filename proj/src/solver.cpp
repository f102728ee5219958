#include "dcprox/solver.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "dcprox/scalar_root.hpp"
#include "dcprox/vec.hpp"

namespace dcprox {

std::string_view algorithm_name(Algorithm a) { return a == Algorithm::Alg1 ? "alg1" : "alg2"; }

std::string_view route_name(SubproblemRoute r) {
  switch (r) {
    case SubproblemRoute::ClosedForm: return "closed_form";
    case SubproblemRoute::Newton: return "newton";
    case SubproblemRoute::Separable: return "separable";
  }
  return "unknown";
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::StepTol: return "StepTol";
    case Termination::MaxIter: return "MaxIter";
    case Termination::InfeasibleStep: return "InfeasibleStep";
    case Termination::OracleError: return "OracleError";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Step schedule

StepSchedule::StepSchedule(Rule rule, double value, std::vector<double> values, double lo, double hi)
    : rule_(rule), value_(value), values_(std::move(values)), lambda_minus_(lo), lambda_plus_(hi) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ContractViolation("StepSchedule: need 0 < lambda_minus <= lambda_plus < inf");
  }
  if (rule_ == Rule::Constant && !(value_ >= lo && value_ <= hi)) {
    throw ContractViolation("StepSchedule: constant step outside [lambda_minus, lambda_plus]");
  }
  if (rule_ == Rule::Sequence) {
    if (values_.empty()) throw ContractViolation("StepSchedule: empty step sequence");
    for (double v : values_) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ContractViolation("StepSchedule: steps must be positive");
    }
  }
}

StepSchedule StepSchedule::constant(double value) { return constant(value, value, value); }

StepSchedule StepSchedule::constant(double value, double lambda_minus, double lambda_plus) {
  return StepSchedule(Rule::Constant, value, {}, lambda_minus, lambda_plus);
}

StepSchedule StepSchedule::sequence(std::vector<double> values, double lambda_minus, double lambda_plus) {
  return StepSchedule(Rule::Sequence, 0.0, std::move(values), lambda_minus, lambda_plus);
}

LambdaQuery next_lambda(const StepSchedule& s, std::size_t k) {
  if (s.rule() == StepSchedule::Rule::Constant) return {s.constant_value(), false};
  const auto& seq = s.values();
  if (seq.empty()) throw ContractViolation("next_lambda: empty step sequence");
  const double raw = seq[std::min(k, seq.size() - 1)];
  const double v = std::clamp(raw, s.lambda_minus(), s.lambda_plus());
  return {v, v != raw};
}

void SolverConfig::validate() const {
  if (max_iter == 0) throw ContractViolation("SolverConfig: max_iter must be positive");
  if (!(step_tol >= 0.0)) throw ContractViolation("SolverConfig: step_tol must be nonnegative");
  if (!(inner_tol >= 1e-14)) throw ContractViolation("SolverConfig: inner_tol must be at least 1e-14");
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t step_seed(const SolverConfig& config, const Point& x) {
  // Keyed on the iterate so single steps and full runs probe identically.
  std::uint64_t h = config.seed;
  for (double xi : x) {
    std::uint64_t bits;
    std::memcpy(&bits, &xi, sizeof bits);
    h = mix_seed(h, bits);
  }
  return h;
}

void require_step_inputs(const DCProblem& p, const ProxDistancePair& pair, const Point& x_k, double lambda) {
  if (!(pair.domain() == p.domain)) {
    throw ContractViolation("step: distance domain differs from the problem domain");
  }
  vec::require_dim(x_k, p.dim(), "step");
  if (!p.domain.contains(x_k)) throw DomainError("step: x_k is not strictly inside C");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ContractViolation("step: lambda must be positive");
}

void fill_common(IterationRecord& rec, const DCProblem& p, const ProxDistancePair& pair, const Point& x_k,
                 const Point& x_next, double lambda) {
  rec.x = x_k;
  rec.x_next = x_next;
  rec.lambda = lambda;
  rec.f_val = dc_eval(p, x_k);
  rec.f_next = dc_eval(p, x_next);
  const Point step = vec::sub(x_next, x_k);
  const double sq = kernels::squared_norm(step);
  rec.step_norm = std::sqrt(sq);
  rec.alpha = 0.5 * lambda * sq;
  rec.beta = vec::dot(grad1_d(pair, x_next, x_k), step);
}

// --- Alg2 subproblem --------------------------------------------------------

Eigen::Map<const Eigen::VectorXd> as_eigen(const Point& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

Eigen::MatrixXd hessian_of(const ConvexOracle& g, const Point& z) {
  if (g.hessian) return g.hessian(z);
  // Central differences of the gradient, symmetrized.
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXd H(n, n);
  Point zp = z, zm = z;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double h = 1e-6 * std::max(1.0, std::fabs(z[ju]));
    zp[ju] = z[ju] + h;
    zm[ju] = z[ju] - h;
    const Point gp = g.subgrad(zp), gm = g.subgrad(zm);
    for (Eigen::Index i = 0; i < n; ++i) {
      H(i, j) = (gp[static_cast<std::size_t>(i)] - gm[static_cast<std::size_t>(i)]) / (2.0 * h);
    }
    zp[ju] = zm[ju] = z[ju];
  }
  return 0.5 * (H + H.transpose());
}

/// g(z) - <w, z - x_k> + d(z, x_k)/lambda and its gradient. `free_pair` is the
/// same kernel without domain restriction for non-barrier distances.
struct Subproblem {
  const ConvexOracle& g;
  const ProxDistancePair& pair;
  const Point& x_k;
  const Point& w;
  double lambda;

  double value(const Point& z) const {
    const double d = eval_d(pair, z, x_k);
    if (!std::isfinite(d)) return kInfinite;
    return g.eval(z) - vec::dot(w, vec::sub(z, x_k)) + d / lambda;
  }
  Point gradient(const Point& z) const {
    Point gz = g.subgrad(z);
    const Point gd = grad1_d(pair, z, x_k);
    for (std::size_t i = 0; i < gz.size(); ++i) gz[i] = gz[i] - w[i] + gd[i] / lambda;
    return gz;
  }
  bool admissible(const Point& z) const { return pair.domain().contains(z); }
};

struct InnerResult {
  Point z;
  bool converged = false;
  double resid = kInfinite;
};

InnerResult solve_newton(const Subproblem& sp, double tol) {
  constexpr int kMaxIter = 100;
  InnerResult r;
  r.z = sp.x_k;
  Point grad = sp.gradient(r.z);
  double phi = sp.value(r.z);
  for (int it = 0; it < kMaxIter; ++it) {
    r.resid = vec::inf_norm(grad);
    if (r.resid <= tol) {
      r.converged = true;
      return r;
    }
    Eigen::MatrixXd H = hessian_of(sp.g, r.z);
    const Point hd = hess1_d_diag(sp.pair, r.z, sp.x_k);
    for (std::size_t i = 0; i < hd.size(); ++i) {
      H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += hd[i] / sp.lambda;
    }
    const Eigen::VectorXd dz_e = H.ldlt().solve(-as_eigen(grad));
    if (!dz_e.allFinite()) break;
    const Point dz(dz_e.data(), dz_e.data() + dz_e.size());
    const double slope = vec::dot(grad, dz);
    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Point zt = vec::axpy(t, dz, r.z);
      if (!sp.admissible(zt)) continue;
      const double phit = sp.value(zt);
      const Point gt = sp.gradient(zt);
      // Armijo, or a gradient decrease once values are at rounding level.
      if (phit <= phi + 1e-4 * t * slope || vec::inf_norm(gt) < r.resid) {
        r.z = zt;
        grad = gt;
        phi = phit;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  r.resid = vec::inf_norm(grad);
  r.converged = r.resid <= tol;
  return r;
}

InnerResult solve_separable(const Subproblem& sp, double tol) {
  const std::size_t n = sp.x_k.size();
  InnerResult r;
  r.z = sp.x_k;
  const bool orthant = sp.pair.domain().kind() == DomainKind::PositiveOrthant;
  for (std::size_t i = 0; i < n; ++i) {
    Point probe = r.z;
    auto coord_grad = [&](double t) {
      probe[i] = t;
      const double gi = sp.g.subgrad(probe)[i];
      Point xi{sp.x_k[i]}, ti{t};
      ProxDistancePair one = orthant ? ProxDistancePair(sp.pair.kernel(), DomainC::positive_orthant(1), sp.pair.theta())
                                     : ProxDistancePair(Kernel::SquaredEuclidean, DomainC::all_space(1));
      return gi - sp.w[i] + grad1_d(one, ti, xi)[0] / sp.lambda;
    };
    auto coord_slope = [&](double t) {
      probe[i] = t;
      const double gh = hessian_of(sp.g, probe)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      double dh = 1.0;
      const double y = sp.x_k[i];
      switch (sp.pair.kernel()) {
        case Kernel::SquaredEuclidean: dh = 1.0; break;
        case Kernel::BoltzmannShannon: dh = 1.0 / t; break;
        case Kernel::Burg: dh = 1.0 / (t * t); break;
        case Kernel::SecondOrderHomogeneous: dh = y * y / (t * t) + sp.pair.theta(); break;
      }
      return gh + dh / sp.lambda;
    };
    const double y = sp.x_k[i];
    double lo, hi;
    if (orthant) {
      lo = y;
      for (int s = 0; s < 2000 && coord_grad(lo) > 0.0; ++s) lo *= 0.5;
      hi = y;
      for (int s = 0; s < 2000 && coord_grad(hi) < 0.0; ++s) hi *= 2.0;
    } else {
      double span = 1.0 + std::fabs(y);
      lo = y - span;
      for (int s = 0; s < 2000 && coord_grad(lo) > 0.0; ++s) lo -= (span *= 2.0);
      span = 1.0 + std::fabs(y);
      hi = y + span;
      for (int s = 0; s < 2000 && coord_grad(hi) < 0.0; ++s) hi += (span *= 2.0);
    }
    const ScalarRoot root = safeguarded_newton(coord_grad, coord_slope, lo, hi, y, tol);
    r.z[i] = root.root;
  }
  if (!sp.admissible(r.z)) return r;
  r.resid = vec::inf_norm(sp.gradient(r.z));
  r.converged = r.resid <= tol;
  return r;
}

bool closed_form_applies(const DCProblem& p, const ProxDistancePair& pair) {
  return p.g.quadratic.has_value() && pair.kernel() == Kernel::SquaredEuclidean;
}

}  // namespace

void check_alg2_supported(const DCProblem& p, const ProxDistancePair& pair) {
  if (p.g.is_smooth) return;
  if (closed_form_applies(p, pair) && pair.domain().kind() == DomainKind::AllSpace) return;
  throw UnsupportedConfiguration("alg2: g (" + p.g.description +
                                 ") is nonsmooth and has no closed-form subproblem for " + pair.id());
}

StepResult alg1_step(const DCProblem& p, const ProxDistancePair& pair, const Point& x_k, double lambda,
                     const SolverConfig& config) {
  require_step_inputs(p, pair, x_k, lambda);
  const SubgradPair vw = dc_subgrad_pair(p, x_k, config.record_certificates, step_seed(config, x_k));
  const Point c = vec::sub(vw.v, vw.w);
  Point x_next = kernel_map_inverse(pair, x_k, c, lambda);

  StepResult out;
  IterationRecord& rec = out.record;
  fill_common(rec, p, pair, x_k, x_next, lambda);
  rec.v = vw.v;
  rec.w = vw.w;
  rec.route = SubproblemRoute::ClosedForm;
  Point stationarity = grad1_d(pair, x_next, x_k);
  for (std::size_t i = 0; i < c.size(); ++i) stationarity[i] += lambda * c[i];
  rec.resid = vec::inf_norm(stationarity);
  rec.subproblem_value = lambda * vec::dot(c, x_next) + eval_d(pair, x_next, x_k);
  out.x_next = std::move(x_next);
  return out;
}

StepResult alg2_step(const DCProblem& p, const ProxDistancePair& pair, const Point& x_k, double lambda,
                     const SolverConfig& config) {
  require_step_inputs(p, pair, x_k, lambda);
  check_alg2_supported(p, pair);
  const std::uint64_t seed = step_seed(config, x_k);
  const Point w = p.h.subgrad(x_k);
  vec::require_dim(w, p.dim(), "h.subgrad");
  if (config.record_certificates) {
    const double sh = subgradient_probe_slack(p.h, x_k, w, 20, seed);
    if (sh < -1e-10) throw OracleError("h subgradient failed probe certification");
  }

  // Non-barrier distances are minimized over R^n; the result must land in C.
  const ProxDistancePair solve_pair =
      pair.is_barrier() ? pair : ProxDistancePair(pair.kernel(), DomainC::all_space(pair.dim()), pair.theta());
  const Subproblem sp{p.g, solve_pair, x_k, w, lambda};

  Point x_next;
  SubproblemRoute route;
  const bool use_closed = config.inner_method == InnerMethod::Auto && closed_form_applies(p, pair);
  if (use_closed) {
    // (A + I/lambda) z = w - b + x_k/lambda
    const QuadraticForm& q = *p.g.quadratic;
    const auto n = q.A.rows();
    const Eigen::MatrixXd M = q.A + Eigen::MatrixXd::Identity(n, n) / lambda;
    const Eigen::VectorXd rhs = as_eigen(w) - q.b + as_eigen(x_k) / lambda;
    const Eigen::VectorXd z = M.ldlt().solve(rhs);
    x_next.assign(z.data(), z.data() + z.size());
    route = SubproblemRoute::ClosedForm;
  } else {
    InnerResult inner;
    if (config.inner_method == InnerMethod::Separable) {
      if (!p.g.is_separable) throw UnsupportedConfiguration("alg2: separable inner solver needs separable g");
      inner = solve_separable(sp, config.inner_tol);
      route = SubproblemRoute::Separable;
    } else {
      inner = solve_newton(sp, config.inner_tol);
      route = SubproblemRoute::Newton;
      if (!inner.converged && p.g.is_separable && pair.is_barrier()) {
        inner = solve_separable(sp, config.inner_tol);
        route = SubproblemRoute::Separable;
      }
    }
    if (!inner.converged && pair.is_barrier()) {
      std::ostringstream os;
      os << "alg2 inner solver (" << route_name(route) << ") stalled at stationarity residual " << inner.resid
         << " > inner_tol " << config.inner_tol;
      throw OracleError(os.str());
    }
    x_next = std::move(inner.z);
  }
  if (!pair.domain().contains(x_next)) {
    throw InfeasibleStep("alg2 step leaves " + pair.domain().name() + " (shrink lambda)");
  }

  StepResult out;
  IterationRecord& rec = out.record;
  fill_common(rec, p, pair, x_k, x_next, lambda);
  rec.w = w;
  rec.route = route;
  const Point gd = grad1_d(pair, x_next, x_k);
  Point z_next(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) z_next[i] = w[i] - gd[i] / lambda;
  const Point grad_g = p.g.subgrad(x_next);
  rec.resid = kernels::max_abs_diff(grad_g, z_next);
  if (rec.resid > config.inner_tol) {
    std::ostringstream os;
    os << "alg2 step stationarity residual " << rec.resid << " exceeds inner_tol " << config.inner_tol;
    throw OracleError(os.str());
  }
  if (config.record_certificates) {
    const double sz = subgradient_probe_slack(p.g, x_next, z_next, 20, mix_seed(seed, 7));
    if (sz < -1e-8) throw OracleError("alg2: z_{k+1} failed the subdifferential probe of g");
  }
  rec.subproblem_value = p.g.eval(x_next) - vec::dot(w, vec::sub(x_next, x_k)) + eval_d(pair, x_next, x_k) / lambda;
  rec.z_next = std::move(z_next);
  out.x_next = std::move(x_next);
  return out;
}

Trace run(const DCProblem& p, const ProxDistancePair& pair, Algorithm algo, const Point& x0,
          const StepSchedule& schedule, const SolverConfig& config) {
  config.validate();
  if (!(pair.domain() == p.domain)) throw ContractViolation("run: distance domain differs from the problem domain");
  vec::require_dim(x0, p.dim(), "run");
  if (!p.domain.contains(x0)) throw DomainError("run: x0 is not strictly inside C");
  if (algo == Algorithm::Alg2) check_alg2_supported(p, pair);

  Trace trace;
  trace.problem_id = p.id;
  trace.distance_id = pair.id();
  trace.algorithm = algo;
  trace.schedule = schedule;
  trace.termination = Termination::MaxIter;

  auto step = [&](const Point& x, double lambda) {
    return algo == Algorithm::Alg1 ? alg1_step(p, pair, x, lambda, config) : alg2_step(p, pair, x, lambda, config);
  };

  Point x = x0;
  double sigma = 0.0;
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    LambdaQuery lq = next_lambda(schedule, k);
    StepResult res;
    try {
      try {
        res = step(x, lq.value);
      } catch (const InfeasibleStep&) {
        // One retry at half the step, kept above lambda_minus when possible.
        const double half = 0.5 * lq.value;
        const double lo = schedule.lambda_minus();
        lq.value = half >= lo ? half : (lq.value > lo ? lo : half);
        lq.clamped = true;
        res = step(x, lq.value);
      }
    } catch (const InfeasibleStep& e) {
      trace.termination = Termination::InfeasibleStep;
      trace.message = e.what();
      break;
    } catch (const OracleError& e) {
      trace.termination = Termination::OracleError;
      trace.message = e.what();
      break;
    } catch (const NumericalError& e) {
      trace.termination = Termination::OracleError;
      trace.message = e.what();
      break;
    }
    sigma += lq.value;
    res.record.k = k;
    res.record.sigma = sigma;
    res.record.lambda_clamped = lq.clamped;
    if (lq.clamped) ++trace.clamped_lambdas;
    const bool done = res.record.step_norm <= config.step_tol;
    trace.records.push_back(std::move(res.record));
    x = std::move(res.x_next);
    if (done) {
      trace.termination = Termination::StepTol;
      break;
    }
  }
  trace.final_x = x;
  trace.final_f = dc_eval(p, x);
  return trace;
}

}  // namespace dcprox
