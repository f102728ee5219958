#include <catch_amalgamated.hpp>

#include <cmath>

#include "dcprox/dcfun.hpp"
#include "dcprox/diagnostics.hpp"
#include "dcprox/rng.hpp"

using namespace dcprox;
using Catch::Approx;

namespace {

Eigen::MatrixXd diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

ConvexOracle abs_oracle() { return oracles::affine_max({{1.0}, {-1.0}}, {0.0, 0.0}); }

std::vector<ConvexOracle> shipped_oracles() {
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 1, 3;
  return {oracles::quadratic(A, Eigen::Vector2d(1, -1), 0.5),
          oracles::quadratic(diag({1, 0}), Eigen::Vector2d(0, 0)),
          oracles::affine_max({{1, 0}, {0, 1}, {-1, -1}}, {0, 0.5, 1}),
          oracles::scaled_norm_sq(2, 3.0),
          oracles::zero(2),
          oracles::sum(oracles::scaled_norm_sq(2, 1.0), oracles::affine_max({{1, 1}, {0, 0}}, {0, 0}))};
}

Point random_point(Rng& rng, std::size_t n) {
  Point x(n);
  for (double& v : x) v = rng.uniform(-5, 5);
  return x;
}

}  // namespace

TEST_CASE("dc_eval", "[dcfun]") {
  const DCProblem same("same", oracles::scaled_norm_sq(2, 1), oracles::scaled_norm_sq(2, 1), DomainC::all_space(2));
  REQUIRE(dc_eval(same, {3, -7}) == 0.0);
  const DCProblem q("q", oracles::quadratic(diag({2}), Eigen::VectorXd::Zero(1)), oracles::scaled_norm_sq(1, 1),
                    DomainC::all_space(1));
  REQUIRE(dc_eval(q, {3}) == 4.5);
  const DCProblem a("a", oracles::quadratic(diag({1}), Eigen::VectorXd::Zero(1)), abs_oracle(),
                    DomainC::all_space(1));
  REQUIRE(dc_eval(a, {2}) == 0.0);
  REQUIRE_THROWS_AS(dc_eval(a, {1, 2}), ContractViolation);
  REQUIRE_THROWS_AS(DCProblem("bad", oracles::zero(2), oracles::zero(1), DomainC::all_space(2)), ContractViolation);
}

TEST_CASE("dc_subgrad_pair", "[dcfun]") {
  const DCProblem p("p", oracles::scaled_norm_sq(2, 1), oracles::zero(2), DomainC::all_space(2));
  REQUIRE(dc_subgrad_pair(p, {1, 2}).v == Point{1, 2});

  const DCProblem k("k", oracles::zero(1), abs_oracle(), DomainC::all_space(1));
  REQUIRE(dc_subgrad_pair(k, {0}).w == Point{1});

  const ConvexOracle g = oracles::sum(abs_oracle(), oracles::quadratic(diag({2}), Eigen::VectorXd::Zero(1)));
  const DCProblem gp("g", g, oracles::zero(1), DomainC::all_space(1));
  const Point v = dc_subgrad_pair(gp, {0.5}).v;
  const Point fd = finite_diff_grad(g.eval, {0.5}, 1e-6);
  REQUIRE(v[0] == Approx(fd[0]).epsilon(1e-6));
  REQUIRE(v[0] == 2.0);

  SECTION("a lying oracle is caught") {
    ConvexOracle liar = oracles::scaled_norm_sq(1, 1);
    liar.subgrad = [](const Point& x) { return Point{x[0] + 0.5}; };
    const DCProblem bad("bad", liar, oracles::zero(1), DomainC::all_space(1));
    REQUIRE_THROWS_AS(dc_subgrad_pair(bad, {1.0}), OracleError);
    REQUIRE_NOTHROW(dc_subgrad_pair(bad, {1.0}, false));
  }
  SECTION("interiority") {
    const DCProblem o("o", oracles::zero(1), oracles::zero(1), DomainC::positive_orthant(1));
    REQUIRE_THROWS_AS(dc_subgrad_pair(o, {0.0}), DomainError);
  }
}

TEST_CASE("check_kappa_condition", "[dcfun]") {
  const Point lo{-2, -2}, hi{2, 2};
  REQUIRE(check_kappa_condition(oracles::scaled_norm_sq(2, 1), lo, hi, 500) == Approx(1.0).epsilon(1e-12));
  const double r = check_kappa_condition(oracles::quadratic(diag({1, 3}), Eigen::Vector2d(0, 0)), lo, hi, 2000);
  REQUIRE(r <= 3.0 + 1e-9);
  REQUIRE(r > 2.9);
  const double kink = check_kappa_condition(abs_oracle(), {-1}, {1}, 2000);
  REQUIRE(kink > 100.0);
  REQUIRE_THROWS_AS(check_kappa_condition(abs_oracle(), {1}, {1}, 10), ContractViolation);
}

TEST_CASE("shipped oracles are convex with valid subgradients", "[dcfun]") {
  Rng rng(41);
  for (const ConvexOracle& o : shipped_oracles()) {
    double worst_mid = kInfinite, worst_sub = kInfinite, worst_mono = kInfinite, worst_lip = kInfinite;
    for (int t = 0; t < 1000; ++t) {
      const Point x = random_point(rng, 2), y = random_point(rng, 2);
      const Point m{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])};
      worst_mid = std::min(worst_mid, 0.5 * (o.eval(x) + o.eval(y)) - o.eval(m));
      const Point u = o.subgrad(x), v = o.subgrad(y);
      const double sq = (y[0] - x[0]) * (y[0] - x[0]) + (y[1] - x[1]) * (y[1] - x[1]);
      const double inner = u[0] * (y[0] - x[0]) + u[1] * (y[1] - x[1]);
      const double rho = o.strong_convexity_modulus;
      worst_sub = std::min(worst_sub, o.eval(y) - o.eval(x) - inner - 0.5 * rho * sq);
      const double mono = (v[0] - u[0]) * (y[0] - x[0]) + (v[1] - u[1]) * (y[1] - x[1]);
      worst_mono = std::min(worst_mono, mono - rho * sq);
      if (o.is_smooth && o.grad_lipschitz) {
        const double du = std::hypot(v[0] - u[0], v[1] - u[1]);
        worst_lip = std::min(worst_lip, *o.grad_lipschitz * std::sqrt(sq) - du);
      }
    }
    CAPTURE(o.description);
    REQUIRE(worst_mid >= -1e-10);
    REQUIRE(worst_sub >= -1e-10);
    REQUIRE(worst_mono >= -1e-10);
    if (worst_lip != kInfinite) REQUIRE(worst_lip >= -1e-10);
  }
}

TEST_CASE("oracle metadata", "[dcfun]") {
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 1, 2;
  const ConvexOracle q = oracles::quadratic(A, Eigen::Vector2d(0, 0));
  REQUIRE(q.strong_convexity_modulus == Approx(1.0));
  REQUIRE(*q.grad_lipschitz == Approx(3.0));
  REQUIRE(q.is_smooth);
  REQUIRE_FALSE(q.is_separable);
  REQUIRE(oracles::quadratic(diag({1, 2}), Eigen::Vector2d(0, 0)).is_separable);

  Eigen::MatrixXd nonsym(2, 2);
  nonsym << 1, 1, 0, 1;
  REQUIRE_THROWS_AS(oracles::quadratic(nonsym, Eigen::Vector2d(0, 0)), ContractViolation);
  REQUIRE_THROWS_AS(oracles::quadratic(diag({1, -1}), Eigen::Vector2d(0, 0)), ContractViolation);

  const ConvexOracle am = oracles::affine_max({{1, 0}, {0, 1}}, {0, 0});
  REQUIRE_FALSE(am.is_smooth);
  REQUIRE_FALSE(am.subdiff_lipschitz.has_value());
  REQUIRE(oracles::affine_max({{1, 0}}, {2}).is_smooth);
  REQUIRE_THROWS_AS(oracles::affine_max({{1, 0}, {1}}, {0, 0}), ContractViolation);
}

TEST_CASE("sum is additive, exactly", "[dcfun]") {
  const ConvexOracle a = oracles::quadratic(diag({1, 2}), Eigen::Vector2d(1, 0), 3);
  const ConvexOracle b = oracles::scaled_norm_sq(2, 0.5);
  const ConvexOracle s = oracles::sum(a, b);
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const Point x = random_point(rng, 2);
    REQUIRE(s.eval(x) == a.eval(x) + b.eval(x));
    const Point ga = a.subgrad(x), gb = b.subgrad(x), gs = s.subgrad(x);
    REQUIRE(gs[0] == ga[0] + gb[0]);
    REQUIRE(gs[1] == ga[1] + gb[1]);
  }
  REQUIRE(s.strong_convexity_modulus == a.strong_convexity_modulus + b.strong_convexity_modulus);
  REQUIRE(*s.grad_lipschitz == *a.grad_lipschitz + *b.grad_lipschitz);
  REQUIRE(*s.subdiff_lipschitz == *a.subdiff_lipschitz + *b.subdiff_lipschitz);
  REQUIRE(s.is_smooth);
  REQUIRE(s.is_separable);

  const ConvexOracle k = oracles::sum(oracles::scaled_norm_sq(1, 0.5), abs_oracle());
  REQUIRE_FALSE(k.is_smooth);
  REQUIRE_FALSE(k.grad_lipschitz.has_value());
  REQUIRE_THROWS_AS(oracles::sum(oracles::zero(1), oracles::zero(2)), ContractViolation);
}

TEST_CASE("subgradient_probe_slack flags non-subgradients", "[dcfun]") {
  const ConvexOracle a = abs_oracle();
  REQUIRE(subgradient_probe_slack(a, {0}, {0.5}, 50, 1) >= 0.0);
  REQUIRE(subgradient_probe_slack(a, {0}, {1.5}, 50, 1) < 0.0);
}
