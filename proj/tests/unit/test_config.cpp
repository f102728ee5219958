#include <catch_amalgamated.hpp>

#include <string>

#include "dcprox/config.hpp"

using namespace dcprox;

namespace {

const char* kMinimal =
    "problem = quadratic_dc\n"
    "distance = sq_euclidean\n"
    "algorithm = alg2\n"
    "x0 = [5]\n"
    "lambda = 0.4\n"
    "max_iter = 200\n";

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  FAIL("expected a ConfigError");
  return 0;
}

std::string error_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected a ConfigError");
  return {};
}

}  // namespace

TEST_CASE("minimal config", "[config]") {
  const RunConfig c = parse_config(kMinimal);
  REQUIRE(c.problem == "quadratic_dc");
  REQUIRE(c.kernel == Kernel::SquaredEuclidean);
  REQUIRE(c.domain == DomainKind::AllSpace);
  REQUIRE(c.algorithm == Algorithm::Alg2);
  REQUIRE(c.x0 == Point{5});
  REQUIRE(c.schedule == StepSchedule::constant(0.4));
  REQUIRE(c.solver.max_iter == 200);
  REQUIRE(c.certificates.empty());
  REQUIRE(parse_config(serialize_config(c)) == c);
}

TEST_CASE("comments, spacing and vectors", "[config]") {
  const RunConfig c = parse_config(
      "# header\n"
      "  problem=kink_2d   # trailing\n"
      "\n"
      "distance = burg\r\n"
      "algorithm = alg1\n"
      "x0 = [ 2.5 , 3e-1 ]\n"
      "lambda_seq = [1, 0.5, 0.25]\n"
      "lambda_min = 0.3\n"
      "seed = 42\n");
  REQUIRE(c.x0 == Point{2.5, 0.3});
  REQUIRE(c.domain == DomainKind::PositiveOrthant);
  REQUIRE(c.schedule == StepSchedule::sequence({1, 0.5, 0.25}, 0.3, 1.0));
  REQUIRE(c.solver.seed == 42);
}

TEST_CASE("config errors carry line numbers", "[config]") {
  const std::string base = "problem = quadratic_dc\ndistance = sq_euclidean\nx0 = [5]\nlambda = 0.4\n";
  SECTION("unknown algorithm names the valid set") {
    const std::string text = base + "algorithm = alg3\n";
    REQUIRE(error_line(text) == 5);
    const std::string msg = error_message(text);
    REQUIRE(msg.find("alg3") != std::string::npos);
    REQUIRE(msg.find("alg1, alg2") != std::string::npos);
  }
  SECTION("infeasible x0 on the orthant") {
    const std::string text =
        "problem = quadratic_dc\ndistance = boltzmann_shannon\ndomain = positive_orthant\nalgorithm = alg1\n"
        "x0 = [-1]\nlambda = 1\n";
    REQUIRE(error_line(text) == 5);
    REQUIRE(error_message(text).find("x0") != std::string::npos);
  }
  SECTION("unknown key") { REQUIRE(error_line(base + "algorithm = alg1\nlamda = 2\n") == 6); }
  SECTION("duplicate key") { REQUIRE(error_line(base + "algorithm = alg1\nx0 = [1]\n") == 6); }
  SECTION("malformed number") { REQUIRE(error_line(base + "algorithm = alg1\nstep_tol = 1e-1x\n") == 6); }
  SECTION("malformed vector") {
    REQUIRE(error_line("problem = quadratic_dc\ndistance = sq_euclidean\nalgorithm = alg1\nx0 = 5\nlambda = 1\n") ==
            4);
  }
  SECTION("unknown kernel") {
    const std::string text = "problem = quadratic_dc\ndistance = hellinger\nalgorithm = alg1\nx0 = [1]\nlambda = 1\n";
    REQUIRE(error_line(text) == 2);
  }
  SECTION("missing required key") {
    REQUIRE(error_message(base).find("algorithm") != std::string::npos);
    REQUIRE(error_line(base) == 0);
  }
  SECTION("no line without '='") { REQUIRE(error_line(base + "algorithm alg1\n") == 5); }
  SECTION("theta below 1") {
    const std::string text =
        "problem = quadratic_dc\ndistance = second_order\ntheta = 0.5\nalgorithm = alg1\nx0 = [1]\nlambda = 1\n";
    REQUIRE(error_line(text) == 2);
  }
  SECTION("instance does not allow the domain") {
    const std::string text = "problem = adversarial_kink\ndistance = burg\nalgorithm = alg1\nx0 = [1]\nlambda = 1\n";
    REQUIRE(error_line(text) == 1);
  }
  SECTION("alg2 with nonsmooth g") {
    const std::string text =
        "problem = adversarial_kink\ndistance = sq_euclidean\nalgorithm = alg2\nx0 = [1]\nlambda = 1\n";
    REQUIRE(error_line(text) == 3);
  }
  SECTION("both lambda and lambda_seq") { REQUIRE(error_line(base + "algorithm = alg1\nlambda_seq = [1]\n") == 4); }
  SECTION("unknown certificate") { REQUIRE(error_line(base + "algorithm = alg1\ncertificates = descnt\n") == 6); }
  SECTION("inline problem needs constants for its certificates") {
    const std::string text =
        "problem = inline\ng = scaled_norm_sq(mu=2)\nh = zero()\ndistance = sq_euclidean\nalgorithm = alg1\n"
        "x0 = [1]\nlambda = 0.1\ncertificates = descent\nrho = 1\n";
    REQUIRE(error_line(text) == 8);
    REQUIRE(error_message(text).find("kappa") != std::string::npos);
    REQUIRE_NOTHROW(parse_config(text + "kappa = 2\n"));
  }
  SECTION("bad inline oracle") {
    const std::string text =
        "problem = inline\ng = scaled_norm_sq(mu=2)\nh = cubic()\ndistance = sq_euclidean\nalgorithm = alg1\n"
        "x0 = [1]\nlambda = 0.1\n";
    REQUIRE(error_line(text) == 3);
  }
}

TEST_CASE("certificate constants default from the instance metadata", "[config]") {
  const RunConfig c = parse_config(std::string(kMinimal) + "certificates = descent, fejer, beta\n");
  REQUIRE(c.rho == 1.0);
  REQUIRE_FALSE(c.kappa.has_value());  // alg2 does not use kappa
  REQUIRE(c.gamma == 2.0);
  REQUIRE(c.L == 1.0);
  REQUIRE(c.x_bar == Point{2.0});
  const RunConfig d = parse_config(std::string(kMinimal) + "certificates = descent\nrho = 10\n");
  REQUIRE(d.rho == 10.0);
}

TEST_CASE("inline oracle expressions", "[config]") {
  const ConvexOracle g = parse_oracle_expr("quadratic(A=[2, 0; 0, 4], b=[-1, 0], c=3) + scaled_norm_sq(mu=1)", 2);
  REQUIRE(g.eval({1, 1}) == 0.5 * (2 + 4) - 1 + 3 + 1.0);
  REQUIRE(g.strong_convexity_modulus == 3.0);
  const ConvexOracle h = parse_oracle_expr("affine_max(rows=[1, 1; 0, 0], offsets=[0, 0])", 2);
  REQUIRE(h.eval({1, 2}) == 3.0);
  REQUIRE(h.eval({-1, -2}) == 0.0);
  REQUIRE(parse_oracle_expr("zero()", 3).eval({1, 2, 3}) == 0.0);
  REQUIRE_THROWS_AS(parse_oracle_expr("scaled_norm_sq(mu=1, nu=2)", 1), ContractViolation);
  REQUIRE_THROWS_AS(parse_oracle_expr("quadratic(A=[1])", 2), ContractViolation);
  REQUIRE_THROWS_AS(parse_oracle_expr("scaled_norm_sq(mu=1) +", 1), ContractViolation);
  REQUIRE_THROWS_AS(parse_oracle_expr("scaled_norm_sq", 1), ContractViolation);
}

TEST_CASE("parse -> serialize -> parse is idempotent", "[config]") {
  const std::string configs[] = {
      kMinimal,
      std::string(kMinimal) + "certificates = descent, beta, fejer, summability, criticality\n",
      "problem = kink_2d\ndistance = second_order\ntheta = 2.5\nalgorithm = alg1\nx0 = [0.1, 0.7]\n"
      "lambda_seq = [1, 0.5, 0.25]\nlambda_min = 0.3\nstep_tol = 0\nseed = 9\nrecord_certificates = false\n",
      "problem = concave_box\ndistance = sq_euclidean\ndomain = box\nbox_lower = [-1]\nbox_upper = [4]\n"
      "algorithm = alg1\nx0 = [0.3]\nlambda = 0.1\ncertificates = descent\ntrace = a b.csv\nreport = r.txt\n",
      "problem = inline\ng = quadratic(A=[2, 0; 0, 4], b=[-1, -2], c=0)\nh = scaled_norm_sq(mu=1)\ndistance = burg\n"
      "algorithm = alg2\nx0 = [3, 0.2]\nlambda = 0.1\ninner_method = separable\ninner_tol = 1e-9\n"
      "certificates = descent\nrho = 1\ncriticality_tol = 1e-5\n",
  };
  for (const std::string& text : configs) {
    CAPTURE(text);
    const RunConfig c = parse_config(text);
    const std::string s1 = serialize_config(c);
    const RunConfig c2 = parse_config(s1);
    REQUIRE(c2 == c);
    REQUIRE(serialize_config(c2) == s1);
  }
}

TEST_CASE("serialize keeps full double precision", "[config]") {
  RunConfig c = parse_config(kMinimal);
  c.x0 = {0.1 + 0.2};
  c.schedule = StepSchedule::constant(1.0 / 3.0);
  REQUIRE(parse_config(serialize_config(c)) == c);
}
