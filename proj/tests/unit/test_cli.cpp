#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcprox/app.hpp"

using namespace dcprox;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dcprox_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int exec(const std::string& args) {
  const std::string cmd = std::string(DCPROX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quadratic_config(const fs::path& dir, const std::string& extra = "") {
  return "problem = quadratic_dc\ndistance = sq_euclidean\nalgorithm = alg2\nx0 = [5]\nlambda = 0.4\n"
         "max_iter = 200\ncertificates = descent, beta, fejer\ntrace = " +
         (dir / "trace.csv").string() + "\nreport = " + (dir / "report.txt").string() + "\n" + extra;
}

int run_text(const std::string& text, std::ostream& err) { return run_command(parse_config(text), err); }

}  // namespace

TEST_CASE("alg2 quadratic run exits 0 and converges", "[cli]") {
  TempDir d;
  std::ostringstream err;
  REQUIRE(run_text(quadratic_config(d.path), err) == kExitOk);
  std::istringstream csv(slurp(d.path / "trace.csv"));
  std::string line, prev, last;
  while (std::getline(csv, line)) {
    prev = last;
    last = line;
  }
  // The last step row precedes the terminal row.
  std::vector<std::string> fields;
  std::stringstream ss(prev);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  REQUIRE(std::stod(fields.at(2)) <= 1e-10);
  const std::string report = slurp(d.path / "report.txt");
  REQUIRE(report.find("descent_alg2") != std::string::npos);
  REQUIRE(report.find("FAIL") == std::string::npos);
}

TEST_CASE("overstated rho gives the certificate exit code", "[cli]") {
  TempDir d;
  std::ostringstream err;
  REQUIRE(run_text(quadratic_config(d.path, "rho = 10\n"), err) == kExitCertificate);
  const std::string report = slurp(d.path / "report.txt");
  const auto pos = report.find("certificate descent_alg2 min_slack -");
  REQUIRE(pos != std::string::npos);
  REQUIRE(report.find("FAIL", pos) != std::string::npos);
}

TEST_CASE("exit status matrix", "[cli]") {
  TempDir d;
  const fs::path cfg = d.path / "run.cfg";

  write_file(cfg, quadratic_config(d.path));
  REQUIRE(exec("run " + cfg.string()) == kExitOk);

  write_file(cfg, quadratic_config(d.path, "rho = 10\n"));
  REQUIRE(exec("run " + cfg.string()) == kExitCertificate);

  write_file(cfg, "problem = quadratic_dc\ndistance = sq_euclidean\nalgorithm = alg3\nx0 = [5]\nlambda = 0.4\n");
  REQUIRE(exec("run " + cfg.string()) == kExitConfig);

  REQUIRE(exec("run " + (d.path / "missing.cfg").string()) == kExitIo);

  write_file(cfg, "problem = quadratic_dc\ndistance = sq_euclidean\nalgorithm = alg2\nx0 = [5]\nlambda = 0.4\n"
                  "trace = /nonexistent-dir/t.csv\nreport = " +
                      (d.path / "r.txt").string() + "\n");
  REQUIRE(exec("run " + cfg.string()) == kExitIo);

  write_file(cfg, "problem = quadratic_dc\ndistance = sq_euclidean\nalgorithm = alg2\nx0 = [5]\nlambda = 0.4\n"
                  "trace = " +
                      (d.path / "t.csv").string() + "\nreport = /nonexistent-dir/r.txt\n");
  REQUIRE(exec("run " + cfg.string()) == kExitIo);

  // Euclidean steps on a box eventually leave it.
  write_file(cfg, "problem = concave_box\ndistance = sq_euclidean\ndomain = box\nbox_lower = [-1]\n"
                  "box_upper = [4]\nalgorithm = alg1\nx0 = [1.5]\nlambda = 0.5\nlambda_min = 0.1\ntrace = " +
                      (d.path / "t.csv").string() + "\nreport = " + (d.path / "r.txt").string() + "\n");
  REQUIRE(exec("run " + cfg.string()) == kExitAbnormal);
  REQUIRE(slurp(d.path / "r.txt").find("termination InfeasibleStep") != std::string::npos);

  // Adversarial instance: the certificate reports the non-monotone trace.
  write_file(cfg, "problem = adversarial_kink\ndistance = sq_euclidean\nalgorithm = alg1\nx0 = [0.5]\n"
                  "lambda = 1\nmax_iter = 50\ncertificates = descent\ntrace = " +
                      (d.path / "t.csv").string() + "\nreport = " + (d.path / "r.txt").string() + "\n");
  REQUIRE(exec("run " + cfg.string()) == kExitCertificate);

  REQUIRE(exec("") == kExitConfig);
  REQUIRE(exec("frobnicate") == kExitConfig);
  REQUIRE(exec("run") == kExitConfig);
  REQUIRE(exec("list") == kExitOk);
}

TEST_CASE("list_builtins", "[cli]") {
  const std::string text = list_builtins();
  REQUIRE(text == list_builtins());
  const auto kernels_at = text.find("kernels:\n");
  const auto certs_at = text.find("certificates:\n");
  REQUIRE(kernels_at != std::string::npos);
  REQUIRE(certs_at != std::string::npos);
  REQUIRE(text.substr(kernels_at, certs_at - kernels_at) ==
          "kernels:\n  boltzmann_shannon\n  burg\n  second_order(theta >= 1)\n  sq_euclidean\n");
  std::size_t prev = 0;
  for (const char* name : {"adversarial_kink", "concave_box", "entropy_decay", "kink_2d", "quadratic_dc"}) {
    const auto at = text.find("  " + std::string(name) + "  ");
    REQUIRE(at != std::string::npos);
    REQUIRE(at > prev);
    prev = at;
  }
  REQUIRE(text.find("rho 1  gamma 2  L 1  kappa 2") != std::string::npos);
}

TEST_CASE("same seed gives byte-identical traces", "[cli]") {
  TempDir d;
  const fs::path cfg = d.path / "run.cfg";
  write_file(cfg, "problem = kink_2d\ndistance = burg\nalgorithm = alg1\nx0 = [2.5, 0.3]\nlambda = 0.3\nseed = 5\n"
                  "certificates = descent, beta, criticality\ntrace = " +
                      (d.path / "a.csv").string() + "\nreport = " + (d.path / "a.txt").string() + "\n");
  REQUIRE(exec("run " + cfg.string()) == kExitOk);
  const std::string first = slurp(d.path / "a.csv");
  REQUIRE(exec("run " + cfg.string()) == kExitOk);
  REQUIRE(slurp(d.path / "a.csv") == first);
  REQUIRE(first.size() > 100);
}

TEST_CASE("shipped example configs parse", "[cli]") {
  for (const auto& entry : fs::directory_iterator(DCPROX_EXAMPLES_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    REQUIRE_NOTHROW(parse_config(slurp(entry.path())));
  }
}
