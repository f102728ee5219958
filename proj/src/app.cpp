#include "dcprox/app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dcprox/diagnostics.hpp"
#include "dcprox/instances.hpp"
#include "dcprox/trace_io.hpp"

namespace dcprox {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "-"; }

/// Fewer than 10 steps leaves nothing to judge a plateau on.
std::optional<Certificate> summability_certificate(const StepSeries& s) {
  if (s.size() < 10) return std::nullopt;
  const SummabilityReport r = summability_report(s);
  return make_certificate("summability", {0.05 - r.tail_ratio}, 0.0);
}

}  // namespace

int run_command(const RunConfig& c, std::ostream& err) {
  std::ofstream trace_out(c.trace_path, std::ios::binary);
  if (!trace_out) {
    err << "dcprox: cannot open trace file '" << c.trace_path << "'\n";
    return kExitIo;
  }
  std::ofstream report(c.report_path, std::ios::binary);
  if (!report) {
    err << "dcprox: cannot open report file '" << c.report_path << "'\n";
    return kExitIo;
  }

  const DCProblem p = make_problem(c);
  const ProxDistancePair pair = make_pair(c);
  const Trace trace = run(p, pair, c.algorithm, c.x0, c.schedule, c.solver);
  write_trace_csv(trace_out, trace);

  const StepSeries series = step_series(trace);
  std::vector<Certificate> certs;
  std::vector<std::string> skipped;
  try {
    for (CertificateKind k : c.certificates) {
      switch (k) {
        case CertificateKind::Descent:
          certs.push_back(c.algorithm == Algorithm::Alg1 ? descent_certificate_alg1(series, *c.rho, *c.kappa)
                                                         : descent_certificate_alg2(series, *c.rho));
          break;
        case CertificateKind::Beta:
          certs.push_back(beta_certificate(series));
          break;
        case CertificateKind::Fejer:
          certs.push_back(fejer_certificate(trace, p, *c.x_bar, *c.gamma, *c.L, pair, c.algorithm));
          break;
        case CertificateKind::Summability:
          if (auto s = summability_certificate(series)) certs.push_back(*s);
          else skipped.push_back("summability");
          break;
        case CertificateKind::Criticality: {
          const double r = criticality_residual(p, trace.final_x, 200, 1.0, c.solver.seed);
          certs.push_back(make_certificate("criticality", {c.criticality_tol - r}, 0.0));
          break;
        }
      }
    }
  } catch (const ContractViolation& e) {
    err << "dcprox: certificate precondition failed: " << e.what() << "\n";
    return kExitConfig;
  }

  report << "problem " << trace.problem_id << "\n";
  report << "distance " << trace.distance_id << "\n";
  report << "algorithm " << algorithm_name(trace.algorithm) << "\n";
  report << "termination " << termination_name(trace.termination) << "\n";
  if (!trace.message.empty()) report << "message " << trace.message << "\n";
  report << "iterations " << trace.records.size() << "\n";
  report << "final_f " << num(trace.final_f) << "\n";
  bool all_pass = true;
  for (const Certificate& cert : certs) {
    report << "certificate " << cert.name << " min_slack " << num(cert.min_slack) << " tolerance "
           << num(cert.tolerance) << " " << (cert.passed ? "PASS" : "FAIL") << "\n";
    all_pass = all_pass && cert.passed;
  }
  for (const std::string& name : skipped) report << "certificate " << name << " skipped (fewer than 10 steps)\n";

  trace_out.flush();
  report.flush();
  if (!trace_out || !report) {
    err << "dcprox: write failed\n";
    return kExitIo;
  }
  if (trace.termination == Termination::InfeasibleStep || trace.termination == Termination::OracleError) {
    err << "dcprox: run ended with " << termination_name(trace.termination) << ": " << trace.message << "\n";
    return kExitAbnormal;
  }
  if (!all_pass) {
    err << "dcprox: certificate failure, see " << c.report_path << "\n";
    return kExitCertificate;
  }
  return kExitOk;
}

int run_config_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "dcprox: cannot read config '" << path << "'\n";
    return kExitIo;
  }
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig config;
  try {
    config = parse_config(text.str());
  } catch (const ContractViolation& e) {
    err << "dcprox: " << path << ": " << e.what() << "\n";
    return kExitConfig;
  }
  return run_command(config, err);
}

std::string list_builtins() {
  std::ostringstream os;
  os << "instances:\n";
  for (const InstanceInfo& info : builtin_instances()) {
    os << "  " << info.name << "  " << info.formula << "\n";
    os << "    dim " << (info.fixed_dim ? std::to_string(*info.fixed_dim) : std::string("any")) << "  domains";
    for (DomainKind d : info.domains) {
      os << " "
         << (d == DomainKind::AllSpace ? "all_space" : d == DomainKind::PositiveOrthant ? "positive_orthant" : "box");
    }
    os << "\n    rho " << num(info.rho) << "  gamma " << num(info.gamma) << "  L " << opt_num(info.L) << "  kappa "
       << opt_num(info.kappa) << "\n";
  }
  os << "kernels:\n";
  std::vector<std::string> kernels;
  for (Kernel k : kAllKernels) {
    kernels.push_back(std::string(kernel_name(k)) + (k == Kernel::SecondOrderHomogeneous ? "(theta >= 1)" : ""));
  }
  std::sort(kernels.begin(), kernels.end());
  for (const std::string& k : kernels) os << "  " << k << "\n";
  os << "certificates:\n";
  os << "  beta\n";
  os << "  criticality(criticality_tol)\n";
  os << "  descent(rho, kappa for alg1)\n";
  os << "  fejer(gamma, L, x_bar)\n";
  os << "  summability\n";
  return os.str();
}

}  // namespace dcprox
