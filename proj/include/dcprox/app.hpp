#pragma once

#include <iosfwd>
#include <string>

#include "dcprox/config.hpp"

namespace dcprox {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitCertificate = 3,
  kExitAbnormal = 4,
};

/// Run, write the trace CSV and report, return an ExitCode. Messages go to err.
/// An abnormal termination (InfeasibleStep, OracleError) outranks certificate failure.
int run_command(const RunConfig& config, std::ostream& err);

/// Read, parse and run a config file.
int run_config_file(const std::string& path, std::ostream& err);

/// Sorted listing of instances, kernels and certificates.
std::string list_builtins();

}  // namespace dcprox
