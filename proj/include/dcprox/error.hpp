#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dcprox {

using Point = std::vector<double>;

/// Caller broke a documented precondition (dimension mismatch, bad argument).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point that must be strictly inside C is on or outside its boundary.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The proximal subproblem has no solution strictly inside C for this step size.
class InfeasibleStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle returned data that fails its contract, or an inner solve did not converge.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested algorithm/oracle/distance combination has no supported subproblem solver.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine produced or consumed a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcprox
