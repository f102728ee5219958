#pragma once

// Shipped DC test instances. Each is bounded below on the closure of every
// domain it lists, and carries the constants the convergence theory uses.

#include <optional>
#include <string>
#include <vector>

#include "dcprox/dcfun.hpp"

namespace dcprox {

struct InstanceInfo {
  std::string name;
  std::string formula;
  /// Unset when the dimension follows x0.
  std::optional<std::size_t> fixed_dim;
  std::vector<DomainKind> domains;
  /// Bounds of the box domain for box instances.
  Point box_lower, box_upper;
  /// Strong convexity modulus of h (rho) and of g (gamma).
  double rho = 0.0;
  double gamma = 0.0;
  /// Lipschitz constant of grad h; unset when h is nonsmooth.
  std::optional<double> L;
  /// Declared kappa for dg. For adversarial_kink this is deliberately the
  /// smooth part only; the kink makes the true constant unbounded.
  std::optional<double> kappa;
  /// Has interior critical points that iterates approach from inside C, so the
  /// final-iterate criticality check applies.
  bool final_criticality_check = false;
  /// Per-axis grid box for brute_force_min (same bounds on every axis).
  double grid_lower = 0.0, grid_upper = 1.0;
};

/// All shipped instances, sorted by name.
const std::vector<InstanceInfo>& builtin_instances();

/// Throws ContractViolation for unknown names.
const InstanceInfo& builtin_info(const std::string& name);

/// Kernels usable with an instance: those whose natural domain the instance
/// lists, plus sq_euclidean on a box for box instances.
std::vector<ProxDistancePair> compatible_pairs(const InstanceInfo& info, std::size_t dim, double theta = 1.0);

/// Assemble the instance on `domain`, with known minimizer and critical points
/// filled in. Throws ContractViolation if the domain is not listed or the
/// dimension does not fit.
DCProblem make_builtin(const std::string& name, const DomainC& domain);

}  // namespace dcprox
