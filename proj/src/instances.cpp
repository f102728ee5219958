#include "dcprox/instances.hpp"

#include <algorithm>

namespace dcprox {
namespace {

Eigen::VectorXd constant_vec(std::size_t n, double v) { return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), v); }

std::vector<InstanceInfo> make_catalogue() {
  std::vector<InstanceInfo> all;

  InstanceInfo adv;
  adv.name = "adversarial_kink";
  adv.formula = "f = 2|x| + 1/2 x^2;  g = max(2x, -2x) + x^2, h = 1/2 x^2";
  adv.fixed_dim = 1;
  adv.domains = {DomainKind::AllSpace};
  adv.rho = 1.0;
  adv.gamma = 2.0;
  adv.L = 1.0;
  adv.kappa = 2.0;
  adv.grid_lower = -3.0;
  adv.grid_upper = 3.0;
  all.push_back(adv);

  InstanceInfo cbox;
  cbox.name = "concave_box";
  cbox.formula = "f = -3/4 x^2 on (-1, 4);  g = 1/4 x^2, h = x^2";
  cbox.fixed_dim = 1;
  cbox.domains = {DomainKind::OpenBox};
  cbox.box_lower = {-1.0};
  cbox.box_upper = {4.0};
  cbox.rho = 2.0;
  cbox.gamma = 0.5;
  cbox.L = 2.0;
  cbox.kappa = 0.5;
  cbox.grid_lower = -1.0;
  cbox.grid_upper = 4.0;
  all.push_back(cbox);

  InstanceInfo decay;
  decay.name = "entropy_decay";
  decay.formula = "f = 1/2 ||x||^2;  g = ||x||^2, h = 1/2 ||x||^2";
  decay.domains = {DomainKind::AllSpace, DomainKind::PositiveOrthant};
  decay.rho = 1.0;
  decay.gamma = 2.0;
  decay.L = 1.0;
  decay.kappa = 2.0;
  decay.grid_lower = 0.0;
  decay.grid_upper = 3.0;
  all.push_back(decay);

  InstanceInfo kink;
  kink.name = "kink_2d";
  kink.formula = "f = 1/2 ||x||^2 - max(0, x1 + x2);  g = ||x||^2, h = 1/2 ||x||^2 + max(0, x1 + x2)";
  kink.fixed_dim = 2;
  kink.domains = {DomainKind::AllSpace, DomainKind::PositiveOrthant};
  kink.rho = 1.0;
  kink.gamma = 2.0;
  kink.kappa = 2.0;
  kink.final_criticality_check = true;
  kink.grid_lower = 0.0;
  kink.grid_upper = 3.0;
  all.push_back(kink);

  InstanceInfo quad;
  quad.name = "quadratic_dc";
  quad.formula = "f = 1/2 ||x - 2||^2;  g = ||x||^2, h = 1/2 ||x||^2 + 2 sum(x) - 2n";
  quad.domains = {DomainKind::AllSpace, DomainKind::PositiveOrthant};
  quad.rho = 1.0;
  quad.gamma = 2.0;
  quad.L = 1.0;
  quad.kappa = 2.0;
  quad.final_criticality_check = true;
  quad.grid_lower = 0.0;
  quad.grid_upper = 5.0;
  all.push_back(quad);

  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return all;
}

}  // namespace

const std::vector<InstanceInfo>& builtin_instances() {
  static const std::vector<InstanceInfo> catalogue = make_catalogue();
  return catalogue;
}

const InstanceInfo& builtin_info(const std::string& name) {
  for (const auto& info : builtin_instances()) {
    if (info.name == name) return info;
  }
  std::string valid;
  for (const auto& info : builtin_instances()) valid += (valid.empty() ? "" : ", ") + info.name;
  throw ContractViolation("unknown problem '" + name + "' (valid: " + valid + ")");
}

std::vector<ProxDistancePair> compatible_pairs(const InstanceInfo& info, std::size_t dim, double theta) {
  std::vector<ProxDistancePair> out;
  const auto lists = [&](DomainKind k) {
    return std::find(info.domains.begin(), info.domains.end(), k) != info.domains.end();
  };
  if (lists(DomainKind::AllSpace)) out.push_back(ProxDistancePair::natural(Kernel::SquaredEuclidean, dim));
  if (lists(DomainKind::OpenBox)) {
    out.emplace_back(Kernel::SquaredEuclidean, DomainC::open_box(info.box_lower, info.box_upper));
  }
  if (lists(DomainKind::PositiveOrthant)) {
    for (Kernel k : {Kernel::BoltzmannShannon, Kernel::Burg, Kernel::SecondOrderHomogeneous}) {
      out.push_back(ProxDistancePair::natural(k, dim, theta));
    }
  }
  return out;
}

DCProblem make_builtin(const std::string& name, const DomainC& domain) {
  const InstanceInfo& info = builtin_info(name);
  const std::size_t n = domain.dim();
  if (info.fixed_dim && *info.fixed_dim != n) {
    throw ContractViolation(name + " is defined in dimension " + std::to_string(*info.fixed_dim));
  }
  if (std::find(info.domains.begin(), info.domains.end(), domain.kind()) == info.domains.end()) {
    throw ContractViolation(name + " is not bounded below on domain " + domain.name());
  }
  if (domain.kind() == DomainKind::OpenBox && !(domain.lower() == info.box_lower && domain.upper() == info.box_upper)) {
    throw ContractViolation(name + " is defined on a fixed box");
  }

  if (name == "quadratic_dc") {
    auto g = oracles::scaled_norm_sq(n, 2.0);
    auto h = oracles::quadratic(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                                constant_vec(n, 2.0), -2.0 * static_cast<double>(n));
    DCProblem p(name, g, h, domain);
    p.known_minimizer = Point(n, 2.0);
    p.known_critical_points = {Point(n, 2.0)};
    return p;
  }
  if (name == "entropy_decay") {
    DCProblem p(name, oracles::scaled_norm_sq(n, 2.0), oracles::scaled_norm_sq(n, 1.0), domain);
    p.known_minimizer = Point(n, 0.0);
    p.known_critical_points = {Point(n, 0.0)};
    return p;
  }
  if (name == "kink_2d") {
    // Zero row first so the tie at x1 + x2 = 0 selects w = 0.
    auto hmax = oracles::affine_max({{0.0, 0.0}, {1.0, 1.0}}, {0.0, 0.0});
    DCProblem p(name, oracles::scaled_norm_sq(2, 2.0), oracles::sum(oracles::scaled_norm_sq(2, 1.0), hmax), domain);
    p.known_minimizer = Point{1.0, 1.0};
    p.known_critical_points = {Point{1.0, 1.0}, Point{0.0, 0.0}};
    return p;
  }
  if (name == "concave_box") {
    DCProblem p(name, oracles::scaled_norm_sq(1, 0.5), oracles::scaled_norm_sq(1, 2.0), domain);
    p.known_minimizer = Point{4.0};
    p.known_critical_points = {Point{-1.0}, Point{0.0}, Point{4.0}};
    return p;
  }
  if (name == "adversarial_kink") {
    auto g = oracles::sum(oracles::affine_max({{2.0}, {-2.0}}, {0.0, 0.0}), oracles::scaled_norm_sq(1, 2.0));
    DCProblem p(name, g, oracles::scaled_norm_sq(1, 1.0), domain);
    p.known_minimizer = Point{0.0};
    return p;
  }
  throw ContractViolation("unknown problem '" + name + "'");
}

}  // namespace dcprox
