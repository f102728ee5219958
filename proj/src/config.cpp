#include "dcprox/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "dcprox/instances.hpp"
#include "dcprox/vec.hpp"

namespace dcprox {

ConfigError::ConfigError(std::size_t line, const std::string& msg)
    : ContractViolation(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

std::string_view certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::Beta: return "beta";
    case CertificateKind::Criticality: return "criticality";
    case CertificateKind::Descent: return "descent";
    case CertificateKind::Fejer: return "fejer";
    case CertificateKind::Summability: return "summability";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view s, std::size_t line, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(line, "malformed number '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view s, std::size_t line, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(line, "malformed integer '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

/// Split on `sep` outside brackets and parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::vector<Point> parse_matrix(std::string_view s, std::size_t line, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError(line, std::string(what) + ": expected a bracketed list like [1, 2]");
  }
  const std::string_view body = trim(s.substr(1, s.size() - 2));
  if (body.empty()) throw ConfigError(line, std::string(what) + ": empty list");
  std::vector<Point> rows;
  for (std::string_view row : split_top(body, ';')) {
    Point r;
    for (std::string_view item : split_top(row, ',')) r.push_back(parse_number(item, line, what));
    if (!rows.empty() && rows.front().size() != r.size()) {
      throw ConfigError(line, std::string(what) + ": rows differ in length");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Point parse_vector(std::string_view s, std::size_t line, std::string_view what) {
  auto rows = parse_matrix(s, line, what);
  if (rows.size() != 1) throw ConfigError(line, std::string(what) + ": expected a vector, not a matrix");
  return rows.front();
}

bool parse_bool(std::string_view s, std::size_t line, std::string_view what) {
  s = trim(s);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError(line, std::string(what) + ": expected true or false");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_vector(const Point& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_double(p[i]);
  return s + "]";
}

// --- inline oracle expressions ---------------------------------------------

std::map<std::string, std::string_view> parse_args(std::string_view body, std::string_view term) {
  std::map<std::string, std::string_view> args;
  if (trim(body).empty()) return args;
  for (std::string_view a : split_top(body, ',')) {
    const auto eq = a.find('=');
    if (eq == std::string_view::npos) {
      throw ContractViolation(std::string(term) + ": argument '" + std::string(a) + "' is not key=value");
    }
    args.emplace(std::string(trim(a.substr(0, eq))), trim(a.substr(eq + 1)));
  }
  return args;
}

ConvexOracle parse_term(std::string_view term, std::size_t dim) {
  const auto open = term.find('(');
  if (open == std::string_view::npos || term.back() != ')') {
    throw ContractViolation("oracle term '" + std::string(term) + "' must look like name(args)");
  }
  const std::string name(trim(term.substr(0, open)));
  auto args = parse_args(term.substr(open + 1, term.size() - open - 2), name);
  auto take = [&](const char* key) -> std::string_view {
    const auto it = args.find(key);
    if (it == args.end()) throw ContractViolation(name + ": missing argument '" + key + "'");
    const std::string_view v = it->second;
    args.erase(it);
    return v;
  };
  auto finish = [&](ConvexOracle o) {
    if (!args.empty()) throw ContractViolation(name + ": unknown argument '" + args.begin()->first + "'");
    if (o.dim != dim) {
      throw ContractViolation(name + ": dimension " + std::to_string(o.dim) + " does not match x0 (" +
                              std::to_string(dim) + ")");
    }
    return o;
  };
  if (name == "quadratic") {
    const auto rows = parse_matrix(take("A"), 0, "quadratic A");
    const Point b = args.count("b") ? parse_vector(take("b"), 0, "quadratic b") : Point(rows.size(), 0.0);
    const double c = args.count("c") ? parse_number(take("c"), 0, "quadratic c") : 0.0;
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (static_cast<Eigen::Index>(rows.front().size()) != n || static_cast<Eigen::Index>(b.size()) != n) {
      throw ContractViolation("quadratic: A must be square and match b");
    }
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return finish(oracles::quadratic(A, Eigen::Map<const Eigen::VectorXd>(b.data(), n), c));
  }
  if (name == "affine_max") {
    const auto rows = parse_matrix(take("rows"), 0, "affine_max rows");
    const Point offsets = parse_vector(take("offsets"), 0, "affine_max offsets");
    return finish(oracles::affine_max(rows, std::vector<double>(offsets.begin(), offsets.end())));
  }
  if (name == "scaled_norm_sq") return finish(oracles::scaled_norm_sq(dim, parse_number(take("mu"), 0, "mu")));
  if (name == "zero") return finish(oracles::zero(dim));
  throw ContractViolation("unknown oracle '" + name + "' (valid: affine_max, quadratic, scaled_norm_sq, zero)");
}

struct Entry {
  std::string value;
  std::size_t line;
};

const char* const kKnownKeys[] = {
    "problem", "g", "h", "distance", "theta", "domain", "box_lower", "box_upper", "algorithm", "x0",
    "lambda", "lambda_seq", "lambda_min", "lambda_max", "max_iter", "step_tol", "inner_tol", "inner_method",
    "record_certificates", "seed", "certificates", "rho", "kappa", "gamma", "L", "x_bar", "criticality_tol",
    "trace", "report"};

}  // namespace

ConvexOracle parse_oracle_expr(std::string_view expr, std::size_t dim) {
  expr = trim(expr);
  if (expr.empty()) throw ContractViolation("empty oracle expression");
  std::optional<ConvexOracle> acc;
  for (std::string_view term : split_top(expr, '+')) {
    if (term.empty()) throw ContractViolation("empty term in oracle expression");
    ConvexOracle o = parse_term(term, dim);
    acc = acc ? oracles::sum(*acc, o) : o;
  }
  acc->description = std::string(expr);
  return *acc;
}

DomainC make_domain(const RunConfig& c) {
  switch (c.domain) {
    case DomainKind::AllSpace: return DomainC::all_space(c.x0.size());
    case DomainKind::PositiveOrthant: return DomainC::positive_orthant(c.x0.size());
    case DomainKind::OpenBox: return DomainC::open_box(c.box_lower, c.box_upper);
  }
  throw ContractViolation("unknown domain");
}

ProxDistancePair make_pair(const RunConfig& c) { return ProxDistancePair(c.kernel, make_domain(c), c.theta); }

DCProblem make_problem(const RunConfig& c) {
  if (c.problem == "inline") {
    return DCProblem("inline", parse_oracle_expr(c.g_expr, c.x0.size()), parse_oracle_expr(c.h_expr, c.x0.size()),
                     make_domain(c));
  }
  return make_builtin(c.problem, make_domain(c));
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    if (!kv.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(kv[key].line) + ")");
    }
  }

  auto has = [&](const char* k) { return kv.count(k) > 0; };
  auto get = [&](const char* k) -> const Entry& {
    const auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError(0, std::string("missing required key '") + k + "'");
    return it->second;
  };
  auto num = [&](const char* k) { return parse_number(get(k).value, get(k).line, k); };

  RunConfig c;

  // distance / domain
  const Entry& dist = get("distance");
  try {
    c.kernel = kernel_from_name(dist.value);
  } catch (const ContractViolation& e) {
    throw ConfigError(dist.line, e.what());
  }
  if (has("theta")) c.theta = num("theta");
  if (c.kernel != Kernel::SecondOrderHomogeneous && has("theta")) {
    throw ConfigError(get("theta").line, "theta applies to second_order only");
  }
  c.domain = c.kernel == Kernel::SquaredEuclidean ? DomainKind::AllSpace : DomainKind::PositiveOrthant;
  if (has("domain")) {
    const Entry& d = get("domain");
    if (d.value == "all_space") c.domain = DomainKind::AllSpace;
    else if (d.value == "positive_orthant") c.domain = DomainKind::PositiveOrthant;
    else if (d.value == "box") c.domain = DomainKind::OpenBox;
    else throw ConfigError(d.line, "unknown domain '" + d.value + "' (valid: all_space, box, positive_orthant)");
  }
  if (c.domain == DomainKind::OpenBox) {
    c.box_lower = parse_vector(get("box_lower").value, get("box_lower").line, "box_lower");
    c.box_upper = parse_vector(get("box_upper").value, get("box_upper").line, "box_upper");
  } else if (has("box_lower") || has("box_upper")) {
    throw ConfigError(get(has("box_lower") ? "box_lower" : "box_upper").line, "box bounds need domain = box");
  }

  // algorithm
  const Entry& alg = get("algorithm");
  if (alg.value == "alg1") c.algorithm = Algorithm::Alg1;
  else if (alg.value == "alg2") c.algorithm = Algorithm::Alg2;
  else throw ConfigError(alg.line, "unknown algorithm '" + alg.value + "' (valid: alg1, alg2)");

  // x0
  const Entry& x0 = get("x0");
  c.x0 = parse_vector(x0.value, x0.line, "x0");

  DomainC domain = DomainC::all_space(1);
  try {
    domain = make_domain(c);
    vec::require_dim(c.x0, domain.dim(), "x0");
  } catch (const ContractViolation& e) {
    throw ConfigError(x0.line, e.what());
  }
  try {
    (void)make_pair(c);
  } catch (const ContractViolation& e) {
    throw ConfigError(dist.line, e.what());
  }

  // problem
  const Entry& prob = get("problem");
  c.problem = prob.value;
  if (c.problem == "inline") {
    c.g_expr = get("g").value;
    c.h_expr = get("h").value;
    for (const char* k : {"g", "h"}) {
      try {
        (void)parse_oracle_expr(get(k).value, c.x0.size());
      } catch (const ContractViolation& e) {
        throw ConfigError(get(k).line, e.what());
      }
    }
  } else {
    if (has("g") || has("h")) throw ConfigError(get(has("g") ? "g" : "h").line, "g/h need problem = inline");
    try {
      (void)make_builtin(c.problem, domain);
    } catch (const ContractViolation& e) {
      throw ConfigError(prob.line, e.what());
    }
  }
  if (!domain.contains(c.x0)) {
    throw ConfigError(x0.line, "x0 is not strictly inside the " + domain.name() + " domain");
  }

  // schedule
  if (has("lambda") == has("lambda_seq")) {
    throw ConfigError(has("lambda") ? get("lambda").line : 0, "give exactly one of 'lambda' or 'lambda_seq'");
  }
  try {
    if (has("lambda")) {
      const double v = num("lambda");
      c.schedule = StepSchedule::constant(v, has("lambda_min") ? num("lambda_min") : v,
                                          has("lambda_max") ? num("lambda_max") : v);
    } else {
      const Entry& e = get("lambda_seq");
      const Point seq = parse_vector(e.value, e.line, "lambda_seq");
      const double lo = has("lambda_min") ? num("lambda_min") : *std::min_element(seq.begin(), seq.end());
      const double hi = has("lambda_max") ? num("lambda_max") : *std::max_element(seq.begin(), seq.end());
      c.schedule = StepSchedule::sequence(std::vector<double>(seq.begin(), seq.end()), lo, hi);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw ConfigError(get(has("lambda") ? "lambda" : "lambda_seq").line, e.what());
  }

  // solver
  if (has("max_iter")) c.solver.max_iter = parse_unsigned(get("max_iter").value, get("max_iter").line, "max_iter");
  if (has("step_tol")) c.solver.step_tol = num("step_tol");
  if (has("inner_tol")) c.solver.inner_tol = num("inner_tol");
  if (has("record_certificates")) {
    c.solver.record_certificates = parse_bool(get("record_certificates").value, get("record_certificates").line,
                                              "record_certificates");
  }
  if (has("seed")) c.solver.seed = parse_unsigned(get("seed").value, get("seed").line, "seed");
  if (has("inner_method")) {
    const Entry& e = get("inner_method");
    if (e.value == "auto") c.solver.inner_method = InnerMethod::Auto;
    else if (e.value == "newton") c.solver.inner_method = InnerMethod::Newton;
    else if (e.value == "separable") c.solver.inner_method = InnerMethod::Separable;
    else throw ConfigError(e.line, "unknown inner_method '" + e.value + "' (valid: auto, newton, separable)");
  }
  try {
    c.solver.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(0, e.what());
  }
  if (c.algorithm == Algorithm::Alg2) {
    try {
      check_alg2_supported(make_problem(c), make_pair(c));
    } catch (const UnsupportedConfiguration& e) {
      throw ConfigError(alg.line, e.what());
    }
  }

  // certificates and constants
  for (const char* k : {"rho", "kappa", "gamma", "L"}) {
    if (!has(k)) continue;
    const double v = num(k);
    if (std::string_view(k) == "rho") c.rho = v;
    if (std::string_view(k) == "kappa") c.kappa = v;
    if (std::string_view(k) == "gamma") c.gamma = v;
    if (std::string_view(k) == "L") c.L = v;
  }
  if (has("x_bar")) {
    c.x_bar = parse_vector(get("x_bar").value, get("x_bar").line, "x_bar");
    if (c.x_bar->size() != c.x0.size()) throw ConfigError(get("x_bar").line, "x_bar dimension differs from x0");
  }
  if (has("criticality_tol")) c.criticality_tol = num("criticality_tol");
  if (has("certificates")) {
    const Entry& e = get("certificates");
    for (std::string_view name : split_top(e.value, ',')) {
      auto it = std::find_if(std::begin(kAllCertificateKinds), std::end(kAllCertificateKinds),
                             [&](CertificateKind k) { return certificate_kind_name(k) == name; });
      if (it == std::end(kAllCertificateKinds)) {
        throw ConfigError(e.line, "unknown certificate '" + std::string(name) +
                                      "' (valid: beta, criticality, descent, fejer, summability)");
      }
      if (std::find(c.certificates.begin(), c.certificates.end(), *it) != c.certificates.end()) {
        throw ConfigError(e.line, "certificate '" + std::string(name) + "' listed twice");
      }
      c.certificates.push_back(*it);
    }
    const InstanceInfo* info = c.problem == "inline" ? nullptr : &builtin_info(c.problem);
    auto need = [&](std::optional<double>& slot, std::optional<double> fallback, const char* key, std::string_view cert) {
      if (!slot) slot = fallback;
      if (!slot) {
        throw ConfigError(e.line, "certificate '" + std::string(cert) + "' needs '" + key + "'");
      }
    };
    for (CertificateKind k : c.certificates) {
      if (k == CertificateKind::Descent) {
        need(c.rho, info ? std::optional<double>(info->rho) : std::nullopt, "rho", "descent");
        if (c.algorithm == Algorithm::Alg1) need(c.kappa, info ? info->kappa : std::nullopt, "kappa", "descent");
      }
      if (k == CertificateKind::Fejer) {
        need(c.gamma, info ? std::optional<double>(info->gamma) : std::nullopt, "gamma", "fejer");
        need(c.L, info ? info->L : std::nullopt, "L", "fejer");
        if (!c.x_bar && info) c.x_bar = make_problem(c).known_minimizer;
        if (!c.x_bar) throw ConfigError(e.line, "certificate 'fejer' needs 'x_bar'");
      }
    }
  }

  if (has("trace")) c.trace_path = get("trace").value;
  if (has("report")) c.report_path = get("report").value;
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "problem = " << c.problem << "\n";
  if (c.problem == "inline") {
    os << "g = " << c.g_expr << "\n";
    os << "h = " << c.h_expr << "\n";
  }
  os << "distance = " << kernel_name(c.kernel) << "\n";
  if (c.kernel == Kernel::SecondOrderHomogeneous) os << "theta = " << format_double(c.theta) << "\n";
  os << "domain = " << make_domain(c).name() << "\n";
  if (c.domain == DomainKind::OpenBox) {
    os << "box_lower = " << format_vector(c.box_lower) << "\n";
    os << "box_upper = " << format_vector(c.box_upper) << "\n";
  }
  os << "algorithm = " << algorithm_name(c.algorithm) << "\n";
  os << "x0 = " << format_vector(c.x0) << "\n";
  if (c.schedule.rule() == StepSchedule::Rule::Constant) {
    os << "lambda = " << format_double(c.schedule.constant_value()) << "\n";
  } else {
    os << "lambda_seq = " << format_vector(Point(c.schedule.values().begin(), c.schedule.values().end())) << "\n";
  }
  os << "lambda_min = " << format_double(c.schedule.lambda_minus()) << "\n";
  os << "lambda_max = " << format_double(c.schedule.lambda_plus()) << "\n";
  os << "max_iter = " << c.solver.max_iter << "\n";
  os << "step_tol = " << format_double(c.solver.step_tol) << "\n";
  os << "inner_tol = " << format_double(c.solver.inner_tol) << "\n";
  os << "inner_method = "
     << (c.solver.inner_method == InnerMethod::Auto ? "auto"
         : c.solver.inner_method == InnerMethod::Newton ? "newton" : "separable")
     << "\n";
  os << "record_certificates = " << (c.solver.record_certificates ? "true" : "false") << "\n";
  os << "seed = " << c.solver.seed << "\n";
  if (!c.certificates.empty()) {
    os << "certificates = ";
    for (std::size_t i = 0; i < c.certificates.size(); ++i) os << (i ? ", " : "") << certificate_kind_name(c.certificates[i]);
    os << "\n";
  }
  if (c.rho) os << "rho = " << format_double(*c.rho) << "\n";
  if (c.kappa) os << "kappa = " << format_double(*c.kappa) << "\n";
  if (c.gamma) os << "gamma = " << format_double(*c.gamma) << "\n";
  if (c.L) os << "L = " << format_double(*c.L) << "\n";
  if (c.x_bar) os << "x_bar = " << format_vector(*c.x_bar) << "\n";
  os << "criticality_tol = " << format_double(c.criticality_tol) << "\n";
  os << "trace = " << c.trace_path << "\n";
  os << "report = " << c.report_path << "\n";
  return os.str();
}

}  // namespace dcprox
