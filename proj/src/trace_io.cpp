#include "dcprox/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dcprox/error.hpp"

namespace dcprox {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_field(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ContractViolation("trace line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << kTraceHeader << '\n';
  for (const IterationRecord& r : trace.records) {
    os << r.k << ',' << num(r.f_val) << ',' << num(r.step_norm) << ',' << num(r.lambda) << ',' << num(r.beta)
       << ',' << num(r.alpha) << ',' << num(r.resid) << '\n';
  }
  os << trace.records.size() << ',' << num(trace.final_f) << ",,,,,\n";
}

StepSeries read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader) throw ContractViolation("trace: missing or wrong header");
  StepSeries s;
  std::size_t line_no = 1;
  bool terminal = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (terminal) throw ContractViolation("trace line " + std::to_string(line_no) + ": row after terminal row");
    const auto fields = split_csv(line);
    if (fields.size() != 7) throw ContractViolation("trace line " + std::to_string(line_no) + ": expected 7 fields");
    const double k = parse_field(fields[0], line_no);
    if (k != static_cast<double>(s.size())) {
      throw ContractViolation("trace line " + std::to_string(line_no) + ": rows out of order");
    }
    const double f = parse_field(fields[1], line_no);
    if (!s.f.empty()) s.f_next.push_back(f);
    if (fields[2].empty()) {
      terminal = true;
      continue;
    }
    s.f.push_back(f);
    s.step_norm.push_back(parse_field(fields[2], line_no));
    s.lambda.push_back(parse_field(fields[3], line_no));
    s.beta.push_back(parse_field(fields[4], line_no));
    s.alpha.push_back(parse_field(fields[5], line_no));
  }
  if (!terminal) throw ContractViolation("trace: missing terminal row");
  return s;
}

}  // namespace dcprox
