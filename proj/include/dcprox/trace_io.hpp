#pragma once

// Trace CSV: header `k,f,step_norm,lambda,beta,alpha,resid`, one row per step
// with f = f(x_k), then a terminal row `K,f(x_K),,,,,`.

#include <iosfwd>
#include <string_view>

#include "dcprox/diagnostics.hpp"

namespace dcprox {

inline constexpr std::string_view kTraceHeader = "k,f,step_norm,lambda,beta,alpha,resid";

void write_trace_csv(std::ostream& os, const Trace& trace);

/// Rebuild the per-step series. Throws ContractViolation on a malformed file.
StepSeries read_trace_csv(std::istream& is);

}  // namespace dcprox
