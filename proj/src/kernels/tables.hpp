#pragma once

#include "dcprox/kernels.hpp"

namespace dcprox::kernels::detail {

extern const Table kScalarTable;
#if defined(DCPROX_HAVE_AVX2)
extern const Table kAvx2Table;
#endif
#if defined(DCPROX_HAVE_NEON)
extern const Table kNeonTable;
#endif

}  // namespace dcprox::kernels::detail
