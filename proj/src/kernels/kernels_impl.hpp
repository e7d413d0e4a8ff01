#pragma once

#include "symw/kernels.hpp"

namespace symw::detail {

const KernelTable& scalar_table() noexcept;
#ifdef SYMW_HAVE_AVX2
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace symw::detail
