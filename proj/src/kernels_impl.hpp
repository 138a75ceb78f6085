#pragma once

#include "sgmatch/kernels.hpp"

namespace sgmatch::kernels {

// Defined only in translation units compiled for the matching ISA.
const KernelTable& avx2_table_unchecked();
const KernelTable& neon_table_unchecked();

}  // namespace sgmatch::kernels
