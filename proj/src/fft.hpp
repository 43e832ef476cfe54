// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/linalg.hpp"

#include <span>

namespace tcg::detail {

// Unnormalized in-place DFT of an N^n row-major array; sign -1 forward, +1 backward.
void fft_inplace(std::span<cplx> data, int n, int N, int sign);

}  // namespace tcg::detail
