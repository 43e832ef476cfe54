// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/grid.hpp"

#include <vector>

namespace tcg {

// Frequency-side bump: Gaussian exp(-pi |u|^2 / width^2) in all but the last
// coordinate, log-normal exp(-(log v - log v0)^2 / (2 sigma^2)) in v = sign * last
// coordinate (zero for v <= 0).
struct LogBump {
  double width = 0.8;
  double v0 = 0.8;
  double sigma = 0.3;
  double sign = 1.0;
};

GridFunction log_bump(const Grid& grid, const LogBump& b);
// Upper plus mirrored lower bump: nonzero on both half-spaces.
GridFunction two_sided_log_bump(const Grid& grid, const LogBump& b);

// sqrt(4 pi) y exp(-pi y^2) on a 1-D grid (space domain); its affine Calderon
// integral equals 1 on both half-lines.
GridFunction gaussian_derivative(const Grid& grid);

// 2^{n/4} exp(-pi |y|^2), unit L2 norm (space domain).
GridFunction unit_gaussian(const Grid& grid);

// Frequency-side Gaussian blob exp(-|gamma - c|^2 / (2 s^2)) times a translation phase.
GridFunction gaussian_blob(const Grid& grid, const Vec& center, double sigma, const Vec& shift);

// Band-limited test spectra for n = 2, blobs away from the line gamma_2 = 0.
std::vector<GridFunction> test_signals(const Grid& grid, int count);

}  // namespace tcg
