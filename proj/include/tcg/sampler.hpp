// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/grid.hpp"

#include <vector>

namespace tcg {

// Tensor Lagrange interpolation on a uniform grid of M^n complex samples.
class LagrangeGrid {
 public:
  LagrangeGrid(int n, int M, double origin, double step, std::vector<cplx> values, int order,
               bool periodic);
  cplx operator()(const Vec& pos) const;
  int dim() const { return n_; }

 private:
  int n_;
  int m_;
  double origin_;
  double step_;
  std::vector<cplx> values_;
  int order_;
  bool periodic_;
};

// Bandlimited evaluation of a spectrum given on grid nodes: exact DTFT samples on
// an oversampled frequency grid, then local Lagrange interpolation. Zero outside
// the band.
class SpectralSampler {
 public:
  explicit SpectralSampler(const GridFunction& fhat, int oversample = 0, int order = 0);
  cplx operator()(const Vec& nu) const;
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  LagrangeGrid fine_;
};

// Bandlimited evaluation of a space-domain function at arbitrary points; zero
// outside the box.
class SpaceSampler {
 public:
  explicit SpaceSampler(const GridFunction& f, int oversample = 0, int order = 0);
  cplx operator()(const Vec& y) const;

 private:
  Grid grid_;
  LagrangeGrid fine_;
};

// Space samples on the grid refined by an integer factor (spacing L/(factor N)),
// obtained by zero-padding the spectrum.
GridFunction upsample_space(const GridFunction& f, int factor);

}  // namespace tcg
