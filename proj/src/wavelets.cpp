// SPDX-License-Identifier: Apache-2.0
#include "tcg/wavelets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tcg {

namespace {

double log_bump_value(const Vec& g, const LogBump& b) {
  const Eigen::Index n = g.size();
  const double v = b.sign * g(n - 1);
  if (v <= 0.0) return 0.0;
  const double lg = std::log(v / b.v0);
  double val = std::exp(-lg * lg / (2.0 * b.sigma * b.sigma));
  for (Eigen::Index a = 0; a + 1 < n; ++a)
    val *= std::exp(-std::numbers::pi * g(a) * g(a) / (b.width * b.width));
  return val;
}

}  // namespace

GridFunction log_bump(const Grid& grid, const LogBump& b) {
  return sample(grid, Domain::Frequency, [&](const Vec& g) { return cplx(log_bump_value(g, b)); });
}

GridFunction two_sided_log_bump(const Grid& grid, const LogBump& b) {
  LogBump up = b, down = b;
  up.sign = 1.0;
  down.sign = -1.0;
  return log_bump(grid, up) + log_bump(grid, down);
}

GridFunction gaussian_derivative(const Grid& grid) {
  if (grid.n != 1) throw std::invalid_argument("gaussian_derivative: 1-D only");
  const double amp = std::sqrt(4.0 * std::numbers::pi);
  return sample(grid, Domain::Space,
                [amp](const Vec& y) { return cplx(amp * y(0) * std::exp(-std::numbers::pi * y(0) * y(0))); });
}

GridFunction unit_gaussian(const Grid& grid) {
  const double amp = std::pow(2.0, 0.25 * grid.n);
  return sample(grid, Domain::Space,
                [amp](const Vec& y) { return cplx(amp * std::exp(-std::numbers::pi * y.squaredNorm())); });
}

GridFunction gaussian_blob(const Grid& grid, const Vec& center, double sigma, const Vec& shift) {
  return sample(grid, Domain::Frequency, [&](const Vec& g) {
    const double r2 = (g - center).squaredNorm();
    return std::exp(-r2 / (2.0 * sigma * sigma)) * std::polar(1.0, -kTwoPi * g.dot(shift));
  });
}

std::vector<GridFunction> test_signals(const Grid& grid, int count) {
  if (grid.n != 2) throw std::invalid_argument("test_signals: n = 2 only");
  struct Blob {
    double c0, c1, s, x0, x1;
  };
  static constexpr Blob kBlobs[] = {
      {0.3, 0.6, 0.15, 0.0, 0.0},    {-0.35, 0.65, 0.18, 0.5, -0.25},
      {0.2, -0.6, 0.16, -0.4, 0.3},  {-0.3, -0.7, 0.15, 0.25, 0.5},
      {0.45, 0.55, 0.2, -0.5, -0.5}, {-0.1, -0.6, 0.17, 0.0, 0.75},
  };
  std::vector<GridFunction> out;
  for (int i = 0; i < count; ++i) {
    const Blob& b = kBlobs[static_cast<std::size_t>(i) % std::size(kBlobs)];
    GridFunction f = gaussian_blob(grid, Vec{{b.c0, b.c1}}, b.s, Vec{{b.x0, b.x1}});
    // a second lobe in the opposite half-plane for the odd entries
    if (i % 2 == 1)
      f += gaussian_blob(grid, Vec{{-b.c0, -b.c1}}, b.s, Vec{{b.x1, b.x0}});
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace tcg
