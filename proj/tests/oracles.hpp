// SPDX-License-Identifier: Apache-2.0
// Independent reference implementations used by the unit tests.
#pragma once

#include "tcg/grid.hpp"
#include "tcg/group.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace oracle {

using tcg::cplx;
using tcg::Mat;
using tcg::Vec;

// Deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Vec vec(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }
  tcg::GroupElement element(const tcg::GroupSpec& spec, double x_half = 2.0, double xi_half = 2.0,
                            double t_half = 1.5) {
    return {std::polar(1.0, uniform(-M_PI, M_PI)), vec(spec.n(), -x_half, x_half),
            vec(spec.k(), -xi_half, xi_half), vec(spec.d(), -t_half, t_half)};
  }

 private:
  std::mt19937_64 rng_;
};

// exp(A) by a long-double Taylor series with scaling and squaring.
inline Mat taylor_expm(const Mat& a) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  LMat m = a.cast<long double>();
  int squarings = 0;
  while (m.cwiseAbs().rowwise().sum().maxCoeff() > 0.25L) {
    m /= 2.0L;
    ++squarings;
  }
  LMat term = LMat::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * m / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum.cast<double>();
}

// Direct O(M^2) transform: sum_j f(y_j) e^{-2 pi i <gamma_m, y_j>} (L/N)^n.
inline tcg::GridFunction naive_dft(const tcg::GridFunction& f) {
  const tcg::Grid& g = f.grid();
  tcg::GridFunction out(g, tcg::Domain::Frequency);
  const double cell = std::pow(g.spacing(), g.n);
  for (std::size_t m = 0; m < g.total(); ++m) {
    const Vec gam = g.freq_node(m);
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.total(); ++j)
      s += f[j] * std::polar(1.0, -tcg::kTwoPi * gam.dot(g.space_node(j)));
    out[m] = s * cell;
  }
  return out;
}

// Band-limited value of a spectrum at an arbitrary frequency: inverse DFT to space,
// then a direct sum at nu.
inline cplx dtft_at(const tcg::GridFunction& fhat, const Vec& nu) {
  const tcg::GridFunction f = tcg::idft(fhat);
  const tcg::Grid& g = f.grid();
  const double cell = std::pow(g.spacing(), g.n);
  cplx s = 0.0;
  for (std::size_t j = 0; j < g.total(); ++j) s += f[j] * std::polar(1.0, -tcg::kTwoPi * nu.dot(g.space_node(j)));
  return s * cell;
}

// Central-difference Jacobian of a map R^p -> R^q.
template <class F>
Mat fd_jacobian(F&& f, const Vec& p, double h = 1e-6) {
  const Vec f0 = f(p);
  Mat j(f0.size(), p.size());
  for (Eigen::Index c = 0; c < p.size(); ++c) {
    Vec a = p, b = p;
    a(c) += h;
    b(c) -= h;
    j.col(c) = (f(a) - f(b)) / (2.0 * h);
  }
  return j;
}

inline double max_abs_diff(const tcg::GroupElement& a, const tcg::GroupElement& b) {
  double d = std::abs(a.z - b.z);
  d = std::max(d, (a.x - b.x).cwiseAbs().maxCoeff());
  if (a.xi.size()) d = std::max(d, (a.xi - b.xi).cwiseAbs().maxCoeff());
  if (a.t.size()) d = std::max(d, (a.t - b.t).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace oracle
