// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>

namespace tcg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// exp(A) by Pade scaling and squaring.
Mat expm(const Mat& a);

// Numerical rank: singular values above rel_tol * largest.
int numerical_rank(const Mat& a, double rel_tol = 1e-9);

// Minimum-norm least squares solve of a * x = b.
Vec lstsq(const Mat& a, const Vec& b);

}  // namespace tcg
