// SPDX-License-Identifier: Apache-2.0
#include "tcg/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace tcg {

Mat expm(const Mat& a) { return a.exp(); }

int numerical_rank(const Mat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Vec lstsq(const Mat& a, const Vec& b) {
  if (a.cols() == 0) return Vec(0);
  return a.completeOrthogonalDecomposition().solve(b);
}

}  // namespace tcg
