// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"

#include "tcg/catalog.hpp"
#include "tcg/group.hpp"

#include <cmath>

using namespace tcg;

namespace {

std::vector<GroupSpec> sample_specs() {
  return {dim2_family(2, 1).spec,         dim2_family(0, 1).spec,        dim2_family(1, 1).spec,
          dim3_diag(0.5, -1.5, 1).spec,   dim3_jordan(1, 1).spec,        dim3_twoparam(1, 1).spec,
          dim3_rotation(1).spec,          heisenberg(2).spec,            proper_v(2, 1).spec,
          affine_1d().spec};
}

// (x, h) as the affine matrix [[h, x], [0, 1]].
Mat affine_matrix(const Vec& x, const Mat& h) {
  const auto n = x.size();
  Mat m = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = h;
  m.topRightCorner(n, 1) = x;
  return m;
}

// (xi, h) acting on frequencies from the right, as [[h^{-T}, xi], [0, 1]].
Mat frequency_matrix(const Vec& xi, const Mat& h) {
  const auto n = xi.size();
  Mat m = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = h.transpose().inverse();
  m.topRightCorner(n, 1) = xi;
  return m;
}

Vec pack(const GroupElement& g) {
  Vec p(g.x.size() + g.xi.size() + g.t.size());
  p << g.x, g.xi, g.t;
  return p;
}

GroupElement unpack(const GroupSpec& s, const Vec& p) {
  return {cplx{1.0, 0.0}, p.segment(0, s.n()), p.segment(s.n(), s.k()), p.segment(s.n() + s.k(), s.d())};
}

}  // namespace

TEST_CASE("dilation matrices agree with a long-double Taylor exponential") {
  oracle::Gen gen(1);
  for (const auto& spec : sample_specs()) {
    for (int rep = 0; rep < 20; ++rep) {
      const Vec t = gen.vec(spec.d(), -2.0, 2.0);
      const Mat h = dilation_matrix(spec, t);
      const Mat ref = spec.d() ? oracle::taylor_expm(spec.generator_sum(t)) : Mat::Identity(spec.n(), spec.n());
      CHECK((h - ref).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("group axioms hold on random elements") {
  oracle::Gen gen(2);
  for (const auto& spec : sample_specs()) {
    const GroupElement e = identity(spec);
    for (int rep = 0; rep < 200; ++rep) {
      const GroupElement a = gen.element(spec), b = gen.element(spec), c = gen.element(spec);
      CHECK(oracle::max_abs_diff(multiply(spec, multiply(spec, a, b), c),
                                 multiply(spec, a, multiply(spec, b, c))) <= 1e-10);
      CHECK(oracle::max_abs_diff(multiply(spec, a, e), a) <= 1e-12);
      CHECK(oracle::max_abs_diff(multiply(spec, e, a), a) <= 1e-12);
      CHECK(oracle::max_abs_diff(multiply(spec, a, inverse(spec, a)), e) <= 1e-10);
      CHECK(oracle::max_abs_diff(multiply(spec, inverse(spec, a), a), e) <= 1e-10);
    }
  }
}

TEST_CASE("product matches affine and frequency matrix products with the stated phase") {
  oracle::Gen gen(3);
  for (const auto& spec : sample_specs()) {
    for (int rep = 0; rep < 50; ++rep) {
      const GroupElement a = gen.element(spec), b = gen.element(spec);
      const GroupElement ab = multiply(spec, a, b);
      const Mat ha = dilation_matrix(spec, a.t), hb = dilation_matrix(spec, b.t);
      const Mat aff = affine_matrix(a.x, ha) * affine_matrix(b.x, hb);
      const Mat fr = frequency_matrix(spec.embed_v(a.xi), ha) * frequency_matrix(spec.embed_v(b.xi), hb);
      const Mat hab = dilation_matrix(spec, ab.t);
      CHECK((aff - affine_matrix(ab.x, hab)).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((fr - frequency_matrix(spec.embed_v(ab.xi), hab)).cwiseAbs().maxCoeff() <= 1e-9);
      const cplx z = a.z * b.z * std::polar(1.0, -kTwoPi * spec.embed_v(a.xi).dot(ha * b.x));
      CHECK(std::abs(ab.z - z) <= 1e-10);
    }
  }
}

TEST_CASE("Haar density is left invariant") {
  oracle::Gen gen(4);
  for (const auto& spec : sample_specs()) {
    for (int rep = 0; rep < 10; ++rep) {
      const GroupElement g0 = gen.element(spec, 1.0, 1.0, 1.0), g = gen.element(spec, 1.0, 1.0, 1.0);
      const auto left = [&](const Vec& p) { return pack(multiply(spec, g0, unpack(spec, p))); };
      const Mat jac = oracle::fd_jacobian(left, pack(g), 1e-5);
      const double lhs = haar_density(spec, multiply(spec, g0, g)) * std::abs(jac.determinant());
      CHECK(lhs == doctest::Approx(haar_density(spec, g)).epsilon(1e-7));
    }
  }
}

TEST_CASE("modular function: numeric estimate matches closed form and is multiplicative") {
  oracle::Gen gen(5);
  for (const auto& spec : sample_specs()) {
    for (int rep = 0; rep < 5; ++rep) {
      const GroupElement a = gen.element(spec, 1.0, 1.0, 1.0), b = gen.element(spec, 1.0, 1.0, 1.0);
      CHECK(delta_g_numeric(spec, a) == doctest::Approx(delta_g_closed(spec, a.t)).epsilon(1e-8));
      const GroupElement ab = multiply(spec, a, b);
      CHECK(delta_g_closed(spec, ab.t) ==
            doctest::Approx(delta_g_closed(spec, a.t) * delta_g_closed(spec, b.t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("unimodularity of simple groups") {
  CHECK(is_unimodular(heisenberg(2).spec, {}));
  CHECK(is_unimodular(proper_v(2, 1).spec, {}));
  CHECK_FALSE(is_unimodular(dim2_family(0, 1).spec, {{-2, 2}}));
  CHECK_FALSE(is_unimodular(affine_1d().spec, {{-2, 2}}));
  // E1 with V = R x {0}^2: Delta_G = e^{-(beta + 1) t}
  CHECK(is_unimodular(dim3_diag(0.7, -1.0, 1).spec, {{-2, 2}}));
  CHECK_FALSE(is_unimodular(dim3_diag(0.0, -1.5, 1).spec, {{-2, 2}}));
  const GroupSpec e1 = dim3_diag(0.3, 2.0, 1).spec;
  CHECK(delta_g_closed(e1, Vec::Constant(1, 0.5)) == doctest::Approx(std::exp(-3.0 * 0.5)).epsilon(1e-12));
}

TEST_CASE("translation completeness") {
  CHECK(check_translation_complete(dim2_family(2, 1).spec));
  CHECK(check_translation_complete(dim3_diag(1, 2, 1).spec));
  CHECK(check_translation_complete(dim3_diag(1, 2, 2).spec));
  CHECK(check_translation_complete(dim3_jordan(1, 1, 2).spec));
  CHECK_FALSE(check_translation_complete(dim3_jordan(1, 1, 1).spec));
  CHECK_FALSE(check_translation_complete(dim3_rotation(0, 1).spec));
  CHECK(check_translation_complete(dim3_rotation(0, 2).spec));
  CHECK(check_translation_complete(heisenberg(3).spec));
  CHECK(check_translation_complete(affine_1d().spec));
}

TEST_CASE("spec validation rejects malformed input") {
  Mat a(2, 2), b(2, 2);
  a << 1, 0, 0, 0;
  b << 0, 1, 0, 0;
  CHECK_THROWS_AS(GroupSpec(2, 1, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec(2, 3, {}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec(2, 1, {Mat::Identity(3, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec(2, 1, {a}, "exp", {}, {{0, 1}, {0, 1}}), std::invalid_argument);
  const GroupSpec s = dim2_family(0, 1).spec;
  GroupElement g = identity(s);
  g.x = Vec::Zero(3);
  CHECK_THROWS_AS(multiply(s, g, identity(s)), std::invalid_argument);
  CHECK_THROWS_AS(dilation_matrix(s, Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("restricted determinant reads the V block") {
  const GroupSpec s = dim2_family(2, 1).spec;
  const Mat h = dilation_matrix(s, Vec::Constant(1, 0.7));
  CHECK(det_restricted(s, h) == doctest::Approx(std::exp(1.4)).epsilon(1e-12));
  CHECK(det_restricted(affine_1d().spec, Mat::Constant(1, 1, 3.0)) == 1.0);
}
