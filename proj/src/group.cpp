// SPDX-License-Identifier: Apache-2.0
#include "tcg/group.hpp"

#include "tcg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace tcg {

GroupSpec::GroupSpec(int n, int k, std::vector<Mat> generators, std::string chart_id,
                     ChartFn closed_form, std::vector<Interval> params_box)
    : n_(n),
      k_(k),
      generators_(std::move(generators)),
      chart_id_(std::move(chart_id)),
      closed_form_(std::move(closed_form)),
      params_box_(std::move(params_box)) {
  if (n_ < 1) throw std::invalid_argument("group spec: n must be positive");
  if (k_ < 0 || k_ > n_) throw std::invalid_argument("group spec: k must lie in [0, n]");
  for (const auto& x : generators_)
    if (x.rows() != n_ || x.cols() != n_)
      throw std::invalid_argument("group spec: generators must be n x n");
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      const Mat c = generators_[i] * generators_[j] - generators_[j] * generators_[i];
      if (c.norm() > 1e-10)
        throw std::invalid_argument("group spec: generators must commute");
    }
  if (params_box_.empty())
    params_box_.assign(generators_.size(), Interval{-6.0, 6.0});
  if (params_box_.size() != generators_.size())
    throw std::invalid_argument("group spec: params_box needs one interval per generator");
}

GroupSpec GroupSpec::with_delta_h(ScalarFn delta_h, ScalarFn haar_h) const {
  GroupSpec s = *this;
  s.delta_h_ = std::move(delta_h);
  s.haar_h_ = std::move(haar_h);
  return s;
}

GroupSpec GroupSpec::with_params_box(std::vector<Interval> box) const {
  GroupSpec s = *this;
  if (box.size() != generators_.size())
    throw std::invalid_argument("group spec: params_box needs one interval per generator");
  s.params_box_ = std::move(box);
  return s;
}

Vec GroupSpec::embed_v(const Vec& xi) const {
  Vec out = Vec::Zero(n_);
  out.head(k_) = xi;
  return out;
}

Mat GroupSpec::generator_sum(const Vec& t) const {
  Mat a = Mat::Zero(n_, n_);
  for (int i = 0; i < d(); ++i) a += t(i) * generators_[static_cast<std::size_t>(i)];
  return a;
}

GroupElement identity(const GroupSpec& spec) {
  return {cplx{1.0, 0.0}, Vec::Zero(spec.n()), Vec::Zero(spec.k()), Vec::Zero(spec.d())};
}

void validate(const GroupSpec& spec, const GroupElement& g) {
  if (g.x.size() != spec.n() || g.xi.size() != spec.k() || g.t.size() != spec.d())
    throw std::invalid_argument("group element does not match the group spec dimensions");
}

Mat dilation_matrix(const GroupSpec& spec, const Vec& t) {
  if (t.size() != spec.d()) throw std::invalid_argument("dilation_matrix: wrong parameter count");
  if (spec.has_closed_form()) return spec.closed_form()(t);
  if (spec.d() == 0) return Mat::Identity(spec.n(), spec.n());
  return expm(spec.generator_sum(t));
}

bool check_translation_complete(const GroupSpec& spec) {
  const int n = spec.n();
  const int k = spec.k();
  if (k == 0 || k == n) return true;
  for (const auto& x : spec.generators())
    if (x.block(0, k, k, n - k).cwiseAbs().maxCoeff() > 1e-10) return false;
  return true;
}

double det_restricted(const GroupSpec& spec, const Mat& h) {
  const int n = spec.n();
  const int k = spec.k();
  if (k == 0) return 1.0;
  if (k < n) {
    const double off = h.block(0, k, k, n - k).cwiseAbs().maxCoeff();
    if (off > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
      throw std::domain_error("det_restricted: h^T does not preserve V");
  }
  return std::abs(h.topLeftCorner(k, k).determinant());
}

namespace {

// Project an R^n vector onto V coordinates, checking it lies in V.
Vec to_v(const GroupSpec& spec, const Vec& v) {
  const int k = spec.k();
  const int n = spec.n();
  if (k < n) {
    const double rest = v.tail(n - k).cwiseAbs().maxCoeff();
    if (rest > 1e-9 * std::max(1.0, v.cwiseAbs().maxCoeff()))
      throw std::domain_error("group law left V: spec is not translation complete");
  }
  return v.head(k);
}

}  // namespace

GroupElement multiply(const GroupSpec& spec, const GroupElement& g1, const GroupElement& g2) {
  validate(spec, g1);
  validate(spec, g2);
  const Mat h1 = dilation_matrix(spec, g1.t);
  const Vec hx2 = h1 * g2.x;
  const Vec xi1 = spec.embed_v(g1.xi);
  const double phase = -kTwoPi * xi1.dot(hx2);
  GroupElement out;
  out.z = g1.z * g2.z * std::polar(1.0, phase);
  out.z /= std::abs(out.z);
  out.x = g1.x + hx2;
  const Vec shifted = h1.transpose().partialPivLu().solve(spec.embed_v(g2.xi));
  out.xi = g1.xi + to_v(spec, shifted);
  out.t = g1.t + g2.t;
  return out;
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  validate(spec, g);
  const Mat h = dilation_matrix(spec, g.t);
  const Vec xi = spec.embed_v(g.xi);
  GroupElement out;
  out.z = std::conj(g.z) * std::polar(1.0, -kTwoPi * xi.dot(g.x));
  out.z /= std::abs(out.z);
  out.x = -h.partialPivLu().solve(g.x);
  out.xi = -to_v(spec, h.transpose() * xi);
  out.t = -g.t;
  return out;
}

double haar_density(const GroupSpec& spec, const GroupElement& g) {
  validate(spec, g);
  const Mat h = dilation_matrix(spec, g.t);
  return det_restricted(spec, h) / std::abs(h.determinant()) * spec.haar_h(g.t);
}

double delta_semidirect(const GroupSpec& spec, const Vec& t) {
  return det_restricted(spec, dilation_matrix(spec, t)) / spec.delta_h(t);
}

double delta_g_closed(const GroupSpec& spec, const Vec& t) {
  const Mat h = dilation_matrix(spec, t);
  return spec.delta_h(t) * det_restricted(spec, h) / std::abs(h.determinant());
}

namespace {

struct Coords {
  int n, k, d;
  int size() const { return n + k + d; }
  GroupElement unpack(const Vec& p) const {
    return {cplx{1.0, 0.0}, p.segment(0, n), p.segment(n, k), p.segment(n + k, d)};
  }
  Vec pack(const GroupElement& g) const {
    Vec p(size());
    p << g.x, g.xi, g.t;
    return p;
  }
};

}  // namespace

double delta_g_numeric(const GroupSpec& spec, const GroupElement& g0, double half, int nodes) {
  validate(spec, g0);
  const Coords c{spec.n(), spec.k(), spec.d()};
  const int m = c.size();
  const std::vector<Axis> axes(static_cast<std::size_t>(m), Axis{-half, half, nodes});
  const TensorRule rule = tensor_rule(Rule::GaussLegendre, axes);
  const double step = 1e-5;
  auto right = [&](const Vec& p) { return c.pack(multiply(spec, c.unpack(p), g0)); };
  double base = 0.0;
  double moved = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec& p = rule.nodes[i];
    const GroupElement g = c.unpack(p);
    base += rule.weights[i] * haar_density(spec, g);
    Mat jac(m, m);
    for (int j = 0; j < m; ++j) {
      Vec pp = p, pm = p;
      pp(j) += step;
      pm(j) -= step;
      jac.col(j) = (right(pp) - right(pm)) / (2.0 * step);
    }
    const GroupElement image = c.unpack(right(p));
    moved += rule.weights[i] * haar_density(spec, image) * std::abs(jac.determinant());
  }
  return moved / base;
}

HaarWeights modular_functions(const GroupSpec& spec, const GroupElement& g) {
  validate(spec, g);
  HaarWeights w;
  w.density = haar_density(spec, g);
  w.delta_h = spec.delta_h(g.t);
  w.delta_semidirect = delta_semidirect(spec, g.t);
  w.delta_g = delta_g_closed(spec, g.t);
  w.delta_g_numeric = delta_g_numeric(spec, g);
  w.numeric_reliable = std::abs(w.delta_g_numeric - w.delta_g) <= 0.05 * w.delta_g;
  return w;
}

bool is_unimodular(const GroupSpec& spec, const std::vector<Interval>& sample_box,
                   int samples_per_axis) {
  if (spec.d() == 0) return std::abs(delta_g_closed(spec, Vec(0)) - 1.0) <= 1e-8;
  std::vector<Axis> axes;
  for (const auto& iv : sample_box) axes.push_back({iv.lo, iv.hi, samples_per_axis});
  if (static_cast<int>(axes.size()) != spec.d())
    throw std::invalid_argument("is_unimodular: sample box needs one interval per parameter");
  const TensorRule grid = tensor_rule(Rule::Trapezoid, axes);
  for (const auto& t : grid.nodes)
    if (std::abs(delta_g_closed(spec, t) - 1.0) > 1e-8) return false;
  return true;
}

}  // namespace tcg
