// SPDX-License-Identifier: Apache-2.0
#include "tcg/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace tcg {

Rule1D gauss_legendre(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count must be positive");
  // Golub-Welsch: eigenvalues of the Jacobi matrix are the nodes on [-1, 1].
  Mat jac = Mat::Zero(count, count);
  for (int i = 1; i < count; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(jac);
  Rule1D r;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < count; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    r.nodes.push_back(mid + half * es.eigenvalues()(i));
    r.weights.push_back(2.0 * v0 * v0 * half);
  }
  return r;
}

Rule1D trapezoid(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("trapezoid: count must be positive");
  Rule1D r;
  if (count == 1) {
    r.nodes = {0.5 * (lo + hi)};
    r.weights = {hi - lo};
    return r;
  }
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    r.nodes.push_back(lo + i * h);
    r.weights.push_back((i == 0 || i == count - 1) ? 0.5 * h : h);
  }
  return r;
}

Rule1D make_rule(Rule rule, const Axis& axis) {
  return rule == Rule::Trapezoid ? trapezoid(axis.count, axis.lo, axis.hi)
                                 : gauss_legendre(axis.count, axis.lo, axis.hi);
}

TensorRule tensor_rule(Rule rule, const std::vector<Axis>& axes) {
  TensorRule out;
  const std::size_t dim = axes.size();
  std::vector<Rule1D> rules;
  std::size_t total = 1;
  for (const auto& a : axes) {
    rules.push_back(make_rule(rule, a));
    total *= rules.back().nodes.size();
  }
  out.nodes.reserve(total);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Vec p(static_cast<Eigen::Index>(dim));
    double w = 1.0;
    bool edge = false;
    for (std::size_t a = 0; a < dim; ++a) {
      p(static_cast<Eigen::Index>(a)) = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
      if (rules[a].nodes.size() > 1 && (idx[a] == 0 || idx[a] + 1 == rules[a].nodes.size()))
        edge = true;
    }
    out.nodes.push_back(std::move(p));
    out.weights.push_back(w);
    out.boundary.push_back(edge ? 1 : 0);
    for (std::size_t a = dim; a-- > 0;) {
      if (++idx[a] < rules[a].nodes.size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

QuadratureScheme make_quadrature(int k, int d, Axis xi_axis, Axis t_axis, Rule rule) {
  QuadratureScheme q;
  q.rule = rule;
  q.xi_axes.assign(static_cast<std::size_t>(k), xi_axis);
  q.t_axes.assign(static_cast<std::size_t>(d), t_axis);
  return q;
}

}  // namespace tcg
