// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/group.hpp"

#include <vector>

namespace tcg {

enum class Rule { Trapezoid, GaussLegendre };

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule1D gauss_legendre(int count, double lo, double hi);
Rule1D trapezoid(int count, double lo, double hi);
Rule1D make_rule(Rule rule, const Axis& axis);

// Tensor-product nodes over a box; boundary marks nodes on the first or last
// index of any axis. An empty axis list yields one node of weight 1.
struct TensorRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::vector<char> boundary;
  std::size_t size() const { return weights.size(); }
};

TensorRule tensor_rule(Rule rule, const std::vector<Axis>& axes);

// Nodes over V (k dims) and dilation parameters (d dims).
struct QuadratureScheme {
  Rule rule = Rule::Trapezoid;
  std::vector<Axis> xi_axes;
  std::vector<Axis> t_axes;
  double tail_mass_bound = 1e-4;

  TensorRule xi() const { return tensor_rule(rule, xi_axes); }
  TensorRule t() const { return tensor_rule(rule, t_axes); }
};

QuadratureScheme make_quadrature(int k, int d, Axis xi_axis, Axis t_axis,
                                 Rule rule = Rule::Trapezoid);

}  // namespace tcg
