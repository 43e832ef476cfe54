// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/grid.hpp"
#include "tcg/quadrature.hpp"

#include <vector>

namespace tcg {

// W(x, xi) on the space grid times the frequency grid of one GridFunction grid.
// Index: x node (row-major) * N^n + xi node.
struct WignerField {
  Grid grid;
  std::vector<double> values;
  double max_imag = 0.0;  // largest discarded imaginary part

  double at(std::size_t x_node, std::size_t xi_node) const { return values[x_node * grid.total() + xi_node]; }
  // sum over xi times 1/L^n, per x node
  std::vector<double> x_marginal() const;
  // sum over x times (L/N)^n, per xi node
  std::vector<double> xi_marginal() const;
  double total() const;
};

// Largest N^(2n) accepted by the 2n-dimensional grids.
inline constexpr std::size_t kMaxWignerEntries = std::size_t{1} << 24;

WignerField wigner(const GridFunction& psi);

struct WignerQuadrature {
  double xi_half = 4.0;  // xi_g window half-width around the point's V coordinates
  int xi_count = 96;
  Axis t_axis{-6.0, 6.0, 48};
};

struct WignerIntegral {
  double value = 0.0;
  double boundary_fraction = 0.0;  // share of the sum on edge (xi_g, t) nodes
  bool diverging = false;          // boundary share above 1e-3
};

// int_G W_psi(g^{-1} . (x, xi)) dg over x_g, xi_g in V and t with Haar weights.
WignerIntegral wigner_admissibility_integral(const GroupSpec& spec, const GridFunction& psi,
                                             const Vec& x, const Vec& xi,
                                             const WignerQuadrature& quad = {});

struct EquivalencePoint {
  Vec x;
  Vec xi;
  double wigner_side = 0.0;
  double calderon_side = 0.0;
  double rel_dev = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalencePoint> points;
  double max_rel_dev = 0.0;
};

// Wigner integral against Phi_psi(xi) at each (x, xi) point.
EquivalenceReport equivalence_check(const GroupSpec& spec, const GridFunction& psi,
                                    const std::vector<std::pair<Vec, Vec>>& points,
                                    const WignerQuadrature& quad = {});

}  // namespace tcg
