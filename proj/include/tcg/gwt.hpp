// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/admissibility.hpp"
#include "tcg/grid.hpp"
#include "tcg/quadrature.hpp"

#include <span>
#include <string>
#include <vector>

namespace tcg {

// V_psi f sampled on (x, xi, t): one x-slab on the signal grid per (xi, t) node.
// The phase z is integrated out.
class CoefficientField {
 public:
  CoefficientField(Grid grid, std::vector<Vec> xi_nodes, std::vector<Vec> t_nodes,
                   std::vector<double> weights);

  const Grid& grid() const { return grid_; }
  const std::vector<Vec>& xi_nodes() const { return xi_nodes_; }
  const std::vector<Vec>& t_nodes() const { return t_nodes_; }
  // Haar weight of node (i_xi, i_t), without the x cell.
  const std::vector<double>& weights() const { return weights_; }
  std::size_t node_count() const { return weights_.size(); }
  std::size_t node_index(std::size_t i_xi, std::size_t i_t) const { return i_xi * t_nodes_.size() + i_t; }
  std::span<cplx> slab(std::size_t node);
  std::span<const cplx> slab(std::size_t node) const;

  CoefficientField& operator+=(const CoefficientField& o);
  CoefficientField& operator*=(cplx s);

 private:
  Grid grid_;
  std::vector<Vec> xi_nodes_;
  std::vector<Vec> t_nodes_;
  std::vector<double> weights_;
  std::vector<cplx> data_;
};

// 32 xi nodes per V axis at spacing 5/L (multiples of 1/L) and 48 t nodes on [-6, 6].
QuadratureScheme transform_quadrature(const GroupSpec& spec, const Grid& grid);

// f and psi in the space domain on one grid. Xi nodes are snapped to multiples of 1/L.
CoefficientField analyze(const GroupSpec& spec, const GridFunction& f, const GridFunction& psi,
                         const QuadratureScheme& quad);

double coefficient_norm_sq(const CoefficientField& field);
// Haar-weighted inner product <a, b>.
cplx coefficient_inner(const CoefficientField& a, const CoefficientField& b);

// (1/C) sum of field * pi(x, xi, t) psi with Haar weights; space domain result.
GridFunction synthesize(const GroupSpec& spec, const CoefficientField& field,
                        const GridFunction& psi, double C);

// int |fhat|^2 Phi over the frequency nodes where fhat is non-negligible.
double parseval_rhs(const GridFunction& fhat, const PhiEvaluator& phi);

// <base>.bin: complex64 pairs, node-major then x; <base>.json: nodes and weights.
void write_field(const std::string& base, const CoefficientField& field);
CoefficientField read_field(const std::string& base);

}  // namespace tcg
