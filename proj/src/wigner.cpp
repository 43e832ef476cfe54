// SPDX-License-Identifier: Apache-2.0
#include "tcg/wigner.hpp"

#include "tcg/admissibility.hpp"
#include "tcg/sampler.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace tcg {

std::vector<double> WignerField::x_marginal() const {
  const std::size_t m = grid.total();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += values[j * m + i];
    out[j] = s * std::pow(grid.freq_spacing(), grid.n);
  }
  return out;
}

std::vector<double> WignerField::xi_marginal() const {
  const std::size_t m = grid.total();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) out[i] += values[j * m + i];
  for (auto& v : out) v *= std::pow(grid.spacing(), grid.n);
  return out;
}

double WignerField::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * std::pow(grid.spacing() * grid.freq_spacing(), grid.n);
}

namespace {

// K(x_j, y_i) = psi(x_j + y_i / 2) conj(psi(x_j - y_i / 2)); rows x, columns y.
Eigen::MatrixXcd wigner_kernel(const GridFunction& psi) {
  if (psi.domain() != Domain::Space) throw std::invalid_argument("wigner: expects a space-domain input");
  const Grid& g = psi.grid();
  if (g.n > 2) throw std::invalid_argument("wigner: n must be 1 or 2");
  const std::size_t m = g.total();
  if (m * m > kMaxWignerEntries) throw std::length_error("wigner: 2n-dimensional grid exceeds the memory guard");
  const GridFunction fine = upsample_space(psi, 2);
  const Grid& fg = fine.grid();
  Eigen::MatrixXcd k(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::vector<int> plus(static_cast<std::size_t>(g.n)), minus(static_cast<std::size_t>(g.n));
  for (std::size_t j = 0; j < m; ++j) {
    const auto jv = g.unflatten(j);
    for (std::size_t i = 0; i < m; ++i) {
      const auto iv = g.unflatten(i);
      bool inside = true;
      for (int a = 0; a < g.n; ++a) {
        const auto s = static_cast<std::size_t>(a);
        const int shift = iv[s] - g.N / 2;
        plus[s] = 2 * jv[s] + shift;
        minus[s] = 2 * jv[s] - shift;
        inside = inside && plus[s] >= 0 && plus[s] < fg.N && minus[s] >= 0 && minus[s] < fg.N;
      }
      k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          inside ? fine[fg.flatten(plus)] * std::conj(fine[fg.flatten(minus)]) : cplx{0.0, 0.0};
    }
  }
  return k;
}

}  // namespace

WignerField wigner(const GridFunction& psi) {
  const Eigen::MatrixXcd k = wigner_kernel(psi);
  const Grid& g = psi.grid();
  const std::size_t m = g.total();
  WignerField w{g, std::vector<double>(m * m, 0.0), 0.0};
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<cplx> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    const GridFunction spec = dft(GridFunction(g, Domain::Space, std::move(row)));
    for (std::size_t i = 0; i < m; ++i) {
      w.values[j * m + i] = spec[i].real();
      w.max_imag = std::max(w.max_imag, std::abs(spec[i].imag()));
    }
  }
  return w;
}

namespace {

// sum_x K(x, y) (L/N)^n per y node: the x_g integral of W(h^{-1}(x - x_g), eta) is
// |det h| times the DTFT of this profile at eta, for every x.
std::vector<cplx> x_integrated_kernel(const GridFunction& psi) {
  const Eigen::MatrixXcd kernel = wigner_kernel(psi);
  const double cell = std::pow(psi.grid().spacing(), psi.grid().n);
  const Eigen::VectorXcd cols = kernel.colwise().sum().transpose() * cell;
  return {cols.data(), cols.data() + cols.size()};
}

WignerIntegral integrate(const GroupSpec& spec, const Grid& g, const std::vector<cplx>& profile,
                         const Vec& xi, const WignerQuadrature& quad) {
  const std::size_t m = g.total();
  const int k = spec.k();
  const double cell = std::pow(g.spacing(), g.n);
  std::vector<Axis> xi_axes;
  for (int i = 0; i < k; ++i) xi_axes.push_back({xi(i) - quad.xi_half, xi(i) + quad.xi_half, quad.xi_count});
  const TensorRule xr = tensor_rule(Rule::Trapezoid, xi_axes);
  const TensorRule tr = tensor_rule(Rule::Trapezoid, std::vector<Axis>(static_cast<std::size_t>(spec.d()), quad.t_axis));

  std::vector<Vec> ys(m);
  for (std::size_t i = 0; i < m; ++i) ys[i] = g.space_node(i);
  std::vector<Mat> hs;
  for (const Vec& t : tr.nodes) hs.push_back(dilation_matrix(spec, t));

  const std::size_t nodes = xr.size() * tr.size();
  std::vector<double> contrib(nodes, 0.0);
  std::vector<char> edge(nodes, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t node = 0; node < nodes; ++node) {
    const std::size_t ix = node / tr.size(), it = node % tr.size();
    const Mat& h = hs[it];
    const Vec eta = h.transpose() * (xi - spec.embed_v(xr.nodes[ix]));
    // W vanishes outside the band; the y-sum would alias there
    if ((eta.array().abs() >= g.band_edge()).any()) continue;
    double re = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      re += (profile[i] * std::polar(cell, -kTwoPi * eta.dot(ys[i]))).real();
    const double w = xr.weights[ix] * tr.weights[it] * det_restricted(spec, h) * spec.haar_h(tr.nodes[it]);
    contrib[node] = w * re;
    edge[node] = xr.boundary[ix] || tr.boundary[it];
  }
  WignerIntegral out;
  double mag = 0.0, edge_mag = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    out.value += contrib[i];
    mag += std::abs(contrib[i]);
    if (edge[i]) edge_mag += std::abs(contrib[i]);
  }
  out.boundary_fraction = mag > 0.0 ? edge_mag / mag : 0.0;
  out.diverging = out.boundary_fraction > 1e-3;
  return out;
}

}  // namespace

WignerIntegral wigner_admissibility_integral(const GroupSpec& spec, const GridFunction& psi,
                                             const Vec& x, const Vec& xi, const WignerQuadrature& quad) {
  const Grid& g = psi.grid();
  if (g.n != spec.n() || x.size() != g.n || xi.size() != g.n)
    throw std::invalid_argument("wigner integral: dimension mismatch");
  return integrate(spec, g, x_integrated_kernel(psi), xi, quad);
}

EquivalenceReport equivalence_check(const GroupSpec& spec, const GridFunction& psi,
                                    const std::vector<std::pair<Vec, Vec>>& points,
                                    const WignerQuadrature& quad) {
  const GridFunction psihat = dft(psi);
  const PhiEvaluator phi(spec, psihat, default_quadrature(spec, psihat));
  const std::vector<cplx> profile = x_integrated_kernel(psi);
  EquivalenceReport rep;
  for (const auto& [x, xi] : points) {
    if (x.size() != psi.grid().n || xi.size() != psi.grid().n)
      throw std::invalid_argument("equivalence_check: dimension mismatch");
    EquivalencePoint p{x, xi, 0.0, 0.0, 0.0};
    p.wigner_side = integrate(spec, psi.grid(), profile, xi, quad).value;
    p.calderon_side = phi(xi).value;
    const double diff = std::abs(p.wigner_side - p.calderon_side);
    p.rel_dev = p.calderon_side > 0.0 ? diff / p.calderon_side : diff;
    rep.max_rel_dev = std::max(rep.max_rel_dev, p.rel_dev);
    rep.points.push_back(std::move(p));
  }
  return rep;
}

}  // namespace tcg
