// SPDX-License-Identifier: Apache-2.0
#include "tcg/gwt.hpp"

#include "tcg/sampler.hpp"

#include "json.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tcg {

CoefficientField::CoefficientField(Grid grid, std::vector<Vec> xi_nodes, std::vector<Vec> t_nodes,
                                   std::vector<double> weights)
    : grid_(grid), xi_nodes_(std::move(xi_nodes)), t_nodes_(std::move(t_nodes)), weights_(std::move(weights)) {
  validate_grid(grid_);
  if (weights_.size() != xi_nodes_.size() * t_nodes_.size())
    throw std::invalid_argument("coefficient field: one weight per (xi, t) node");
  data_.assign(weights_.size() * grid_.total(), cplx{0.0, 0.0});
}

std::span<cplx> CoefficientField::slab(std::size_t node) {
  return std::span<cplx>(data_).subspan(node * grid_.total(), grid_.total());
}

std::span<const cplx> CoefficientField::slab(std::size_t node) const {
  return std::span<const cplx>(data_).subspan(node * grid_.total(), grid_.total());
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& o) {
  if (!(o.grid_ == grid_) || o.data_.size() != data_.size())
    throw std::invalid_argument("coefficient field: mismatched operands");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CoefficientField& CoefficientField::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

QuadratureScheme transform_quadrature(const GroupSpec& spec, const Grid& grid) {
  QuadratureScheme q;
  q.rule = Rule::Trapezoid;
  const double step = 5.0 / grid.L;
  for (int i = 0; i < spec.k(); ++i) q.xi_axes.push_back({-16 * step, 15 * step, 32});
  for (int j = 0; j < spec.d(); ++j) q.t_axes.push_back({-6.0, 6.0, 48});
  return q;
}

namespace {

struct NodeGeometry {
  Vec xi_embedded;
  Mat ht;
  double amp = 1.0;  // |det h|^{1/2}
};

NodeGeometry geometry(const GroupSpec& spec, const Vec& xi, const Vec& t) {
  const Mat h = dilation_matrix(spec, t);
  return {spec.embed_v(xi), h.transpose(), std::sqrt(std::abs(h.determinant()))};
}

std::vector<Vec> snapped_xi(const TensorRule& rule, double L) {
  std::vector<Vec> out;
  for (const Vec& v : rule.nodes) out.push_back((v * L).array().round().matrix() / L);
  return out;
}

void check_band(const GridFunction& fhat, const char* what) {
  if (band_edge_mass(fhat, 0.1) > 1e-8)
    throw std::domain_error(std::string("analyze: ") + what + " has spectral mass near the band edge (aliasing)");
}

}  // namespace

CoefficientField analyze(const GroupSpec& spec, const GridFunction& f, const GridFunction& psi,
                         const QuadratureScheme& quad) {
  if (f.domain() != Domain::Space || psi.domain() != Domain::Space)
    throw std::invalid_argument("analyze: f and psi must be space-domain");
  if (!(f.grid() == psi.grid())) throw std::invalid_argument("analyze: f and psi must share a grid");
  const Grid& grid = f.grid();
  if (grid.n != spec.n()) throw std::invalid_argument("analyze: grid and group dimensions differ");
  if (static_cast<int>(quad.xi_axes.size()) != spec.k() || static_cast<int>(quad.t_axes.size()) != spec.d())
    throw std::invalid_argument("analyze: quadrature needs k xi axes and d t axes");

  const GridFunction fhat = dft(f);
  const GridFunction psihat = dft(psi);
  check_band(fhat, "signal");
  check_band(psihat, "wavelet");
  const SpectralSampler sampler(psihat);

  const TensorRule xr = tensor_rule(quad.rule, quad.xi_axes);
  const TensorRule tr = tensor_rule(quad.rule, quad.t_axes);
  const std::vector<Vec> xis = snapped_xi(xr, grid.L);

  std::vector<double> weights;
  for (std::size_t i = 0; i < xis.size(); ++i)
    for (std::size_t j = 0; j < tr.size(); ++j) {
      const Mat h = dilation_matrix(spec, tr.nodes[j]);
      weights.push_back(xr.weights[i] * tr.weights[j] * det_restricted(spec, h) / std::abs(h.determinant()) *
                        spec.haar_h(tr.nodes[j]));
    }
  CoefficientField field(grid, xis, tr.nodes, std::move(weights));

  double fmax = 0.0;
  for (const auto& v : fhat.values()) fmax = std::max(fmax, std::abs(v));
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < fhat.size(); ++i)
    if (std::abs(fhat[i]) > 1e-12 * fmax) active.push_back(i);
  std::vector<Vec> nodes;
  nodes.reserve(active.size());
  for (auto i : active) nodes.push_back(grid.freq_node(i));

#pragma omp parallel for schedule(dynamic)
  for (std::size_t node = 0; node < field.node_count(); ++node) {
    const std::size_t i_xi = node / tr.size(), i_t = node % tr.size();
    const NodeGeometry geo = geometry(spec, xis[i_xi], tr.nodes[i_t]);
    GridFunction prod(grid, Domain::Frequency);
    bool any = false;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const cplx p = sampler(geo.ht * (nodes[a] - geo.xi_embedded));
      if (p == cplx{0.0, 0.0}) continue;
      prod[active[a]] = geo.amp * fhat[active[a]] * std::conj(p);
      any = true;
    }
    if (!any) continue;
    const GridFunction slab = idft(prod);
    std::copy(slab.values().begin(), slab.values().end(), field.slab(node).begin());
  }
  return field;
}

double coefficient_norm_sq(const CoefficientField& field) {
  const double cell = std::pow(field.grid().spacing(), field.grid().n);
  double total = 0.0;
  for (std::size_t node = 0; node < field.node_count(); ++node) {
    double s = 0.0;
    for (const auto& v : field.slab(node)) s += std::norm(v);
    total += field.weights()[node] * s;
  }
  return total * cell;
}

cplx coefficient_inner(const CoefficientField& a, const CoefficientField& b) {
  if (!(a.grid() == b.grid()) || a.node_count() != b.node_count())
    throw std::invalid_argument("coefficient_inner: mismatched fields");
  const double cell = std::pow(a.grid().spacing(), a.grid().n);
  cplx total = 0.0;
  for (std::size_t node = 0; node < a.node_count(); ++node) {
    const auto sa = a.slab(node), sb = b.slab(node);
    cplx s = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) s += sa[i] * std::conj(sb[i]);
    total += a.weights()[node] * s;
  }
  return total * cell;
}

GridFunction synthesize(const GroupSpec& spec, const CoefficientField& field,
                        const GridFunction& psi, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("synthesize: C must be positive");
  if (psi.domain() != Domain::Space || !(psi.grid() == field.grid()))
    throw std::invalid_argument("synthesize: psi must be space-domain on the field grid");
  const Grid& grid = field.grid();
  const SpectralSampler sampler(dft(psi));
  const std::size_t nt = field.t_nodes().size();
  std::vector<cplx> acc(grid.total(), cplx{0.0, 0.0});
  // nodes are folded in index order so the sum is reproducible
  for (std::size_t node = 0; node < field.node_count(); ++node) {
    const auto slab = field.slab(node);
    double smax = 0.0;
    for (const auto& v : slab) smax = std::max(smax, std::abs(v));
    if (smax == 0.0) continue;
    const GridFunction vhat = dft(GridFunction(grid, Domain::Space, std::vector<cplx>(slab.begin(), slab.end())));
    double vmax = 0.0;
    for (const auto& v : vhat.values()) vmax = std::max(vmax, std::abs(v));
    const NodeGeometry geo = geometry(spec, field.xi_nodes()[node / nt], field.t_nodes()[node % nt]);
    const double w = field.weights()[node] * geo.amp / C;
    for (std::size_t i = 0; i < vhat.size(); ++i) {
      if (std::abs(vhat[i]) <= 1e-14 * vmax) continue;
      acc[i] += w * sampler(geo.ht * (grid.freq_node(i) - geo.xi_embedded)) * vhat[i];
    }
  }
  return idft(GridFunction(grid, Domain::Frequency, std::move(acc)));
}

double parseval_rhs(const GridFunction& fhat, const PhiEvaluator& phi) {
  if (fhat.domain() != Domain::Frequency) throw std::invalid_argument("parseval_rhs: expects a spectrum");
  double fmax = 0.0;
  for (const auto& v : fhat.values()) fmax = std::max(fmax, std::norm(v));
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < fhat.size(); ++i)
    if (std::norm(fhat[i]) > 1e-24 * fmax) active.push_back(i);
  std::vector<double> terms(active.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t j = 0; j < active.size(); ++j)
    terms[j] = std::norm(fhat[active[j]]) * phi(fhat.node(active[j])).value;
  double s = 0.0;
  for (double v : terms) s += v;
  return s * fhat.cell();
}

void write_field(const std::string& base, const CoefficientField& field) {
  static_assert(std::endian::native == std::endian::little, "binary format is little-endian");
  std::ofstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write " + base + ".bin");
  for (std::size_t node = 0; node < field.node_count(); ++node)
    for (const auto& v : field.slab(node)) {
      const float pair[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
      bin.write(reinterpret_cast<const char*>(pair), sizeof(pair));
    }
  auto vecs = [](const std::vector<Vec>& vs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : vs) a.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    return a;
  };
  const nlohmann::json side = {{"n", field.grid().n},
                               {"N", field.grid().N},
                               {"L", field.grid().L},
                               {"layout", "node-major (xi index, then t index), then x row-major"},
                               {"xi_nodes", vecs(field.xi_nodes())},
                               {"t_nodes", vecs(field.t_nodes())},
                               {"weights", field.weights()}};
  std::ofstream js(base + ".json");
  js << side.dump(2) << "\n";
}

CoefficientField read_field(const std::string& base) {
  std::ifstream js(base + ".json");
  if (!js) throw std::runtime_error("missing sidecar " + base + ".json");
  const auto side = nlohmann::json::parse(js);
  auto vecs = [](const nlohmann::json& a) {
    std::vector<Vec> out;
    for (const auto& row : a) {
      const auto v = row.get<std::vector<double>>();
      out.push_back(Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    return out;
  };
  const Grid g{side.at("n").get<int>(), side.at("N").get<int>(), side.at("L").get<double>()};
  CoefficientField field(g, vecs(side.at("xi_nodes")), vecs(side.at("t_nodes")),
                         side.at("weights").get<std::vector<double>>());
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("missing " + base + ".bin");
  for (std::size_t node = 0; node < field.node_count(); ++node)
    for (auto& v : field.slab(node)) {
      float pair[2];
      if (!bin.read(reinterpret_cast<char*>(pair), sizeof(pair)))
        throw std::runtime_error("truncated " + base + ".bin");
      v = {pair[0], pair[1]};
    }
  return field;
}

}  // namespace tcg
