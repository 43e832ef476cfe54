// SPDX-License-Identifier: Apache-2.0
#include "tcg/grid.hpp"

#include "fft.hpp"
#include "tcg/sampler.hpp"

#include "json.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tcg {

std::size_t Grid::total() const {
  std::size_t t = 1;
  for (int i = 0; i < n; ++i) t *= static_cast<std::size_t>(N);
  return t;
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int a = n - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(N));
    flat /= static_cast<std::size_t>(N);
  }
  return idx;
}

std::size_t Grid::flatten(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < n; ++a) flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
  return flat;
}

Vec Grid::space_node(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec y(n);
  for (int a = 0; a < n; ++a) y(a) = -0.5 * L + idx[static_cast<std::size_t>(a)] * spacing();
  return y;
}

Vec Grid::freq_node(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec nu(n);
  for (int a = 0; a < n; ++a) nu(a) = (idx[static_cast<std::size_t>(a)] - N / 2) / L;
  return nu;
}

void validate_grid(const Grid& g) {
  if (g.n < 1 || g.n > 3) throw std::invalid_argument("grid: n must be 1, 2 or 3");
  if (g.N < 4 || (g.N & (g.N - 1)) != 0) throw std::invalid_argument("grid: N must be a power of two >= 4");
  if (!(g.L > 0.0)) throw std::invalid_argument("grid: L must be positive");
}

GridFunction::GridFunction(Grid grid, Domain domain)
    : grid_(grid), domain_(domain), data_(grid.total(), cplx{0.0, 0.0}) {
  validate_grid(grid_);
}

GridFunction::GridFunction(Grid grid, Domain domain, std::vector<cplx> data)
    : grid_(grid), domain_(domain), data_(std::move(data)) {
  validate_grid(grid_);
  if (data_.size() != grid_.total()) throw std::invalid_argument("grid function: wrong sample count");
}

Vec GridFunction::node(std::size_t flat) const {
  return domain_ == Domain::Space ? grid_.space_node(flat) : grid_.freq_node(flat);
}

double GridFunction::cell() const {
  const double c = domain_ == Domain::Space ? grid_.spacing() : grid_.freq_spacing();
  return std::pow(c, grid_.n);
}

double GridFunction::norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s * cell());
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  if (!(o.grid_ == grid_) || o.domain_ != domain_)
    throw std::invalid_argument("grid function: mismatched operands");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) {
  GridFunction nb = b;
  nb *= -1.0;
  return a += nb;
}
GridFunction operator*(cplx s, GridFunction a) { return a *= s; }

namespace {

// (-1)^(sum of indices) over all axes.
double parity(const Grid& g, std::size_t flat) {
  int s = 0;
  for (int a = 0; a < g.n; ++a) {
    s += static_cast<int>(flat % static_cast<std::size_t>(g.N));
    flat /= static_cast<std::size_t>(g.N);
  }
  return (s & 1) ? -1.0 : 1.0;
}

double half_shift_sign(const Grid& g) { return ((g.N / 2) * g.n) & 1 ? -1.0 : 1.0; }

}  // namespace

GridFunction dft(const GridFunction& f) {
  if (f.domain() != Domain::Space) throw std::invalid_argument("dft: expects a space-domain input");
  const Grid& g = f.grid();
  std::vector<cplx> buf(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= parity(g, i);
  detail::fft_inplace(buf, g.n, g.N, -1);
  const double scale = std::pow(g.spacing(), g.n) * half_shift_sign(g);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= parity(g, i) * scale;
  return GridFunction(g, Domain::Frequency, std::move(buf));
}

GridFunction idft(const GridFunction& fhat) {
  if (fhat.domain() != Domain::Frequency)
    throw std::invalid_argument("idft: expects a frequency-domain input");
  const Grid& g = fhat.grid();
  std::vector<cplx> buf(fhat.values().begin(), fhat.values().end());
  const double pre = half_shift_sign(g);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= parity(g, i) * pre;
  detail::fft_inplace(buf, g.n, g.N, +1);
  const double scale = std::pow(g.freq_spacing(), g.n);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= parity(g, i) * scale;
  return GridFunction(g, Domain::Space, std::move(buf));
}

GridFunction sample(const Grid& grid, Domain domain, const std::function<cplx(const Vec&)>& fn) {
  GridFunction out(grid, domain);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(out.node(i));
  return out;
}

double relative_l2(const GridFunction& a, const GridFunction& b) {
  return (a - b).norm() / b.norm();
}

double band_edge_mass(const GridFunction& fhat, double margin) {
  const Grid& g = fhat.grid();
  const double cut = (1.0 - margin) * g.band_edge();
  double edge = 0.0, all = 0.0;
  for (std::size_t i = 0; i < fhat.size(); ++i) {
    const double m = std::norm(fhat[i]);
    all += m;
    if (g.freq_node(i).cwiseAbs().maxCoeff() > cut) edge += m;
  }
  return all > 0.0 ? edge / all : 0.0;
}

SnappedElement snap_element(const GroupSpec& spec, const Grid& grid, const GroupElement& g) {
  validate(spec, g);
  if (spec.n() != grid.n) throw std::invalid_argument("snap: grid and group dimensions differ");
  SnappedElement s{g, 0.0};
  const double dx = grid.spacing();
  const double dxi = grid.freq_spacing();
  for (Eigen::Index i = 0; i < g.x.size(); ++i) {
    s.element.x(i) = std::round(g.x(i) / dx) * dx;
    s.distance = std::max(s.distance, std::abs(s.element.x(i) - g.x(i)));
  }
  for (Eigen::Index i = 0; i < g.xi.size(); ++i) {
    s.element.xi(i) = std::round(g.xi(i) / dxi) * dxi;
    s.distance = std::max(s.distance, std::abs(s.element.xi(i) - g.xi(i)));
  }
  return s;
}

namespace {

bool is_identity(const Mat& h) {
  return (h - Mat::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff() < 1e-15;
}

}  // namespace

GridFunction apply_pi(const GroupSpec& spec, const GroupElement& g_in, const GridFunction& f) {
  if (f.domain() != Domain::Space) throw std::invalid_argument("apply_pi: expects a space-domain input");
  const Grid& grid = f.grid();
  const GroupElement g = snap_element(spec, grid, g_in).element;
  const Mat h = dilation_matrix(spec, g.t);

  GridFunction cur = f;
  if (!is_identity(h)) {
    const GridFunction fhat = dft(f);
    const SpectralSampler sampler(fhat);
    const Mat ht = h.transpose();
    const double amp = std::sqrt(std::abs(h.determinant()));
    GridFunction dhat(grid, Domain::Frequency);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < dhat.size(); ++i) dhat[i] = amp * sampler(ht * grid.freq_node(i));
    cur = idft(dhat);
  }

  const Vec xi = spec.embed_v(g.xi);
  if (xi.cwiseAbs().maxCoeff() > 0.0)
    for (std::size_t i = 0; i < cur.size(); ++i)
      cur[i] *= std::polar(1.0, kTwoPi * grid.space_node(i).dot(xi));

  std::vector<int> shift(static_cast<std::size_t>(grid.n));
  bool moved = false;
  for (int a = 0; a < grid.n; ++a) {
    shift[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(g.x(a) / grid.spacing()));
    moved = moved || shift[static_cast<std::size_t>(a)] != 0;
  }
  GridFunction out(grid, Domain::Space);
  if (moved) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto idx = grid.unflatten(i);
      for (int a = 0; a < grid.n; ++a) {
        auto& v = idx[static_cast<std::size_t>(a)];
        v = ((v + shift[static_cast<std::size_t>(a)]) % grid.N + grid.N) % grid.N;
      }
      out[grid.flatten(idx)] = cur[i];
    }
  } else {
    out = cur;
  }
  out *= g.z;
  return out;
}

GridFunction apply_pi_fourier(const GroupSpec& spec, const GroupElement& g_in,
                              const GridFunction& fhat) {
  if (fhat.domain() != Domain::Frequency)
    throw std::invalid_argument("apply_pi_fourier: expects a frequency-domain input");
  const Grid& grid = fhat.grid();
  const GroupElement g = snap_element(spec, grid, g_in).element;
  const Mat h = dilation_matrix(spec, g.t);
  const Mat ht = h.transpose();
  const double amp = std::sqrt(std::abs(h.determinant()));
  const Vec xi = spec.embed_v(g.xi);
  GridFunction out(grid, Domain::Frequency);

  if (is_identity(h)) {
    std::vector<int> shift(static_cast<std::size_t>(grid.n));
    for (int a = 0; a < grid.n; ++a)
      shift[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(xi(a) * grid.L));
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto idx = grid.unflatten(i);
      bool inside = true;
      for (int a = 0; a < grid.n; ++a) {
        auto& v = idx[static_cast<std::size_t>(a)];
        v -= shift[static_cast<std::size_t>(a)];
        inside = inside && v >= 0 && v < grid.N;
      }
      if (!inside) continue;
      const double ph = -kTwoPi * grid.freq_node(i).dot(g.x);
      out[i] = g.z * std::polar(1.0, ph) * fhat[grid.flatten(idx)];
    }
    return out;
  }

  const SpectralSampler sampler(fhat);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec gamma = grid.freq_node(i);
    const double ph = -kTwoPi * gamma.dot(g.x);
    out[i] = amp * g.z * std::polar(1.0, ph) * sampler(ht * (gamma - xi));
  }
  return out;
}

GridFunction project_to_support(const GridFunction& fhat,
                                const std::function<bool(const Vec&)>& indicator) {
  GridFunction out = fhat;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!indicator(out.node(i))) out[i] = 0.0;
  return out;
}

void write_grid_function(const std::string& base, const GridFunction& f) {
  static_assert(std::endian::native == std::endian::little, "binary format is little-endian");
  std::ofstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write " + base + ".bin");
  for (const auto& v : f.values()) {
    const float pair[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
    bin.write(reinterpret_cast<const char*>(pair), sizeof(pair));
  }
  nlohmann::json side = {{"n", f.grid().n},
                         {"N", f.grid().N},
                         {"L", f.grid().L},
                         {"domain", f.domain() == Domain::Space ? "space" : "frequency"}};
  std::ofstream js(base + ".json");
  js << side.dump(2) << "\n";
}

GridFunction read_grid_function(const std::string& base_in) {
  std::string base = base_in;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".bin") base.resize(base.size() - 4);
  std::ifstream js(base + ".json");
  if (!js) throw std::runtime_error("missing sidecar " + base + ".json");
  const auto side = nlohmann::json::parse(js);
  Grid g{side.at("n").get<int>(), side.at("N").get<int>(), side.at("L").get<double>()};
  const std::string dom = side.at("domain").get<std::string>();
  if (dom != "space" && dom != "frequency") throw std::runtime_error("sidecar: bad domain " + dom);
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("missing " + base + ".bin");
  std::vector<cplx> data(g.total());
  for (auto& v : data) {
    float pair[2];
    if (!bin.read(reinterpret_cast<char*>(pair), sizeof(pair)))
      throw std::runtime_error("truncated " + base + ".bin");
    v = {pair[0], pair[1]};
  }
  return GridFunction(g, dom == "space" ? Domain::Space : Domain::Frequency, std::move(data));
}

void write_csv_slice(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const Grid& g = f.grid();
  out.precision(10);
  if (g.n == 1) {
    out << "c0,re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
      out << f.node(i)(0) << "," << f[i].real() << "," << f[i].imag() << "\n";
    return;
  }
  out << "c0,c1,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = g.unflatten(i);
    bool on_slice = true;
    for (int a = 0; a + 2 < g.n; ++a) on_slice = on_slice && idx[static_cast<std::size_t>(a)] == g.N / 2;
    if (!on_slice) continue;
    const Vec c = f.node(i);
    out << c(g.n - 2) << "," << c(g.n - 1) << "," << f[i].real() << "," << f[i].imag() << "\n";
  }
}

}  // namespace tcg
