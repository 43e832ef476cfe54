// SPDX-License-Identifier: Apache-2.0
#include "tcg/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tcg {

LagrangeGrid::LagrangeGrid(int n, int M, double origin, double step, std::vector<cplx> values,
                           int order, bool periodic)
    : n_(n), m_(M), origin_(origin), step_(step), values_(std::move(values)), order_(order),
      periodic_(periodic) {
  if (n_ < 1 || n_ > 3) throw std::invalid_argument("lagrange: dimension must be 1..3");
  if (order_ < 2 || order_ > M) throw std::invalid_argument("lagrange: bad order");
  std::size_t total = 1;
  for (int i = 0; i < n_; ++i) total *= static_cast<std::size_t>(m_);
  if (values_.size() != total) throw std::invalid_argument("lagrange: wrong sample count");
}

cplx LagrangeGrid::operator()(const Vec& pos) const {
  constexpr int kMaxOrder = 16;
  if (order_ > kMaxOrder) throw std::invalid_argument("lagrange: order too large");
  std::array<std::array<double, kMaxOrder>, 3> w{};
  std::array<std::array<int, kMaxOrder>, 3> idx{};

  for (int a = 0; a < n_; ++a) {
    const double p = (pos(a) - origin_) / step_;
    if (!periodic_ && (p < 0.0 || p > m_ - 1)) return 0.0;
    const double fl = std::floor(p);
    int start = static_cast<int>(fl) - order_ / 2 + 1;
    if (!periodic_) start = std::clamp(start, 0, m_ - order_);
    const double frac = p - start;
    // exact hit on a node: avoid 0/0 in the barycentric-free product form
    int hit = -1;
    for (int r = 0; r < order_; ++r)
      if (frac == static_cast<double>(r)) hit = r;
    for (int r = 0; r < order_; ++r) {
      double l = 1.0;
      if (hit >= 0) {
        l = r == hit ? 1.0 : 0.0;
      } else {
        for (int s = 0; s < order_; ++s)
          if (s != r) l *= (frac - s) / static_cast<double>(r - s);
      }
      w[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] = l;
      int j = start + r;
      if (periodic_) j = ((j % m_) + m_) % m_;
      idx[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] = j;
    }
  }

  const auto M = static_cast<std::size_t>(m_);
  cplx acc = 0.0;
  if (n_ == 1) {
    for (int r = 0; r < order_; ++r)
      acc += w[0][static_cast<std::size_t>(r)] * values_[static_cast<std::size_t>(idx[0][static_cast<std::size_t>(r)])];
  } else if (n_ == 2) {
    for (int r = 0; r < order_; ++r) {
      const double w0 = w[0][static_cast<std::size_t>(r)];
      if (w0 == 0.0) continue;
      const std::size_t row = static_cast<std::size_t>(idx[0][static_cast<std::size_t>(r)]) * M;
      cplx inner = 0.0;
      for (int s = 0; s < order_; ++s)
        inner += w[1][static_cast<std::size_t>(s)] * values_[row + static_cast<std::size_t>(idx[1][static_cast<std::size_t>(s)])];
      acc += w0 * inner;
    }
  } else {
    for (int r = 0; r < order_; ++r) {
      const double w0 = w[0][static_cast<std::size_t>(r)];
      if (w0 == 0.0) continue;
      for (int s = 0; s < order_; ++s) {
        const double w1 = w[1][static_cast<std::size_t>(s)];
        if (w1 == 0.0) continue;
        const std::size_t base =
            (static_cast<std::size_t>(idx[0][static_cast<std::size_t>(r)]) * M +
             static_cast<std::size_t>(idx[1][static_cast<std::size_t>(s)])) * M;
        cplx inner = 0.0;
        for (int q = 0; q < order_; ++q)
          inner += w[2][static_cast<std::size_t>(q)] * values_[base + static_cast<std::size_t>(idx[2][static_cast<std::size_t>(q)])];
        acc += w0 * w1 * inner;
      }
    }
  }
  return acc;
}

namespace {

int default_oversample(int n) { return n == 1 ? 16 : (n == 2 ? 4 : 2); }
int default_order(int n) { return n == 3 ? 4 : 8; }

// Embeds samples of an N^n array centred in a (P N)^n array of zeros.
std::vector<cplx> embed_centred(const Grid& g, std::span<const cplx> src, int P) {
  const Grid big{g.n, P * g.N, P * g.L};
  std::vector<cplx> out(big.total(), cplx{0.0, 0.0});
  const int off = (P - 1) * g.N / 2;
  std::vector<int> bidx(static_cast<std::size_t>(g.n));
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto idx = g.unflatten(i);
    for (int a = 0; a < g.n; ++a) bidx[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(a)] + off;
    out[big.flatten(bidx)] = src[i];
  }
  return out;
}

LagrangeGrid spectral_fine(const GridFunction& fhat, int P, int order) {
  const Grid& g = fhat.grid();
  const GridFunction f = idft(fhat);
  const Grid big{g.n, P * g.N, P * g.L};
  const GridFunction fine = dft(GridFunction(big, Domain::Space, embed_centred(g, f.values(), P)));
  std::vector<cplx> vals(fine.values().begin(), fine.values().end());
  return LagrangeGrid(g.n, big.N, -0.5 * g.N / g.L, 1.0 / big.L, std::move(vals), order, true);
}

LagrangeGrid space_fine(const GridFunction& f, int P, int order) {
  const GridFunction up = upsample_space(f, P);
  std::vector<cplx> vals(up.values().begin(), up.values().end());
  return LagrangeGrid(f.grid().n, up.grid().N, -0.5 * f.grid().L, f.grid().spacing() / P,
                      std::move(vals), order, false);
}

}  // namespace

SpectralSampler::SpectralSampler(const GridFunction& fhat, int oversample, int order)
    : grid_(fhat.grid()),
      fine_(spectral_fine(fhat, oversample > 0 ? oversample : default_oversample(fhat.grid().n),
                          order > 0 ? order : default_order(fhat.grid().n))) {
  if (fhat.domain() != Domain::Frequency)
    throw std::invalid_argument("spectral sampler: expects a frequency-domain input");
}

cplx SpectralSampler::operator()(const Vec& nu) const {
  const double edge = grid_.band_edge();
  for (Eigen::Index a = 0; a < nu.size(); ++a)
    if (nu(a) < -edge || nu(a) >= edge) return 0.0;
  return fine_(nu);
}

SpaceSampler::SpaceSampler(const GridFunction& f, int oversample, int order)
    : grid_(f.grid()),
      fine_(space_fine(f, oversample > 0 ? oversample : default_oversample(f.grid().n),
                       order > 0 ? order : default_order(f.grid().n))) {
  if (f.domain() != Domain::Space) throw std::invalid_argument("space sampler: expects a space-domain input");
}

cplx SpaceSampler::operator()(const Vec& y) const { return fine_(y); }

GridFunction upsample_space(const GridFunction& f, int factor) {
  if (f.domain() != Domain::Space) throw std::invalid_argument("upsample: expects a space-domain input");
  if (factor < 1) throw std::invalid_argument("upsample: factor must be positive");
  const Grid& g = f.grid();
  if (factor == 1) return f;
  const GridFunction fhat = dft(f);
  const Grid fine{g.n, factor * g.N, g.L};
  // zero-padding in frequency: the fine frequency grid has the same spacing 1/L
  std::vector<cplx> padded = embed_centred(g, fhat.values(), factor);
  return idft(GridFunction(fine, Domain::Frequency, std::move(padded)));
}

}  // namespace tcg
