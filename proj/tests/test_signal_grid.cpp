// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"

#include "tcg/catalog.hpp"
#include "tcg/grid.hpp"
#include "tcg/sampler.hpp"
#include "tcg/wavelets.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace tcg;

namespace {

GridFunction random_function(const Grid& g, oracle::Gen& gen, Domain d = Domain::Space) {
  GridFunction f(g, d);
  for (auto& v : f.values()) v = {gen.uniform(-1, 1), gen.uniform(-1, 1)};
  return f;
}

double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// Smooth, well band-limited 2-D signal.
GridFunction blob2(const Grid& g) {
  return idft(gaussian_blob(g, Vec{{0.3, 0.5}}, 0.2, Vec{{0.4, -0.3}}));
}

}  // namespace

TEST_CASE("grid geometry and validation") {
  const Grid g{2, 8, 4.0};
  CHECK(g.total() == 64);
  CHECK(g.spacing() == 0.5);
  CHECK(g.band_edge() == 1.0);
  CHECK(g.space_node(0) == Vec{{-2.0, -2.0}});
  CHECK(g.freq_node(g.flatten(std::vector<int>{4, 4})).norm() == 0.0);
  for (std::size_t i = 0; i < g.total(); ++i) CHECK(g.flatten(g.unflatten(i)) == i);
  CHECK_THROWS(validate_grid(Grid{1, 6, 1.0}));
  CHECK_THROWS(validate_grid(Grid{1, 2, 1.0}));
  CHECK_THROWS(validate_grid(Grid{4, 8, 1.0}));
  CHECK_THROWS(validate_grid(Grid{1, 8, 0.0}));
  CHECK_NOTHROW(validate_grid(Grid{3, 4, 1.0}));
}

TEST_CASE("fast transform agrees with the direct sum") {
  oracle::Gen gen(30);
  for (const Grid g : {Grid{1, 64, 8.0}, Grid{1, 16, 3.0}, Grid{2, 16, 4.0}, Grid{3, 4, 2.0}}) {
    const GridFunction f = random_function(g, gen);
    const GridFunction fast = dft(f), slow = oracle::naive_dft(f);
    CHECK(relative_l2(fast, slow) <= 1e-12);
    CHECK(relative_l2(idft(fast), f) <= 1e-12);
  }
}

TEST_CASE("Gaussian transform and Plancherel") {
  const Grid g{1, 128, 16.0};
  const GridFunction f = unit_gaussian(g);
  const GridFunction fh = dft(f);
  double err = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) {
    const double w = fh.node(i)(0);
    err = std::max(err, std::abs(fh[i] - std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * w * w)));
  }
  CHECK(err <= 1e-12);
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
  oracle::Gen gen(31);
  const GridFunction r = random_function(Grid{2, 16, 5.0}, gen);
  CHECK(dft(r).norm() == doctest::Approx(r.norm()).epsilon(1e-12));
}

TEST_CASE("spectral sampler matches the band-limited interpolant") {
  oracle::Gen gen(32);
  for (const Grid g : {Grid{1, 128, 16.0}, Grid{2, 32, 8.0}}) {
    const GridFunction fhat = g.n == 1 ? dft(unit_gaussian(g)) : gaussian_blob(g, Vec{{0.2, -0.4}}, 0.3, Vec{{0.5, 0.2}});
    const SpectralSampler s(fhat);
    const double scale = max_abs(fhat);
    for (int rep = 0; rep < 20; ++rep) {
      const Vec nu = gen.vec(g.n, -0.8 * g.band_edge(), 0.8 * g.band_edge());
      CHECK(std::abs(s(nu) - oracle::dtft_at(fhat, nu)) <= 1e-6 * scale);
    }
    CHECK(s(Vec::Constant(g.n, 1.5 * g.band_edge())) == cplx{0.0, 0.0});
    // exact at grid nodes
    CHECK(std::abs(s(fhat.node(7)) - fhat[7]) <= 1e-12 * scale);
  }
}

TEST_CASE("space sampler reproduces nodes and smooth values") {
  const Grid g{1, 128, 16.0};
  const GridFunction f = unit_gaussian(g);
  const SpaceSampler s(f);
  CHECK(std::abs(s(f.node(40)) - f[40]) <= 1e-12);
  const double y = 0.3137;
  CHECK(std::abs(s(Vec::Constant(1, y)) - std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * y * y)) <= 1e-7);
}

TEST_CASE("pi commutes with the Fourier transform on snapped elements") {
  oracle::Gen gen(33);
  const Grid g{2, 128, 16.0};
  // the image spectrum has to stay inside the band for the identity to hold on the grid
  const GridFunction f = idft(gaussian_blob(g, Vec{{0.3, 0.5}}, 0.2, Vec{{0.4, -0.3}}));
  for (const auto& spec : {dim2_family(0, 1).spec, dim2_family(2, 1).spec, heisenberg(2).spec}) {
    for (int rep = 0; rep < 10; ++rep) {
      const GroupElement e = gen.element(spec, 2.0, 0.5, 0.25);
      const GridFunction lhs = dft(apply_pi(spec, e, f));
      const GridFunction rhs = apply_pi_fourier(spec, e, dft(f));
      CHECK(relative_l2(lhs, rhs) <= 1e-6);
    }
  }
}

TEST_CASE("pi is unitary and a homomorphism up to the central phase") {
  oracle::Gen gen(34);
  const Grid g{2, 32, 16.0};
  const GroupSpec spec = heisenberg(2).spec;
  const GridFunction f = idft(gaussian_blob(g, Vec{{0.2, 0.1}}, 0.25, Vec::Zero(2)));
  for (int rep = 0; rep < 10; ++rep) {
    const GroupElement a = snap_element(spec, g, gen.element(spec, 2, 0.5)).element;
    const GroupElement b = snap_element(spec, g, gen.element(spec, 2, 0.5)).element;
    const GridFunction two = apply_pi(spec, a, apply_pi(spec, b, f));
    const GridFunction one = apply_pi(spec, multiply(spec, a, b), f);
    CHECK(two.norm() == doctest::Approx(f.norm()).epsilon(1e-10));
    // T_x M_xi composes with e^{+2 pi i <xi1, x2>}; the group law carries e^{-2 pi i <xi1, x2>}
    const cplx fix = std::polar(1.0, 2.0 * kTwoPi * a.xi.dot(b.x));
    CHECK(relative_l2(two, fix * one) <= 1e-10);
  }
  const GroupSpec d = dim2_family(0, 1).spec;
  const GridFunction p = blob2(Grid{2, 64, 16.0});
  const GridFunction q = apply_pi(d, gen.element(d, 1.0, 0.5, 0.3), p);
  CHECK(q.norm() == doctest::Approx(p.norm()).epsilon(1e-6));
}

TEST_CASE("snapping and band diagnostics") {
  const Grid g{2, 32, 8.0};
  const GroupSpec spec = dim2_family(0, 1).spec;
  const GroupElement e{cplx{1, 0}, Vec{{0.11, -0.37}}, Vec::Constant(1, 0.33), Vec::Constant(1, 0.2)};
  const SnappedElement s = snap_element(spec, g, e);
  CHECK(s.distance <= 0.5 * g.spacing() + 1e-15);
  CHECK(std::abs(std::remainder(s.element.x(0), g.spacing())) <= 1e-12);
  CHECK(std::abs(std::remainder(s.element.xi(0), g.freq_spacing())) <= 1e-12);
  CHECK(s.element.t(0) == 0.2);

  CHECK(band_edge_mass(gaussian_blob(g, Vec::Zero(2), 0.2, Vec::Zero(2)), 0.1) <= 1e-12);
  oracle::Gen gen(35);
  CHECK(band_edge_mass(random_function(g, gen, Domain::Frequency), 0.1) > 0.1);

  const GridFunction cut = project_to_support(gaussian_blob(g, Vec::Zero(2), 0.5, Vec::Zero(2)),
                                              [](const Vec& w) { return w(1) > 0.0; });
  for (std::size_t i = 0; i < cut.size(); ++i)
    if (cut.node(i)(1) <= 0.0) CHECK(cut[i] == cplx{0.0, 0.0});
}

TEST_CASE("binary and CSV export") {
  const auto dir = std::filesystem::temp_directory_path() / "tcg_test_signal_grid";
  std::filesystem::create_directories(dir);
  oracle::Gen gen(36);
  const GridFunction f = random_function(Grid{2, 16, 4.0}, gen);
  const std::string base = (dir / "f").string();
  write_grid_function(base, f);
  for (const std::string& name : {base, base + ".bin"}) {
    const GridFunction r = read_grid_function(name);
    CHECK(r.grid() == f.grid());
    CHECK(r.domain() == Domain::Space);
    CHECK(relative_l2(r, f) <= 1e-7);
  }
  CHECK(std::filesystem::file_size(base + ".bin") == f.size() * 8);
  CHECK_THROWS(read_grid_function((dir / "missing").string()));
  write_csv_slice((dir / "f.csv").string(), f);
  std::ifstream csv(dir / "f.csv");
  std::size_t lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines >= 16);
}

TEST_CASE("upsampling keeps the original samples") {
  const Grid g{1, 64, 8.0};
  const GridFunction f = unit_gaussian(g);
  const GridFunction up = upsample_space(f, 2);
  CHECK(up.grid().N == 128);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(std::abs(up[2 * j] - f[j]) <= 1e-12);
}
