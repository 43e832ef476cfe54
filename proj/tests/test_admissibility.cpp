// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"

#include "tcg/admissibility.hpp"
#include "tcg/catalog.hpp"
#include "tcg/dual_action.hpp"
#include "tcg/wavelets.hpp"

#include <cmath>
#include <numbers>

using namespace tcg;

namespace {

// Closed-form two-sided log bump with the default LogBump parameters.
double bump(const Vec& g) {
  const LogBump b;
  const double v = std::abs(g(g.size() - 1));
  if (v == 0.0) return 0.0;
  const double lg = std::log(v / b.v0);
  double val = std::exp(-lg * lg / (2 * b.sigma * b.sigma));
  for (Eigen::Index a = 0; a + 1 < g.size(); ++a) val *= std::exp(-std::numbers::pi * g(a) * g(a) / (b.width * b.width));
  return val;
}

// Raw quadrature in (xi, t) without the substitution used by PhiEvaluator:
// int int |psihat(h^T(omega - xi))|^2 |det h_11| dxi dt for one-parameter dim2 groups.
double brute_phi_dim2(const GroupSpec& spec, const Vec& omega) {
  const int nt = 1601, nx = 4001;
  const double t0 = -9, t1 = 9;
  double total = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double t = t0 + (t1 - t0) * i / (nt - 1);
    const Mat h = dilation_matrix(spec, Vec::Constant(1, t));
    // the integrand in xi has width ~ |h_11|^{-1}; scale the window with it
    const double half = 6.0 / std::abs(h(0, 0)), c = omega(0) + h(1, 0) * omega(1) / h(0, 0);
    double inner = 0.0;
    for (int j = 0; j < nx; ++j) {
      const double xi = c - half + 2 * half * j / (nx - 1);
      const Vec p = h.transpose() * (omega - Vec{{xi, 0.0}});
      const double w = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
      inner += w * std::pow(bump(p), 2);
    }
    inner *= 2 * half / (nx - 1) * std::abs(h(0, 0));
    total += ((i == 0 || i == nt - 1) ? 0.5 : 1.0) * inner;
  }
  return total * (t1 - t0) / (nt - 1);
}

GridFunction one_sided(const Grid& g, double sign) {
  LogBump b;
  b.sign = sign;
  return log_bump(g, b);
}

}  // namespace

TEST_CASE("affine group: Gaussian derivative has Phi = 1") {
  const Grid g{1, 512, 16.0};
  const GroupSpec spec = affine_1d().spec;
  const GridFunction psihat = dft(gaussian_derivative(g));
  const PhiEvaluator phi(spec, psihat, default_quadrature(spec, psihat));
  for (double w : {0.2, 0.5, -0.7, 1.1}) CHECK(phi(Vec::Constant(1, w)).value == doctest::Approx(1.0).epsilon(1e-4));
  // t in [-6, 6] loses about 2 pi w^2 e^{-12} at the lower end; the grown box recovers it
  const PhiEvaluator wide(spec, psihat, grown(default_quadrature(spec, psihat)));
  for (double w : {2.0, -3.0}) CHECK(wide(Vec::Constant(1, w)).value == doctest::Approx(1.0).epsilon(1e-4));
  // closed form of |psihat|^2 integrated over a long t range
  const auto direct = [](double w) {
    double s = 0.0;
    const int m = 20001;
    for (int i = 0; i < m; ++i) {
      const double t = -15 + 30.0 * i / (m - 1), v = std::exp(t) * w;
      s += ((i == 0 || i == m - 1) ? 0.5 : 1.0) * 4 * std::numbers::pi * v * v * std::exp(-2 * std::numbers::pi * v * v);
    }
    return s * 30.0 / (m - 1);
  };
  CHECK(direct(0.7) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Phi agrees with a raw (xi, t) quadrature") {
  const Grid g{2, 128, 16.0};
  const GridFunction psihat = two_sided_log_bump(g, {});
  for (const auto& e : {dim2_family(0, 1), dim2_family(2, 1)}) {
    const PhiEvaluator phi(e.spec, psihat, default_quadrature(e.spec, psihat));
    for (const Vec& w : {Vec{{0.3, 0.7}}, Vec{{-1.0, -0.4}}, Vec{{0.5, 1.3}}}) {
      const double ref = brute_phi_dim2(e.spec, w);
      CHECK_MESSAGE(phi(w).value == doctest::Approx(ref).epsilon(2e-3), e.id);
    }
  }
}

TEST_CASE("dim2 Phi depends only on the sign of the second coordinate") {
  const Grid g{2, 128, 16.0};
  const GridFunction psihat = two_sided_log_bump(g, {});
  const GroupSpec spec = dim2_family(2, 1).spec;
  const PhiEvaluator phi(spec, psihat, default_quadrature(spec, psihat));
  const double up = phi(Vec{{0.0, 1.0}}).value, down = phi(Vec{{0.0, -1.0}}).value;
  for (const Vec& w : test_frequencies(2, 20, 1.5)) {
    const PhiSample s = phi(w);
    CHECK(s.value == doctest::Approx(w(1) > 0 ? up : down).epsilon(0.01));
    CHECK_FALSE(s.inconclusive);
  }
}

TEST_CASE("normalization") {
  const Grid g{2, 128, 16.0};
  const GroupSpec spec = dim2_family(0, 1).spec;

  SUBCASE("output has Phi near 1 and is nearly idempotent") {
    const GridFunction psi0 = two_sided_log_bump(g, {});
    const GridFunction psi1 = normalize_admissible(spec, psi0, default_quadrature(spec, psi0));
    const PhiEvaluator phi(spec, psi1, default_quadrature(spec, psi1));
    for (const Vec& w : test_frequencies(2, 30, 1.5)) CHECK(phi(w).value == doctest::Approx(1.0).epsilon(0.02));
    const GridFunction psi2 = normalize_admissible(spec, psi1, default_quadrature(spec, psi1));
    CHECK(relative_l2(psi2, psi1) <= 1e-4);
  }

  SUBCASE("exact fixed point when C = 1") {
    const GroupSpec heis = heisenberg(2).spec;
    GridFunction psi = gaussian_blob(g, Vec{{0.2, -0.3}}, 0.3, Vec::Zero(2));
    const QuadratureScheme q = default_quadrature(heis, psi);
    psi *= 1.0 / std::sqrt(phi_psi(heis, psi, Vec{{0.4, 0.1}}, q));
    CHECK(relative_l2(normalize_admissible(heis, psi, q), psi) <= 1e-8);
  }

  SUBCASE("normalizing each half-plane separately then summing") {
    GridFunction sum(g, Domain::Frequency);
    for (double s : {1.0, -1.0}) {
      const GridFunction part = one_sided(g, s);
      sum += normalize_admissible(spec, part, default_quadrature(spec, part));
    }
    const PhiEvaluator phi(spec, sum, default_quadrature(spec, sum));
    for (const Vec& w : test_frequencies(2, 20, 1.5)) CHECK(phi(w).value == doctest::Approx(1.0).epsilon(0.02));
  }

  SUBCASE("zero input and a vanishing Phi") {
    GridFunction z(g, Domain::Frequency);
    CHECK(normalize_admissible(spec, z, default_quadrature(spec, z)).norm() == 0.0);
    // a V window far outside the band sees no spectrum at all
    const QuadratureScheme blind = make_quadrature(1, 1, {20.0, 21.0, 8}, {-6.0, 6.0, 48});
    CHECK_THROWS_AS(normalize_admissible(spec, one_sided(g, 1), blind), std::domain_error);
  }
}

TEST_CASE("verdicts") {
  const Grid g{2, 128, 16.0};
  const auto freqs = test_frequencies(2, 50, 1.5);

  SUBCASE("Heisenberg: admissible with C = squared norm") {
    const CatalogEntry e = heisenberg(2);
    const GridFunction psihat = gaussian_blob(g, Vec{{0.1, 0.4}}, 0.3, Vec::Zero(2));
    const AdmissibilityReport r = admissibility_report(e.spec, psihat, freqs, default_quadrature(e.spec, psihat));
    CHECK(r.verdict == "admissible");
    CHECK(r.c_psi == doctest::Approx(psihat.norm() * psihat.norm()).epsilon(1e-6));
  }

  SUBCASE("proper V, trivial H: weakly admissible, strong admissibility rejected") {
    const CatalogEntry e = proper_v(2, 1);
    // wide enough that Phi stays far above the vanishing threshold at |omega_2| = 1.5
    const GridFunction psihat = gaussian_blob(g, Vec{{0.1, 0.4}}, 0.6, Vec::Zero(2));
    AdmissibilityOptions o;
    o.chart = e.transversal;
    const AdmissibilityReport r = admissibility_report(e.spec, psihat, freqs, default_quadrature(e.spec, psihat), o);
    CHECK(r.verdict == "weakly-admissible");
    CHECK(r.strong_admissibility == "rejected");
    CHECK(r.mass_growth_slope == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("dim2: normalized wavelet is admissible, unbalanced halves weakly admissible, one half not") {
    const CatalogEntry e = dim2_family(0, 1);
    const GridFunction psi0 = two_sided_log_bump(g, {});
    const GridFunction psi1 = normalize_admissible(e.spec, psi0, default_quadrature(e.spec, psi0));
    CHECK(admissibility_report(e.spec, psi1, freqs, default_quadrature(e.spec, psi1)).verdict == "admissible");
    const GridFunction lopsided = one_sided(g, 1) + 0.5 * one_sided(g, -1);
    const AdmissibilityReport w = admissibility_report(e.spec, lopsided, freqs, default_quadrature(e.spec, lopsided));
    CHECK(w.verdict == "weakly-admissible");
    const GridFunction half = one_sided(g, 1);
    CHECK(admissibility_report(e.spec, half, freqs, default_quadrature(e.spec, half)).verdict == "not-admissible");
  }

  SUBCASE("reports carry thresholds and quadrature") {
    const CatalogEntry e = dim2_family(0, 1);
    const GridFunction psihat = two_sided_log_bump(g, {});
    AdmissibilityOptions o;
    o.spread_tol = 0.5;
    const QuadratureScheme q = default_quadrature(e.spec, psihat);
    const AdmissibilityReport r = admissibility_report(e.spec, psihat, freqs, q, o);
    CHECK(r.options.spread_tol == 0.5);
    CHECK(r.quadrature.t_axes.size() == 1);
    CHECK(r.phi.size() == freqs.size());
    CHECK(r.boundary_mass <= q.tail_mass_bound);
  }
}

TEST_CASE("Duflo-Moore weight on the dim2 upper orbit") {
  oracle::Gen gen(40);
  for (const auto& e : {dim2_family(0, 1), dim2_family(2, 1)}) {
    for (int rep = 0; rep < 30; ++rep) {
      const Vec eta{{gen.uniform(-2, 2), std::exp(gen.uniform(-2, 2))}};
      CHECK(weight_Psi(e.spec, eta, Vec{{0.0, 1.0}}) == doctest::Approx(1.0 / eta(1)).epsilon(1e-6));
    }
    CHECK_THROWS(weight_Psi(e.spec, Vec{{0.0, -1.0}}, Vec{{0.0, 1.0}}));
  }
  CHECK(psi_validation_note(dim2_family(0, 1).spec).find("1/eta_2") != std::string::npos);
}

TEST_CASE("weighted norm partial sums") {
  const Grid g{1, 64, 8.0};
  GridFunction psihat(g, Domain::Frequency);
  std::vector<double> flat(g.total(), 1.0), steep(g.total(), 0.0);
  for (std::size_t i = 0; i < g.total(); ++i) {
    psihat[i] = 1.0;
    steep[i] = std::ldexp(1.0, static_cast<int>(i % 20));
  }
  const WeightedNorm a = weighted_norm_check(psihat, flat);
  CHECK(a.value == doctest::Approx(psihat.norm() * psihat.norm()));
  CHECK(a.trend == "saturates");
  const WeightedNorm b = weighted_norm_check(psihat, steep);
  CHECK(b.trend == "grows");
  CHECK(std::is_sorted(b.partial_sums.begin(), b.partial_sums.end()));
  CHECK_THROWS(weighted_norm_check(psihat, std::vector<double>(3, 1.0)));
}

TEST_CASE("test frequencies") {
  const auto f = test_frequencies(2, 50, 1.5);
  CHECK(f.size() == 50);
  CHECK(f == test_frequencies(2, 50, 1.5));
  bool pos = false, neg = false;
  for (const auto& w : f) {
    CHECK(std::abs(w(1)) >= 0.1);
    CHECK(w.cwiseAbs().maxCoeff() <= 1.5);
    pos = pos || w(1) > 0;
    neg = neg || w(1) < 0;
  }
  CHECK((pos && neg));
  CHECK_THROWS(test_frequencies(2, 5, 0.05));
}

TEST_CASE("quadrature helpers") {
  const Grid g{2, 128, 16.0};
  const GridFunction blob = gaussian_blob(g, Vec{{0.3, 0.5}}, 0.2, Vec::Zero(2));
  const SpectralWindow w = v_window(blob, 1);
  CHECK(w.center(0) == doctest::Approx(0.3).epsilon(1e-6));
  // |blob|^2 has standard deviation sigma / sqrt(2)
  CHECK(w.spread(0) == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-4));
  const QuadratureScheme q = default_quadrature(dim2_family(0, 1).spec, w);
  const QuadratureScheme big = grown(q);
  CHECK(big.xi_axes[0].hi - big.xi_axes[0].lo == doctest::Approx(2 * (q.xi_axes[0].hi - q.xi_axes[0].lo)));
  const double step = (q.t_axes[0].hi - q.t_axes[0].lo) / (q.t_axes[0].count - 1);
  const double big_step = (big.t_axes[0].hi - big.t_axes[0].lo) / (big.t_axes[0].count - 1);
  CHECK(big_step == doctest::Approx(step));
}

TEST_CASE("E1 unimodularity report records both answers") {
  const UnimodularityReport agree = unimodularity_report(dim3_diag(0.0, -1.0, 1));
  CHECK(agree.max_deviation <= 1e-8);
  CHECK(agree.closed_form_unimodular);
  CHECK(agree.numeric_unimodular);
  CHECK(agree.reference_agrees);
  const UnimodularityReport differ = unimodularity_report(dim3_diag(0.5, -1.0, 1));
  CHECK(differ.closed_form_unimodular);
  CHECK(differ.reference_unimodular == std::optional<bool>(false));
  CHECK_FALSE(differ.reference_agrees);
  CHECK_FALSE(differ.reference_condition.empty());
}
