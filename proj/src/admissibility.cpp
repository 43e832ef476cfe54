// SPDX-License-Identifier: Apache-2.0
#include "tcg/admissibility.hpp"

#include "tcg/dual_action.hpp"
#include "tcg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tcg {

SpectralWindow v_window(const GridFunction& psihat, int k) {
  if (psihat.domain() != Domain::Frequency)
    throw std::invalid_argument("v_window: expects a frequency-domain input");
  SpectralWindow w{Vec::Zero(k), Vec::Zero(k)};
  if (k == 0) return w;
  double total = 0.0;
  Vec m1 = Vec::Zero(k), m2 = Vec::Zero(k);
  for (std::size_t i = 0; i < psihat.size(); ++i) {
    const double p = std::norm(psihat[i]);
    if (p == 0.0) continue;
    const Vec v = psihat.node(i).head(k);
    total += p;
    m1 += p * v;
    m2 += p * v.cwiseProduct(v);
  }
  const double floor = psihat.grid().freq_spacing();
  if (total == 0.0) {
    w.spread.setConstant(floor);
    return w;
  }
  w.center = m1 / total;
  for (int i = 0; i < k; ++i)
    w.spread(i) = std::max(floor, std::sqrt(std::max(0.0, m2(i) / total - w.center(i) * w.center(i))));
  return w;
}

QuadratureScheme default_quadrature(const GroupSpec& spec, const SpectralWindow& w) {
  QuadratureScheme q;
  q.rule = Rule::Trapezoid;
  for (int i = 0; i < spec.k(); ++i)
    q.xi_axes.push_back({w.center(i) - 8.0 * w.spread(i), w.center(i) + 8.0 * w.spread(i), 32});
  for (int j = 0; j < spec.d(); ++j) q.t_axes.push_back({-6.0, 6.0, 48});
  return q;
}

QuadratureScheme default_quadrature(const GroupSpec& spec, const GridFunction& psihat) {
  return default_quadrature(spec, v_window(psihat, spec.k()));
}

QuadratureScheme grown(const QuadratureScheme& quad, double factor) {
  QuadratureScheme q = quad;
  auto grow = [factor](Axis a) {
    const double c = 0.5 * (a.lo + a.hi), h = 0.5 * (a.hi - a.lo);
    a.lo = c - factor * h;
    a.hi = c + factor * h;
    a.count = static_cast<int>(std::lround((a.count - 1) * factor)) + 1;
    return a;
  };
  for (auto& a : q.xi_axes) a = grow(a);
  for (auto& a : q.t_axes) a = grow(a);
  return q;
}

SpectrumFn spectrum_of(const GridFunction& psihat) {
  auto sampler = std::make_shared<const SpectralSampler>(psihat);
  return [sampler](const Vec& nu) { return (*sampler)(nu); };
}

PhiEvaluator::PhiEvaluator(const GroupSpec& spec, SpectrumFn psihat, QuadratureScheme quad)
    : psihat_(std::move(psihat)), quad_(std::move(quad)) {
  prepare(spec);
}

PhiEvaluator::PhiEvaluator(const GroupSpec& spec, const GridFunction& psihat, QuadratureScheme quad)
    : psihat_(spectrum_of(psihat)), quad_(std::move(quad)) {
  if (psihat.grid().n != spec.n()) throw std::invalid_argument("phi: grid and group dimensions differ");
  prepare(spec);
}

void PhiEvaluator::prepare(const GroupSpec& spec) {
  n_ = spec.n();
  k_ = spec.k();
  if (static_cast<int>(quad_.xi_axes.size()) != k_ || static_cast<int>(quad_.t_axes.size()) != spec.d())
    throw std::invalid_argument("phi: quadrature needs k window axes and d dilation axes");
  u_rule_ = tensor_rule(quad_.rule, quad_.xi_axes);
  t_rule_ = tensor_rule(quad_.rule, quad_.t_axes);
  for (std::size_t i = 0; i < t_rule_.size(); ++i) {
    const Vec& t = t_rule_.nodes[i];
    h_transposed_.push_back(dilation_matrix(spec, t).transpose());
    t_weight_.push_back(t_rule_.weights[i] * spec.haar_h(t));
  }
}

PhiSample PhiEvaluator::operator()(const Vec& omega) const {
  if (omega.size() != n_) throw std::invalid_argument("phi: frequency dimension mismatch");
  double total = 0.0, edge = 0.0;
  Vec point(n_);
  for (std::size_t ti = 0; ti < t_rule_.size(); ++ti) {
    point = h_transposed_[ti] * omega;
    double inner = 0.0, inner_edge = 0.0;
    for (std::size_t ui = 0; ui < u_rule_.size(); ++ui) {
      point.head(k_) = u_rule_.nodes[ui];
      const double v = u_rule_.weights[ui] * std::norm(psihat_(point));
      inner += v;
      if (u_rule_.boundary[ui]) inner_edge += v;
    }
    total += t_weight_[ti] * inner;
    edge += t_weight_[ti] * (t_rule_.boundary[ti] ? inner : inner_edge);
  }
  PhiSample s;
  s.value = total;
  s.boundary_mass = total > 0.0 ? edge / total : 0.0;
  s.inconclusive = s.boundary_mass > quad_.tail_mass_bound;
  return s;
}

double phi_psi(const GroupSpec& spec, const GridFunction& psihat, const Vec& omega,
               const QuadratureScheme& quad) {
  return PhiEvaluator(spec, psihat, quad)(omega).value;
}

std::vector<Vec> test_frequencies(int n, int count, double radius, double margin, unsigned seed) {
  if (radius <= margin) throw std::invalid_argument("test_frequencies: radius must exceed margin");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::uniform_real_distribution<double> last(margin, radius);
  std::bernoulli_distribution sign(0.5);
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    Vec w(n);
    for (int a = 0; a + 1 < n; ++a) w(a) = coord(rng);
    w(n - 1) = (sign(rng) ? 1.0 : -1.0) * last(rng);
    out.push_back(w);
  }
  return out;
}

MassGrowth orbit_mass_growth(const GroupSpec& spec, const TransversalChart& chart,
                             const std::vector<Interval>& box, int steps) {
  MassGrowth g;
  for (int j = 0; j <= steps; ++j) {
    const ScalingCheck s = orbit_measure_scaling_check(spec, chart, std::ldexp(1.0, j), box);
    g.mass.push_back(j == 0 ? s.mass : s.scaled_mass);
  }
  // least-squares slope of log2 mass against j
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = steps + 1;
  for (int j = 0; j < m; ++j) {
    const double y = std::log2(std::max(g.mass[static_cast<std::size_t>(j)], 1e-300));
    sx += j;
    sy += y;
    sxx += j * j;
    sxy += j * y;
  }
  const double den = m * sxx - sx * sx;
  g.slope = den > 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  return g;
}

AdmissibilityReport admissibility_report(const GroupSpec& spec, const GridFunction& psihat,
                                         const std::vector<Vec>& freqs,
                                         const QuadratureScheme& quad,
                                         const AdmissibilityOptions& opts) {
  if (freqs.empty()) throw std::invalid_argument("admissibility: no test frequencies");
  AdmissibilityReport rep;
  rep.frequencies = freqs;
  rep.options = opts;
  rep.quadrature = quad;

  const SpectrumFn fn = spectrum_of(psihat);
  const PhiEvaluator ev(spec, fn, quad);
  const PhiEvaluator big(spec, fn, grown(quad));
  rep.phi.resize(freqs.size());
  std::vector<double> phi_big(freqs.size()), edge(freqs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const PhiSample s = ev(freqs[i]);
    rep.phi[i] = s.value;
    edge[i] = s.boundary_mass;
    phi_big[i] = big(freqs[i]).value;
  }
  rep.min = *std::min_element(rep.phi.begin(), rep.phi.end());
  rep.max = *std::max_element(rep.phi.begin(), rep.phi.end());
  rep.mean = std::accumulate(rep.phi.begin(), rep.phi.end(), 0.0) / static_cast<double>(rep.phi.size());
  rep.spread = rep.mean > 0.0 ? (rep.max - rep.min) / rep.mean : INFINITY;
  rep.c_psi = rep.mean;
  // ratios on numerically vanishing samples are interpolation noise
  const double noise = opts.vanish_rel * rep.max;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (!(rep.phi[i] > noise) || rep.phi[i] <= 0.0) continue;
    rep.boundary_mass = std::max(rep.boundary_mass, edge[i]);
    rep.box_growth = std::max(rep.box_growth, std::abs(phi_big[i] / rep.phi[i] - 1.0));
  }

  rep.open_orbits_sampled = true;
  rep.compact_stabilizers = opts.certify_stabilizers;
  for (const auto& w : freqs) {
    if (!is_orbit_open(spec, w)) {
      rep.open_orbits_sampled = false;
      rep.compact_stabilizers = false;
      break;
    }
    if (opts.certify_stabilizers &&
        stabilizer_scan(spec, w, default_stabilizer_box(spec)).verdict != "compact") {
      rep.compact_stabilizers = false;
    }
  }

  if (!opts.chart) {
    rep.strong_admissibility = "not evaluated";
  } else if (!is_unimodular(spec, spec.params_box())) {
    rep.strong_admissibility = "not applicable";
  } else {
    const std::vector<Interval> box(static_cast<std::size_t>(opts.chart->dim), Interval{0.5, 1.5});
    const MassGrowth g = orbit_mass_growth(spec, *opts.chart, box);
    rep.mass_growth_slope = g.slope;
    rep.strong_admissibility = g.slope > 0.5 ? "rejected" : "not rejected";
  }

  if (rep.boundary_mass > quad.tail_mass_bound) {
    rep.verdict = "inconclusive";
    rep.reason = "quadrature boundary mass above the declared bound";
  } else if (rep.box_growth > opts.growth_tol) {
    rep.verdict = "not-admissible";
    rep.reason = "Phi grows with the quadrature box";
  } else if (rep.max <= 0.0 || rep.min < opts.vanish_rel * rep.max) {
    rep.verdict = "not-admissible";
    rep.reason = "Phi vanishes at a sampled frequency";
  } else if (rep.spread <= opts.spread_tol && rep.open_orbits_sampled && rep.compact_stabilizers) {
    rep.verdict = "admissible";
    rep.reason = "Phi constant within tolerance on open orbits with compact stabilizers";
  } else {
    rep.verdict = "weakly-admissible";
    rep.reason = rep.spread > opts.spread_tol ? "Phi bounded and positive but not constant"
                                               : "Phi constant but orbit certificates missing";
  }
  return rep;
}

GridFunction normalize_admissible(const GroupSpec& spec, const GridFunction& psihat0,
                                  const QuadratureScheme& quad) {
  if (psihat0.domain() != Domain::Frequency)
    throw std::invalid_argument("normalize: expects a frequency-domain input");
  const PhiEvaluator ev(spec, psihat0, quad);
  double amax = 0.0;
  for (const auto& v : psihat0.values()) amax = std::max(amax, std::norm(v));
  GridFunction out(psihat0.grid(), Domain::Frequency);
  if (amax == 0.0) return out;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < psihat0.size(); ++i)
    if (std::norm(psihat0[i]) > 1e-16 * amax) active.push_back(i);
  std::vector<double> phi(active.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t j = 0; j < active.size(); ++j) phi[j] = ev(psihat0.node(active[j])).value;

  const double pmax = phi.empty() ? 0.0 : *std::max_element(phi.begin(), phi.end());
  for (std::size_t j = 0; j < active.size(); ++j) {
    if (!(phi[j] >= 1e-12 * pmax) || pmax <= 0.0)
      throw std::domain_error("normalize: Phi vanishes where psihat0 does not");
    out[active[j]] = psihat0[active[j]] / std::sqrt(phi[j]);
  }
  return out;
}

double weight_Psi(const GroupSpec& spec, const Vec& eta, const Vec& gamma_base) {
  const SolveResult r = solve_act(spec, gamma_base, eta);
  if (!r.converged) throw std::runtime_error("weight_Psi: eta is not on the orbit of gamma_base");
  const Mat h = dilation_matrix(spec, r.t);
  return det_restricted(spec, h) / (spec.delta_h(r.t) * std::abs(h.determinant()));
}

std::string psi_validation_note(const GroupSpec& spec) {
  if (spec.chart_id() == "dim2") return "checked against the closed form 1/eta_2";
  return "validated numerically, not by a displayed closed form";
}

WeightedNorm weighted_norm_check(const GridFunction& psihat, std::span<const double> psi_values) {
  if (psihat.domain() != Domain::Frequency)
    throw std::invalid_argument("weighted_norm_check: expects a frequency-domain input");
  if (psi_values.size() != psihat.size())
    throw std::invalid_argument("weighted_norm_check: one weight per node required");
  WeightedNorm out;
  const double cell = psihat.cell();
  std::vector<std::pair<double, double>> terms;  // (Psi, contribution)
  for (std::size_t i = 0; i < psihat.size(); ++i) {
    const double w = psi_values[i];
    const double p = std::norm(psihat[i]);
    if (!std::isfinite(w) || w <= 0.0 || p == 0.0) continue;
    terms.emplace_back(w, p * w * cell);
  }
  if (terms.empty()) {
    out.trend = "saturates";
    return out;
  }
  std::sort(terms.begin(), terms.end());
  const double lo = terms.front().first, hi = terms.back().first;
  double m = lo;
  std::size_t idx = 0;
  double acc = 0.0;
  while (true) {
    while (idx < terms.size() && terms[idx].first <= m * (1.0 + 1e-12)) acc += terms[idx++].second;
    out.thresholds.push_back(m);
    out.partial_sums.push_back(acc);
    if (m >= hi) break;
    m *= 2.0;
  }
  out.value = acc;
  // increments over dyadic shells decay geometrically when the integral converges
  const std::size_t s = out.partial_sums.size();
  out.trend = "saturates";
  if (s >= 3) {
    const double last = out.partial_sums[s - 1] - out.partial_sums[s - 2];
    const double prev = out.partial_sums[s - 2] - out.partial_sums[s - 3];
    if (prev > 0.0 && last > 0.75 * prev) out.trend = "grows";
  }
  return out;
}

UnimodularityReport unimodularity_report(const CatalogEntry& entry, int samples_per_axis) {
  const GroupSpec& spec = entry.spec;
  UnimodularityReport rep;
  rep.reference_condition = entry.expected.unimodular_condition;
  rep.reference_unimodular = entry.expected.unimodular;
  std::vector<Axis> axes(static_cast<std::size_t>(spec.d()), Axis{-2.0, 2.0, samples_per_axis});
  const TensorRule grid = tensor_rule(Rule::Trapezoid, axes);
  rep.closed_form_unimodular = true;
  rep.numeric_unimodular = true;
  for (const Vec& t : grid.nodes) {
    GroupElement g = identity(spec);
    g.x.setConstant(0.3);
    g.xi.setConstant(-0.2);
    g.t = t;
    const double closed = delta_g_closed(spec, t);
    const double numeric = delta_g_numeric(spec, g);
    rep.parameters.push_back(t);
    rep.closed_form.push_back(closed);
    rep.numeric.push_back(numeric);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(closed - numeric));
    if (std::abs(closed - 1.0) > 1e-8) rep.closed_form_unimodular = false;
    if (std::abs(numeric - 1.0) > 1e-8) rep.numeric_unimodular = false;
  }
  rep.reference_agrees =
      rep.reference_unimodular.has_value() && *rep.reference_unimodular == rep.closed_form_unimodular;
  return rep;
}

}  // namespace tcg
