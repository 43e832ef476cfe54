// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/catalog.hpp"
#include "tcg/grid.hpp"
#include "tcg/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tcg {

using SpectrumFn = std::function<cplx(const Vec&)>;

// RMS window of |psihat|^2 along the V coordinates.
struct SpectralWindow {
  Vec center;
  Vec spread;
};
SpectralWindow v_window(const GridFunction& psihat, int k);

// xi axes: center +- 8 RMS spreads (32 nodes); t axes: [-6, 6] with 48 nodes.
QuadratureScheme default_quadrature(const GroupSpec& spec, const SpectralWindow& w);
QuadratureScheme default_quadrature(const GroupSpec& spec, const GridFunction& psihat);

// Doubles every axis about its centre, keeping the node spacing.
QuadratureScheme grown(const QuadratureScheme& quad, double factor = 2.0);

struct PhiSample {
  double value = 0.0;
  double boundary_mass = 0.0;  // fraction of the integrand on edge nodes
  bool inconclusive = false;
};

// Phi(omega) = int_H int_V |psihat(h^T(omega - xi))|^2 |det h_11| dxi dh, computed
// after substituting u = V-part of h^T(omega - xi). The xi axes of the scheme are
// the window of u.
class PhiEvaluator {
 public:
  PhiEvaluator(const GroupSpec& spec, SpectrumFn psihat, QuadratureScheme quad);
  PhiEvaluator(const GroupSpec& spec, const GridFunction& psihat, QuadratureScheme quad);

  PhiSample operator()(const Vec& omega) const;
  const QuadratureScheme& quadrature() const { return quad_; }

 private:
  void prepare(const GroupSpec& spec);

  SpectrumFn psihat_;
  QuadratureScheme quad_;
  int n_ = 0;
  int k_ = 0;
  TensorRule u_rule_;
  TensorRule t_rule_;
  std::vector<Mat> h_transposed_;
  std::vector<double> t_weight_;
};

// Bandlimited evaluator for a frequency-domain grid function.
SpectrumFn spectrum_of(const GridFunction& psihat);

double phi_psi(const GroupSpec& spec, const GridFunction& psihat, const Vec& omega,
               const QuadratureScheme& quad);

struct AdmissibilityOptions {
  double spread_tol = 0.02;
  double vanish_rel = 1e-10;
  double growth_tol = 0.01;
  bool certify_stabilizers = true;
  std::optional<TransversalChart> chart;  // enables the orbit-space mass probe
};

struct AdmissibilityReport {
  std::vector<Vec> frequencies;
  std::vector<double> phi;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread = 0.0;  // (max - min) / mean
  double c_psi = 0.0;
  double boundary_mass = 0.0;
  double box_growth = 0.0;  // max relative change of Phi under a doubled box
  bool open_orbits_sampled = false;
  bool compact_stabilizers = false;
  std::string strong_admissibility;  // rejected | not rejected | not applicable | not evaluated
  double mass_growth_slope = 0.0;
  std::string verdict;  // admissible | weakly-admissible | not-admissible | inconclusive
  std::string reason;
  AdmissibilityOptions options;
  QuadratureScheme quadrature;
};

AdmissibilityReport admissibility_report(const GroupSpec& spec, const GridFunction& psihat,
                                         const std::vector<Vec>& test_frequencies,
                                         const QuadratureScheme& quad,
                                         const AdmissibilityOptions& opts = {});

// Deterministic test frequencies inside the band with |omega_last| >= margin.
std::vector<Vec> test_frequencies(int n, int count, double radius, double margin = 0.1,
                                  unsigned seed = 11);

// psihat0 / sqrt(Phi) on every node where psihat0 is non-negligible.
GridFunction normalize_admissible(const GroupSpec& spec, const GridFunction& psihat0,
                                  const QuadratureScheme& quad);

// Orbit-space mass lambda-bar(2^j B), j = 0..steps, and its log2 slope per step.
struct MassGrowth {
  std::vector<double> mass;
  double slope = 0.0;
};
MassGrowth orbit_mass_growth(const GroupSpec& spec, const TransversalChart& chart,
                             const std::vector<Interval>& box, int steps = 3);

// Delta_{V x| H^T}(xi, h) / |det h| at the (xi, t) with eta = h^T(gamma_base - xi).
double weight_Psi(const GroupSpec& spec, const Vec& eta, const Vec& gamma_base);
// Whether Psi is checked against a closed form for this group.
std::string psi_validation_note(const GroupSpec& spec);

struct WeightedNorm {
  double value = 0.0;
  std::vector<double> thresholds;
  std::vector<double> partial_sums;
  std::string trend;  // grows | saturates
};

// Grid quadrature of int |psihat|^2 Psi over nodes where Psi is finite and positive,
// with partial sums over the nested sets {Psi <= M_j}.
WeightedNorm weighted_norm_check(const GridFunction& psihat, std::span<const double> psi_values);

struct UnimodularityReport {
  std::vector<Vec> parameters;
  std::vector<double> closed_form;
  std::vector<double> numeric;
  double max_deviation = 0.0;
  bool closed_form_unimodular = false;
  bool numeric_unimodular = false;
  std::string reference_condition;
  std::optional<bool> reference_unimodular;
  bool reference_agrees = false;
};

UnimodularityReport unimodularity_report(const CatalogEntry& entry, int samples_per_axis = 5);

}  // namespace tcg
