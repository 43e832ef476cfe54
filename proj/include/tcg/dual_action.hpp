// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/catalog.hpp"
#include "tcg/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcg {

// h(t)^T (gamma - iota(xi)).
Vec act(const GroupSpec& spec, const Vec& gamma, const Vec& xi, const Vec& t);

// n x (k+d) derivative of act in (xi, t) at the given parameters.
Mat act_jacobian(const GroupSpec& spec, const Vec& gamma, const Vec& xi, const Vec& t);

int jacobian_rank_at_identity(const GroupSpec& spec, const Vec& gamma);
bool is_orbit_open(const GroupSpec& spec, const Vec& gamma);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 100;
  // Dilation starting box; empty means the spec's params box.
  std::vector<Interval> t_box;
  int t_seeds_per_axis = 0;  // 0 picks by d
};

struct SolveResult {
  bool converged = false;
  Vec xi;
  Vec t;
  double residual = 0.0;
  int iterations = 0;
};

// Finds (xi, t) with act(from, xi, t) = to by multi-start damped Gauss-Newton.
SolveResult solve_act(const GroupSpec& spec, const Vec& from, const Vec& to,
                      const SolveOptions& opts = {});

// Stabilizer of gamma inside a box of (xi, t) coordinates.
struct StabilizerReport {
  std::vector<Vec> solutions;  // stacked (xi, t), from the largest box
  int dimension = 0;
  std::string verdict;  // compact | noncompact | inconclusive
  bool free = false;
  std::vector<double> box_scales;
  std::vector<int> counts;
};

StabilizerReport stabilizer_scan(const GroupSpec& spec, const Vec& gamma,
                                 const std::vector<Interval>& box, double tol = 1e-8);
// Default box: [-2, 2] per xi coordinate and per dilation parameter.
std::vector<Interval> default_stabilizer_box(const GroupSpec& spec);

struct OrbitClass {
  Vec representative;
  std::string region;  // sign pattern of the representative
  int rank = 0;
  std::vector<std::size_t> seeds;
  StabilizerReport stabilizer;
  bool discrete_series = false;
};

struct UnreachedPair {
  std::size_t seed = 0;
  std::size_t orbit = 0;
  double residual = 0.0;
};

struct OrbitReport {
  std::size_t seed_count = 0;
  std::size_t open_seed_count = 0;
  int max_rank = 0;
  std::vector<OrbitClass> open_orbits;
  std::vector<UnreachedPair> unreached;
  std::vector<Vec> transversal;
  int open_orbit_count() const { return static_cast<int>(open_orbits.size()); }
};

// Deterministic sign-region seeds: coordinates in {+-0.3, +-1.7} with a small jitter.
std::vector<Vec> default_seeds(int n, unsigned seed = 7);

OrbitReport classify_orbits(const GroupSpec& spec, const std::vector<Vec>& seeds);

// Samples the chart when present (continuous coordinates on [-c_half, c_half]),
// else one point per open orbit. Throws if two returned points share an orbit.
std::vector<Vec> build_transversal(const GroupSpec& spec, const OrbitReport& report,
                                   const std::optional<TransversalChart>& chart,
                                   int samples_per_axis = 5, double c_half = 2.0);

struct ScalingCheck {
  double ratio = 0.0;
  double expected = 0.0;  // |a|^(n - k)
  double mass = 0.0;      // orbit-space mass of the unscaled box
  double scaled_mass = 0.0;
  bool solved = true;
};

// lambda-bar(a B) / lambda-bar(B) for B a box of chart coordinates on every sheet.
ScalingCheck orbit_measure_scaling_check(const GroupSpec& spec, const TransversalChart& chart,
                                         double a, const std::vector<Interval>& box,
                                         int nodes_per_axis = 8);

struct ConjugatedSpec {
  GroupSpec spec;
  Mat intertwiner;  // wavelets transport through pi(1, 0, 0, g)
};

// Conjugates by g: generators g^-1 X g, V' = g^T V. v_basis (n x k) spans V;
// g^T V must equal R^k x {0} to 1e-10.
ConjugatedSpec conjugate_spec(int n, const Mat& v_basis, const std::vector<Mat>& generators,
                              const Mat& g);
ConjugatedSpec conjugate_spec(const GroupSpec& spec, const Mat& g);

}  // namespace tcg
