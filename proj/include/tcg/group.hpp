// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tcg {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// A point (z, x, xi, t) of G. xi holds coordinates in V = R^k x {0}.
struct GroupElement {
  cplx z{1.0, 0.0};
  Vec x;
  Vec xi;
  Vec t;
};

using ChartFn = std::function<Mat(const Vec&)>;
using ScalarFn = std::function<double(const Vec&)>;

// G = T x R^n x V x H with V = R^k x {0} and H = { exp(sum t_i X_i) }.
// Immutable after construction.
class GroupSpec {
 public:
  GroupSpec(int n, int k, std::vector<Mat> generators, std::string chart_id = "exp",
            ChartFn closed_form = {}, std::vector<Interval> params_box = {});

  int n() const { return n_; }
  int k() const { return k_; }
  int d() const { return static_cast<int>(generators_.size()); }
  const std::vector<Mat>& generators() const { return generators_; }
  const std::string& chart_id() const { return chart_id_; }
  bool has_closed_form() const { return static_cast<bool>(closed_form_); }
  const ChartFn& closed_form() const { return closed_form_; }
  const std::vector<Interval>& params_box() const { return params_box_; }

  // Modular function and Haar density of H in t coordinates; both 1 by default.
  double delta_h(const Vec& t) const { return delta_h_ ? delta_h_(t) : 1.0; }
  double haar_h(const Vec& t) const { return haar_h_ ? haar_h_(t) : 1.0; }
  GroupSpec with_delta_h(ScalarFn delta_h, ScalarFn haar_h = {}) const;
  GroupSpec with_params_box(std::vector<Interval> box) const;

  // iota: V coordinates -> R^n.
  Vec embed_v(const Vec& xi) const;
  Mat generator_sum(const Vec& t) const;

 private:
  int n_;
  int k_;
  std::vector<Mat> generators_;
  std::string chart_id_;
  ChartFn closed_form_;
  std::vector<Interval> params_box_;
  ScalarFn delta_h_;
  ScalarFn haar_h_;
};

struct HaarWeights {
  double density = 1.0;           // left Haar density w.r.t. dz dx dxi dt
  double delta_h = 1.0;
  double delta_semidirect = 1.0;  // modular function of V x| H^T
  double delta_g = 1.0;           // closed form
  double delta_g_numeric = 1.0;   // right-translation rescaling of a box
  bool numeric_reliable = true;
};

GroupElement identity(const GroupSpec& spec);
void validate(const GroupSpec& spec, const GroupElement& g);

GroupElement multiply(const GroupSpec& spec, const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupSpec& spec, const GroupElement& g);

bool check_translation_complete(const GroupSpec& spec);

Mat dilation_matrix(const GroupSpec& spec, const Vec& t);

// |det h_11| where h_11 is the leading k x k block; requires h_12 = 0.
double det_restricted(const GroupSpec& spec, const Mat& h);

double haar_density(const GroupSpec& spec, const GroupElement& g);

double delta_semidirect(const GroupSpec& spec, const Vec& t);
double delta_g_closed(const GroupSpec& spec, const Vec& t);

// mu(E g0) / mu(E) for the box E = [-half, half]^(n+k+d), Gauss-Legendre with
// `nodes` points per axis.
double delta_g_numeric(const GroupSpec& spec, const GroupElement& g0, double half = 1.0,
                       int nodes = 3);

HaarWeights modular_functions(const GroupSpec& spec, const GroupElement& g);

bool is_unimodular(const GroupSpec& spec, const std::vector<Interval>& sample_box,
                   int samples_per_axis = 5);

}  // namespace tcg
