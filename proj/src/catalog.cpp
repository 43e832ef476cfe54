// SPDX-License-Identifier: Apache-2.0
#include "tcg/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace tcg {

double dim2_f(double a, double c, double t) {
  const double b = a - 1.0;
  const double tail = (b == 0.0) ? t : std::expm1(t * b) / b;
  return c * std::exp(t) * tail;
}

namespace {

Mat mat3(std::initializer_list<double> v) {
  Mat m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

Mat diag_exp(const std::vector<Mat>& gens, const Vec& t) {
  const Eigen::Index n = gens.front().rows();
  Vec e = Vec::Zero(n);
  for (std::size_t i = 0; i < gens.size(); ++i) e += t(static_cast<Eigen::Index>(i)) * gens[i].diagonal();
  return e.array().exp().matrix().asDiagonal();
}

ExpectedStructure open_free(int orbits, std::vector<std::string> regions) {
  ExpectedStructure e;
  e.open_orbits = orbits;
  e.orbit_regions = std::move(regions);
  e.free = true;
  e.compact_stabilizers = true;
  e.stabilizer_dim = 0;
  e.discrete_series = true;
  e.admissibility = "admissible";
  e.unimodular = false;
  e.unimodular_condition = "never";
  return e;
}

ExpectedStructure not_invariant() {
  ExpectedStructure e;
  e.translation_complete = false;
  e.open_orbits = 0;
  e.admissibility = "not-admissible";
  return e;
}

double get(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int which(double v) {
  if (v != 1.0 && v != 2.0) throw std::invalid_argument("catalog: V must be 1 or 2");
  return static_cast<int>(v);
}

}  // namespace

ChartFn closed_form_for(const std::string& chart_id, const std::vector<Mat>& gens) {
  if (gens.empty()) return {};
  if (chart_id == "dim2") {
    const double a = gens[0](0, 0);
    const double c = gens[0](1, 0);
    return [a, c](const Vec& t) {
      Mat h(2, 2);
      h << std::exp(t(0) * a), 0.0, dim2_f(a, c, t(0)), std::exp(t(0));
      return h;
    };
  }
  if (chart_id == "E1" || chart_id == "E4" || chart_id == "affine1d" || chart_id == "diag")
    return [gens](const Vec& t) { return diag_exp(gens, t); };
  if (chart_id == "E3") {
    const double alpha = gens[0](0, 0);
    const double beta = gens[0](2, 2);
    return [alpha, beta](const Vec& t) {
      const double x = t(0);
      const double e = std::exp(alpha * x);
      return mat3({e, x * e, 0.0, 0.0, e, 0.0, 0.0, 0.0, std::exp(beta * x)});
    };
  }
  if (chart_id == "E2") {
    const double alpha = gens[0](0, 0);
    return [alpha](const Vec& t) {
      const double x = t(0);
      const double e = std::exp(alpha * x);
      return mat3({e * std::cos(x), e * std::sin(x), 0.0, -e * std::sin(x), e * std::cos(x), 0.0,
                   0.0, 0.0, std::exp(x)});
    };
  }
  return {};
}

CatalogEntry dim2_family(double a, double c) {
  Mat x(2, 2);
  x << a, 0.0, c, 1.0;
  std::vector<Mat> gens{x};
  GroupSpec spec(2, 1, gens, "dim2", closed_form_for("dim2", gens));
  CatalogEntry e{"dim2", {{"a", a}, {"c", c}}, spec, open_free(2, {"R x R+", "R x R-"}), {}};
  e.transversal = TransversalChart{
      0, {[](const Vec&) { return Vec{{0.0, 1.0}}; }, [](const Vec&) { return Vec{{0.0, -1.0}}; }}};
  return e;
}

CatalogEntry dim3_diag(double alpha, double beta, int which_v) {
  if (beta == 0.0) throw std::invalid_argument("E1: beta must be nonzero");
  if (which_v != 1 && which_v != 2) throw std::invalid_argument("E1: V must be 1 or 2");
  std::vector<Mat> gens{mat3({alpha, 0, 0, 0, beta, 0, 0, 0, 1})};
  GroupSpec spec(3, which_v, gens, "E1", closed_form_for("E1", gens));
  CatalogEntry e{"E1", {{"alpha", alpha}, {"beta", beta}, {"V", double(which_v)}}, spec, {}, {}};
  if (which_v == 1) {
    ExpectedStructure s;
    s.open_orbits = 0;
    s.orbit_regions = {};
    s.free = true;
    s.compact_stabilizers = true;
    s.stabilizer_dim = 0;
    s.discrete_series = false;
    s.admissibility = "weakly-admissible";
    s.unimodular_condition = "alpha + beta == -1";
    s.unimodular = (alpha + beta == -1.0);
    e.expected = s;
    e.transversal = TransversalChart{1,
                                     {[](const Vec& c) { return Vec{{0.0, 1.0, c(0)}}; },
                                      [](const Vec& c) { return Vec{{0.0, -1.0, c(0)}}; }}};
  } else {
    e.expected = open_free(4, {"R x +R+ x +R+", "R x +R+ x -R+", "R x -R+ x +R+", "R x -R+ x -R+"});
  }
  return e;
}

CatalogEntry dim3_jordan(double alpha, double beta, int which_v) {
  if (beta == 0.0) throw std::invalid_argument("E3: beta must be nonzero");
  if (which_v != 1 && which_v != 2) throw std::invalid_argument("E3: V must be 1 or 2");
  std::vector<Mat> gens{mat3({alpha, 1, 0, 0, alpha, 0, 0, 0, beta})};
  GroupSpec spec(3, which_v, gens, "E3", closed_form_for("E3", gens));
  CatalogEntry e{"E3", {{"alpha", alpha}, {"beta", beta}, {"V", double(which_v)}}, spec, {}, {}};
  if (which_v == 1) {
    e.expected = not_invariant();
  } else {
    e.expected = open_free(2, {"R^2 x R+", "R^2 x -R+"});
    e.transversal = TransversalChart{0,
                                     {[](const Vec&) { return Vec{{0.0, 0.0, 1.0}}; },
                                      [](const Vec&) { return Vec{{0.0, 0.0, -1.0}}; }}};
  }
  return e;
}

CatalogEntry dim3_twoparam(double alpha, int which_v) {
  if (which_v != 1 && which_v != 2) throw std::invalid_argument("E4: V must be 1 or 2");
  std::vector<Mat> gens{mat3({alpha, 0, 0, 0, 1, 0, 0, 0, 0}), mat3({0, 0, 0, 0, 0, 0, 0, 0, 1})};
  GroupSpec spec(3, which_v, gens, "E4", closed_form_for("E4", gens));
  CatalogEntry e{"E4", {{"alpha", alpha}, {"V", double(which_v)}}, spec, {}, {}};
  if (which_v == 1) {
    e.expected = open_free(4, {"R x +R+ x +R+", "R x +R+ x -R+", "R x -R+ x +R+", "R x -R+ x -R+"});
  } else {
    ExpectedStructure s;
    s.open_orbits = 2;
    s.orbit_regions = {"R^2 x R+", "R^2 x -R+"};
    s.free = false;
    s.compact_stabilizers = false;
    s.stabilizer_dim = 1;
    s.discrete_series = false;
    s.admissibility = "not-admissible";
    s.unimodular_condition = "never";
    s.unimodular = false;
    e.expected = s;
  }
  return e;
}

CatalogEntry dim3_rotation(double alpha, int which_v) {
  if (which_v != 1 && which_v != 2) throw std::invalid_argument("E2: V must be 1 or 2");
  std::vector<Mat> gens{mat3({alpha, 1, 0, -1, alpha, 0, 0, 0, 1})};
  GroupSpec spec(3, which_v, gens, "E2", closed_form_for("E2", gens));
  CatalogEntry e{"E2", {{"alpha", alpha}, {"V", double(which_v)}}, spec, {}, {}};
  if (which_v == 1) {
    e.expected = not_invariant();
  } else {
    e.expected = open_free(2, {"R^2 x R+", "R^2 x -R+"});
    e.transversal = TransversalChart{0,
                                     {[](const Vec&) { return Vec{{0.0, 0.0, 1.0}}; },
                                      [](const Vec&) { return Vec{{0.0, 0.0, -1.0}}; }}};
  }
  return e;
}

CatalogEntry heisenberg(int n) {
  GroupSpec spec(n, n, {}, "exp");
  ExpectedStructure s;
  s.open_orbits = 1;
  s.orbit_regions = {"R^n"};
  s.discrete_series = true;
  s.admissibility = "admissible";
  s.unimodular_condition = "always";
  s.unimodular = true;
  CatalogEntry e{"heisenberg", {{"n", double(n)}}, spec, s, {}};
  e.transversal = TransversalChart{0, {[n](const Vec&) { return Vec(Vec::Zero(n)); }}};
  return e;
}

CatalogEntry proper_v(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("proper-v: need 0 < k < n");
  GroupSpec spec(n, k, {}, "exp");
  ExpectedStructure s;
  s.open_orbits = 0;
  s.orbit_regions = {};
  s.discrete_series = false;
  s.admissibility = "weakly-admissible";
  s.unimodular_condition = "always";
  s.unimodular = true;
  CatalogEntry e{"proper-v", {{"n", double(n)}, {"k", double(k)}}, spec, s, {}};
  e.transversal = TransversalChart{n - k, {[n, k](const Vec& c) {
                                     Vec g = Vec::Zero(n);
                                     g.tail(n - k) = c;
                                     return g;
                                   }}};
  return e;
}

CatalogEntry affine_1d() {
  std::vector<Mat> gens{Mat::Identity(1, 1)};
  GroupSpec spec(1, 0, gens, "affine1d", closed_form_for("affine1d", gens));
  CatalogEntry e{"affine1d", {}, spec, open_free(2, {"R+", "-R+"}), {}};
  e.transversal = TransversalChart{
      0, {[](const Vec&) { return Vec{{1.0}}; }, [](const Vec&) { return Vec{{-1.0}}; }}};
  return e;
}

std::vector<CatalogEntry> baselines() { return {heisenberg(2), proper_v(2, 1), affine_1d()}; }

std::vector<CatalogInfo> catalog_list() {
  return {
      {"dim2", "a=0,c=1", "V = R x {0}, X = [[a,0],[c,1]]; two free open orbits"},
      {"E1", "alpha=1,beta=2,V=2", "H = diag(e^{alpha x}, e^{beta x}, e^x)"},
      {"E3", "alpha=1,beta=1,V=2", "Jordan block (+) e^{beta x}"},
      {"E4", "alpha=1,V=1", "H = diag(e^{alpha x}, e^x, e^y), two parameters"},
      {"E2", "alpha=0,V=2", "rotation-scaling block (+) e^x"},
      {"heisenberg", "n=2", "V = R^n, trivial H"},
      {"proper-v", "n=2,k=1", "proper V, trivial H"},
      {"affine1d", "", "V = {0}, H = {e^t} on R"},
  };
}

CatalogEntry make_catalog_entry(const std::string& id, const std::map<std::string, double>& p) {
  if (id == "dim2") return dim2_family(get(p, "a", 0.0), get(p, "c", 1.0));
  if (id == "E1")
    return dim3_diag(get(p, "alpha", 1.0), get(p, "beta", 2.0), which(get(p, "V", 2.0)));
  if (id == "E3")
    return dim3_jordan(get(p, "alpha", 1.0), get(p, "beta", 1.0), which(get(p, "V", 2.0)));
  if (id == "E4") return dim3_twoparam(get(p, "alpha", 1.0), which(get(p, "V", 1.0)));
  if (id == "E2") {
    const double alpha = get(p, "alpha", 0.0);
    if (alpha != 0.0 && alpha != 1.0) throw std::invalid_argument("E2: alpha must be 0 or 1");
    return dim3_rotation(alpha, which(get(p, "V", 2.0)));
  }
  if (id == "heisenberg") return heisenberg(static_cast<int>(get(p, "n", 2.0)));
  if (id == "proper-v")
    return proper_v(static_cast<int>(get(p, "n", 2.0)), static_cast<int>(get(p, "k", 1.0)));
  if (id == "affine1d") return affine_1d();
  throw std::invalid_argument("unknown catalog id: " + id);
}

}  // namespace tcg
