// SPDX-License-Identifier: Apache-2.0
#include "tcg/dual_action.hpp"

#include "tcg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace tcg {

Vec act(const GroupSpec& spec, const Vec& gamma, const Vec& xi, const Vec& t) {
  return dilation_matrix(spec, t).transpose() * (gamma - spec.embed_v(xi));
}

Mat act_jacobian(const GroupSpec& spec, const Vec& gamma, const Vec& xi, const Vec& t) {
  const int n = spec.n(), k = spec.k(), d = spec.d();
  const Mat ht = dilation_matrix(spec, t).transpose();
  const Vec image = ht * (gamma - spec.embed_v(xi));
  Mat jac(n, k + d);
  for (int i = 0; i < k; ++i) jac.col(i) = -ht.col(i);
  // generators commute with h, so d/dt_j h^T = X_j^T h^T
  for (int j = 0; j < d; ++j) jac.col(k + j) = spec.generators()[static_cast<std::size_t>(j)].transpose() * image;
  return jac;
}

int jacobian_rank_at_identity(const GroupSpec& spec, const Vec& gamma) {
  if (spec.k() + spec.d() == 0) return 0;
  return numerical_rank(act_jacobian(spec, gamma, Vec::Zero(spec.k()), Vec::Zero(spec.d())));
}

bool is_orbit_open(const GroupSpec& spec, const Vec& gamma) {
  return jacobian_rank_at_identity(spec, gamma) == spec.n();
}

namespace {

constexpr double kParamLimit = 60.0;

struct GnResult {
  Vec x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;

bool finite(const Vec& v) { return v.allFinite(); }

// Damped Gauss-Newton: minimum-norm steps with backtracking on the residual norm.
GnResult gauss_newton(const ResidualFn& res, const JacobianFn& jac, Vec x, double tol,
                      int max_iter) {
  GnResult out;
  Vec r = res(x);
  double rn = finite(r) ? r.norm() : INFINITY;
  int it = 0;
  for (; it < max_iter && rn > tol; ++it) {
    const Mat j = jac(x);
    const Vec step = Eigen::CompleteOrthogonalDecomposition<Mat>(j).solve(-r);
    if (!finite(step)) break;
    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
      const Vec cand = x + lambda * step;
      if (cand.cwiseAbs().maxCoeff() > kParamLimit * 100.0) continue;
      const Vec rc = res(cand);
      if (!finite(rc)) continue;
      const double rcn = rc.norm();
      if (rcn < rn) {
        x = cand;
        r = rc;
        rn = rcn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.x = x;
  out.residual = rn;
  out.iterations = it;
  out.converged = rn <= tol;
  return out;
}

std::vector<Vec> grid_points(const std::vector<Interval>& box, int per_axis) {
  if (box.empty()) return {Vec(0)};
  std::vector<Axis> axes;
  for (const auto& iv : box) axes.push_back({iv.lo, iv.hi, per_axis});
  auto pts = tensor_rule(Rule::Trapezoid, axes).nodes;
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Vec& a, const Vec& b) { return a.norm() < b.norm(); });
  return pts;
}

int default_t_seeds(int d) { return d <= 1 ? 13 : (d == 2 ? 7 : 4); }

// Best linear guess for xi given t: iota(xi) ~ from - h^{-T} to.
Vec xi_guess(const GroupSpec& spec, const Vec& from, const Vec& to, const Vec& t) {
  const Mat ht = dilation_matrix(spec, t).transpose();
  const Vec diff = from - ht.partialPivLu().solve(to);
  return diff.head(spec.k());
}

double residual_scale(const Vec& v) { return std::max(1.0, v.norm()); }

}  // namespace

SolveResult solve_act(const GroupSpec& spec, const Vec& from, const Vec& to,
                      const SolveOptions& opts) {
  const int k = spec.k(), d = spec.d();
  const std::vector<Interval> box = opts.t_box.empty() ? spec.params_box() : opts.t_box;
  const int per_axis = opts.t_seeds_per_axis > 0 ? opts.t_seeds_per_axis : default_t_seeds(d);
  const double tol = opts.tol * residual_scale(to);

  auto res = [&](const Vec& p) -> Vec {
    const Vec t = p.tail(d);
    if (d > 0 && t.cwiseAbs().maxCoeff() > kParamLimit) return Vec::Constant(spec.n(), INFINITY);
    return act(spec, from, p.head(k), t) - to;
  };
  auto jac = [&](const Vec& p) { return act_jacobian(spec, from, p.head(k), p.tail(d)); };

  SolveResult best;
  best.residual = INFINITY;
  for (const Vec& t0 : grid_points(box, per_axis)) {
    Vec p(k + d);
    p << xi_guess(spec, from, to, t0), t0;
    const GnResult r = gauss_newton(res, jac, p, tol, opts.max_iter);
    if (r.residual < best.residual) {
      best.converged = r.converged;
      best.xi = r.x.head(k);
      best.t = r.x.tail(d);
      best.residual = r.residual;
      best.iterations = r.iterations;
    }
    if (r.converged) break;
  }
  return best;
}

std::vector<Interval> default_stabilizer_box(const GroupSpec& spec) {
  return std::vector<Interval>(static_cast<std::size_t>(spec.k() + spec.d()), Interval{-2.0, 2.0});
}

StabilizerReport stabilizer_scan(const GroupSpec& spec, const Vec& gamma,
                                 const std::vector<Interval>& box, double tol) {
  const int k = spec.k(), d = spec.d(), m = k + d;
  if (static_cast<int>(box.size()) != m)
    throw std::invalid_argument("stabilizer_scan: box needs k + d intervals");
  StabilizerReport rep;
  rep.dimension = m - (m == 0 ? 0 : jacobian_rank_at_identity(spec, gamma));
  const double abs_tol = tol * residual_scale(gamma);
  const int per_axis = d <= 1 ? 9 : (d == 2 ? 5 : 3);

  auto res = [&](const Vec& p) -> Vec {
    const Vec t = p.tail(d);
    if (d > 0 && t.cwiseAbs().maxCoeff() > kParamLimit) return Vec::Constant(spec.n(), INFINITY);
    return act(spec, gamma, p.head(k), t) - gamma;
  };
  auto jac = [&](const Vec& p) { return act_jacobian(spec, gamma, p.head(k), p.tail(d)); };

  bool touches = false;
  for (double scale : {1.0, 2.0, 4.0}) {
    std::vector<Interval> sbox;
    for (const auto& iv : box) sbox.push_back({iv.lo * scale, iv.hi * scale});
    const std::vector<Interval> tbox(sbox.begin() + k, sbox.end());
    std::vector<Vec> found;
    touches = false;
    for (const Vec& t0 : grid_points(tbox, per_axis)) {
      Vec p(m);
      p << xi_guess(spec, gamma, gamma, t0), t0;
      const GnResult r = gauss_newton(res, jac, p, abs_tol, 100);
      if (!r.converged) continue;
      bool inside = true, edge = false;
      for (int i = 0; i < m; ++i) {
        const auto& iv = sbox[static_cast<std::size_t>(i)];
        const double slack = 1e-3 * iv.width();
        if (r.x(i) < iv.lo - 1e-9 || r.x(i) > iv.hi + 1e-9) inside = false;
        if (r.x(i) < iv.lo + slack || r.x(i) > iv.hi - slack) edge = true;
      }
      if (!inside) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Vec& q) {
        return (q - r.x).cwiseAbs().maxCoeff() <= 1e-6;
      });
      if (dup) continue;
      found.push_back(r.x);
      touches = touches || edge;
    }
    rep.box_scales.push_back(scale);
    rep.counts.push_back(static_cast<int>(found.size()));
    rep.solutions = std::move(found);
  }
  if (m == 0) {
    rep.verdict = "compact";
    rep.free = true;
    return rep;
  }
  if (rep.dimension >= 1) {
    rep.verdict = "noncompact";
  } else if (touches || rep.counts.back() > rep.counts[rep.counts.size() - 2]) {
    rep.verdict = "inconclusive";
  } else {
    rep.verdict = "compact";
  }
  rep.free = rep.dimension == 0 && rep.solutions.size() == 1 &&
             rep.solutions.front().cwiseAbs().maxCoeff() <= 1e-6;
  return rep;
}

std::vector<Vec> default_seeds(int n, unsigned seed) {
  static constexpr double kLevels[4] = {-1.7, -0.3, 0.3, 1.7};
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  std::vector<Vec> out;
  out.reserve(total);
  for (std::size_t s = 0; s < total; ++s) {
    Vec g(n);
    std::size_t rest = s;
    for (int a = n - 1; a >= 0; --a) {
      g(a) = kLevels[rest % 4] + jitter(rng);
      rest /= 4;
    }
    out.push_back(g);
  }
  return out;
}

namespace {

std::string sign_region(const Vec& g) {
  std::string s;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += g(i) > 0 ? "+" : (g(i) < 0 ? "-" : "0");
  }
  return s;
}

}  // namespace

OrbitReport classify_orbits(const GroupSpec& spec, const std::vector<Vec>& seeds) {
  OrbitReport rep;
  rep.seed_count = seeds.size();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const Vec& s = seeds[i];
    if (s.size() != spec.n()) throw std::invalid_argument("classify_orbits: seed dimension mismatch");
    const int rank = jacobian_rank_at_identity(spec, s);
    rep.max_rank = std::max(rep.max_rank, rank);
    if (rank != spec.n()) continue;
    ++rep.open_seed_count;
    bool placed = false;
    for (std::size_t c = 0; c < rep.open_orbits.size() && !placed; ++c) {
      const SolveResult r = solve_act(spec, rep.open_orbits[c].representative, s);
      if (r.converged) {
        rep.open_orbits[c].seeds.push_back(i);
        placed = true;
      } else {
        rep.unreached.push_back({i, c, r.residual});
      }
    }
    if (!placed) {
      OrbitClass oc;
      oc.representative = s;
      oc.region = sign_region(s);
      oc.rank = rank;
      oc.seeds.push_back(i);
      rep.open_orbits.push_back(std::move(oc));
    }
  }
  for (auto& oc : rep.open_orbits) {
    oc.stabilizer = stabilizer_scan(spec, oc.representative, default_stabilizer_box(spec));
    oc.discrete_series = oc.stabilizer.verdict == "compact";
  }
  for (const auto& oc : rep.open_orbits) rep.transversal.push_back(oc.representative);
  return rep;
}

std::vector<Vec> build_transversal(const GroupSpec& spec, const OrbitReport& report,
                                   const std::optional<TransversalChart>& chart,
                                   int samples_per_axis, double c_half) {
  std::vector<Vec> pts;
  if (chart) {
    const std::vector<Interval> cbox(static_cast<std::size_t>(chart->dim), Interval{-c_half, c_half});
    std::vector<Vec> cs;
    if (chart->dim == 0) {
      cs.push_back(Vec(0));
    } else {
      std::vector<Axis> axes;
      for (const auto& iv : cbox) axes.push_back({iv.lo, iv.hi, samples_per_axis});
      cs = tensor_rule(Rule::Trapezoid, axes).nodes;
    }
    for (const auto& sheet : chart->sheets)
      for (const auto& c : cs) pts.push_back(sheet(c));
  } else {
    pts = report.transversal;
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (solve_act(spec, pts[i], pts[j]).converged)
        throw std::runtime_error("build_transversal: representatives " + std::to_string(i) + " and " +
                                 std::to_string(j) + " lie in one orbit");
  return pts;
}

namespace {

Mat chart_derivative(const std::function<Vec(const Vec&)>& sheet, const Vec& c, int n) {
  const double h = 1e-6;
  Mat out(n, c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    Vec cp = c, cm = c;
    cp(i) += h;
    cm(i) -= h;
    out.col(i) = (sheet(cp) - sheet(cm)) / (2.0 * h);
  }
  return out;
}

// Orbit-space density: |det| of the map (c, xi, t) -> act(C(c), xi, t) at xi = 0, t = 0.
double orbit_density(const GroupSpec& spec, const std::function<Vec(const Vec&)>& sheet,
                     const Vec& c) {
  const int n = spec.n();
  const Vec g = sheet(c);
  Mat m(n, n);
  m.leftCols(c.size()) = chart_derivative(sheet, c, n);
  m.rightCols(spec.k() + spec.d()) = act_jacobian(spec, g, Vec::Zero(spec.k()), Vec::Zero(spec.d()));
  return std::abs(m.determinant());
}

struct SheetHit {
  int sheet = -1;
  Vec c;
};

// Chart coordinate of the orbit through target, searching all sheets.
SheetHit locate(const GroupSpec& spec, const TransversalChart& chart, const Vec& target,
                const std::vector<Vec>& c_starts, const std::vector<Interval>& t_box) {
  const int dim = chart.dim, k = spec.k(), d = spec.d();
  const double tol = 1e-11 * residual_scale(target);
  for (std::size_t s = 0; s < chart.sheets.size(); ++s) {
    const auto& sheet = chart.sheets[s];
    auto res = [&](const Vec& p) -> Vec {
      if (d > 0 && p.tail(d).cwiseAbs().maxCoeff() > kParamLimit) return Vec::Constant(spec.n(), INFINITY);
      return act(spec, sheet(p.head(dim)), p.segment(dim, k), p.tail(d)) - target;
    };
    auto jac = [&](const Vec& p) {
      Mat j(spec.n(), dim + k + d);
      const Vec c = p.head(dim);
      const Vec xi = p.segment(dim, k), t = p.tail(d);
      const Mat ht = dilation_matrix(spec, t).transpose();
      if (dim > 0) j.leftCols(dim) = ht * chart_derivative(sheet, c, spec.n());
      j.rightCols(k + d) = act_jacobian(spec, sheet(c), xi, t);
      return j;
    };
    for (const Vec& c0 : c_starts)
      for (const Vec& t0 : grid_points(t_box, default_t_seeds(d))) {
        Vec p(dim + k + d);
        p << c0, xi_guess(spec, sheet(c0), target, t0), t0;
        const GnResult r = gauss_newton(res, jac, p, tol, 100);
        if (r.converged) return {static_cast<int>(s), r.x.head(dim)};
      }
  }
  return {};
}

}  // namespace

ScalingCheck orbit_measure_scaling_check(const GroupSpec& spec, const TransversalChart& chart,
                                         double a, const std::vector<Interval>& box,
                                         int nodes_per_axis) {
  if (a == 0.0) throw std::invalid_argument("scaling check: a must be nonzero");
  if (chart.dim + spec.k() + spec.d() != spec.n())
    throw std::invalid_argument("scaling check: chart dimension must complement k + d");
  if (static_cast<int>(box.size()) != chart.dim)
    throw std::invalid_argument("scaling check: box needs one interval per chart coordinate");

  ScalingCheck out;
  out.expected = std::pow(std::abs(a), spec.n() - spec.k());
  std::vector<Axis> axes;
  for (const auto& iv : box) axes.push_back({iv.lo, iv.hi, nodes_per_axis});
  const TensorRule rule = tensor_rule(Rule::GaussLegendre, axes);
  const std::vector<Interval> t_box = spec.params_box();
  const double h = 1e-5;

  for (const auto& sheet : chart.sheets) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec& c = rule.nodes[q];
      out.mass += rule.weights[q] * orbit_density(spec, sheet, c);

      std::vector<Vec> starts{c * a, c * a * a, c, c / a};
      const SheetHit hit = locate(spec, chart, a * sheet(c), starts, t_box);
      if (hit.sheet < 0) {
        out.solved = false;
        continue;
      }
      Mat dc(chart.dim, chart.dim);
      for (int i = 0; i < chart.dim; ++i) {
        Vec cp = c, cm = c;
        cp(i) += h;
        cm(i) -= h;
        const SheetHit hp = locate(spec, chart, a * sheet(cp), {hit.c}, t_box);
        const SheetHit hm = locate(spec, chart, a * sheet(cm), {hit.c}, t_box);
        if (hp.sheet != hit.sheet || hm.sheet != hit.sheet) {
          out.solved = false;
          dc.col(i).setZero();
          continue;
        }
        dc.col(i) = (hp.c - hm.c) / (2.0 * h);
      }
      const double jac = chart.dim == 0 ? 1.0 : std::abs(dc.determinant());
      out.scaled_mass += rule.weights[q] *
                         orbit_density(spec, chart.sheets[static_cast<std::size_t>(hit.sheet)], hit.c) * jac;
    }
  }
  out.ratio = out.mass > 0.0 ? out.scaled_mass / out.mass : 0.0;
  return out;
}

ConjugatedSpec conjugate_spec(int n, const Mat& v_basis, const std::vector<Mat>& generators,
                              const Mat& g) {
  if (g.rows() != n || g.cols() != n) throw std::invalid_argument("conjugate_spec: g must be n x n");
  const Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw std::invalid_argument("conjugate_spec: g is singular");
  const int k = static_cast<int>(v_basis.cols());
  if (v_basis.rows() != n) throw std::invalid_argument("conjugate_spec: basis must have n rows");
  const Mat image = g.transpose() * v_basis;
  const double scale = std::max(1.0, image.cwiseAbs().maxCoeff());
  if (k < n && image.bottomRows(n - k).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("conjugate_spec: g^T V is not R^k x {0}");
  if (k > 0 && numerical_rank(image.topRows(k)) != k)
    throw std::invalid_argument("conjugate_spec: basis of V is degenerate");
  const Mat ginv = lu.inverse();
  std::vector<Mat> conj;
  for (const auto& x : generators) conj.push_back(ginv * x * g);
  GroupSpec spec(n, k, conj, "exp");
  if (!check_translation_complete(spec))
    throw std::invalid_argument("conjugate_spec: conjugated group is not translation complete");
  return {spec, g};
}

ConjugatedSpec conjugate_spec(const GroupSpec& spec, const Mat& g) {
  const Mat basis = Mat::Identity(spec.n(), spec.n()).leftCols(spec.k());
  ConjugatedSpec out = conjugate_spec(spec.n(), basis, spec.generators(), g);
  out.spec = out.spec.with_params_box(spec.params_box());
  return out;
}

}  // namespace tcg
