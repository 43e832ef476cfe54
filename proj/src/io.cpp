// SPDX-License-Identifier: Apache-2.0
#include "tcg/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tcg {

namespace {

Mat matrix_from_json(const Json& j, int n) {
  Mat m(n, n);
  if (!j.is_array()) throw std::invalid_argument("group spec: generator must be an array");
  if (j.size() == static_cast<std::size_t>(n) && j[0].is_array()) {
    for (int r = 0; r < n; ++r) {
      const auto& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("group spec: generator rows must have n entries");
      for (int c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
  }
  if (j.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("group spec: generator needs n*n entries");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = j[static_cast<std::size_t>(r * n + c)].get<double>();
  return m;
}

Json vecs(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Vec vec_from_json(const Json& j) {
  if (j.is_number()) return Vec::Constant(1, j.get<double>());
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GroupSpec group_spec_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    if (n < 1) throw std::invalid_argument("group spec: n must be positive");
    std::vector<Mat> gens;
    for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g, n));
    const std::string chart = j.value("chart", std::string("exp"));
    std::vector<Interval> box;
    if (j.contains("params_box"))
      for (const auto& b : j.at("params_box")) {
        if (!b.is_array() || b.size() != 2) throw std::invalid_argument("group spec: params_box entries are [lo, hi]");
        box.push_back({b[0].get<double>(), b[1].get<double>()});
      }
    return GroupSpec(n, k, gens, chart, closed_form_for(chart, gens), box);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("group spec: ") + e.what());
  }
}

GroupSpec read_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group spec " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return group_spec_from_json(j);
}

Json to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json to_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json to_json(const Axis& a) { return {{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}}; }

Json to_json(const GroupSpec& spec) {
  Json gens = Json::array();
  for (const auto& g : spec.generators()) {
    Json flat = Json::array();
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) flat.push_back(g(r, c));
    gens.push_back(flat);
  }
  Json box = Json::array();
  for (const auto& b : spec.params_box()) box.push_back(to_json(b));
  return {{"n", spec.n()}, {"k", spec.k()}, {"generators", gens}, {"chart", spec.chart_id()}, {"params_box", box}};
}

Json to_json(const QuadratureScheme& q) {
  Json xi = Json::array(), t = Json::array();
  for (const auto& a : q.xi_axes) xi.push_back(to_json(a));
  for (const auto& a : q.t_axes) t.push_back(to_json(a));
  return {{"rule", q.rule == Rule::Trapezoid ? "trapezoid" : "gauss-legendre"},
          {"xi_axes", xi},
          {"t_axes", t},
          {"tail_mass_bound", q.tail_mass_bound}};
}

Json to_json(const StabilizerReport& r) {
  return {{"dimension", r.dimension},   {"verdict", r.verdict},   {"free", r.free},
          {"box_scales", r.box_scales}, {"counts", r.counts},     {"solutions", vecs(r.solutions)}};
}

Json to_json(const OrbitReport& r) {
  Json orbits = Json::array();
  for (std::size_t i = 0; i < r.open_orbits.size(); ++i) {
    const auto& o = r.open_orbits[i];
    orbits.push_back({{"id", i},
                      {"representative", to_json(o.representative)},
                      {"region", o.region},
                      {"rank", o.rank},
                      {"seeds", o.seeds},
                      {"stabilizer", to_json(o.stabilizer)},
                      {"discrete_series", o.discrete_series}});
  }
  Json unreached = Json::array();
  for (const auto& u : r.unreached)
    unreached.push_back({{"seed", u.seed}, {"orbit", u.orbit}, {"residual", u.residual}});
  bool free = !r.open_orbits.empty();
  for (const auto& o : r.open_orbits) free = free && o.stabilizer.free;
  return {{"seed_count", r.seed_count},
          {"open_seed_count", r.open_seed_count},
          {"max_rank", r.max_rank},
          {"open_orbits", r.open_orbit_count()},
          {"all_free", free},
          {"orbits", orbits},
          {"unreached", unreached},
          {"transversal", vecs(r.transversal)}};
}

Json to_json(const ExpectedStructure& s) {
  Json j = {{"translation_complete", s.translation_complete},
            {"open_orbits", s.open_orbits},
            {"orbit_regions", s.orbit_regions},
            {"free", s.free},
            {"compact_stabilizers", s.compact_stabilizers},
            {"stabilizer_dim", s.stabilizer_dim},
            {"discrete_series", s.discrete_series},
            {"admissibility", s.admissibility},
            {"unimodular_condition", s.unimodular_condition}};
  j["unimodular"] = s.unimodular ? Json(*s.unimodular) : Json(nullptr);
  return j;
}

Json to_json(const CatalogEntry& e) {
  Json j = to_json(e.spec);
  j["id"] = e.id;
  j["params"] = e.params;
  j["expected"] = to_json(e.expected);
  j["transversal_dim"] = e.transversal ? Json(e.transversal->dim) : Json(nullptr);
  return j;
}

Json to_json(const AdmissibilityReport& r) {
  Json opts = {{"spread_tol", r.options.spread_tol},
               {"vanish_rel", r.options.vanish_rel},
               {"growth_tol", r.options.growth_tol},
               {"certify_stabilizers", r.options.certify_stabilizers},
               {"orbit_chart", r.options.chart.has_value()}};
  std::vector<Json> phi;
  for (double v : r.phi) phi.push_back(number(v));
  return {{"verdict", r.verdict},
          {"reason", r.reason},
          {"min", number(r.min)},
          {"max", number(r.max)},
          {"mean", number(r.mean)},
          {"spread", number(r.spread)},
          {"c_psi", number(r.c_psi)},
          {"boundary_mass", number(r.boundary_mass)},
          {"box_growth", number(r.box_growth)},
          {"open_orbits_sampled", r.open_orbits_sampled},
          {"compact_stabilizers", r.compact_stabilizers},
          {"strong_admissibility", r.strong_admissibility},
          {"mass_growth_slope", number(r.mass_growth_slope)},
          {"frequencies", vecs(r.frequencies)},
          {"phi", phi},
          {"options", opts},
          {"quadrature", to_json(r.quadrature)}};
}

Json to_json(const ScalingCheck& c) {
  return {{"ratio", number(c.ratio)},
          {"expected", c.expected},
          {"mass", number(c.mass)},
          {"scaled_mass", number(c.scaled_mass)},
          {"solved", c.solved}};
}

Json to_json(const UnimodularityReport& r) {
  Json j = {{"parameters", vecs(r.parameters)},
            {"closed_form", r.closed_form},
            {"numeric", r.numeric},
            {"max_deviation", r.max_deviation},
            {"closed_form_unimodular", r.closed_form_unimodular},
            {"numeric_unimodular", r.numeric_unimodular},
            {"reference_condition", r.reference_condition},
            {"reference_agrees", r.reference_agrees}};
  j["reference_unimodular"] = r.reference_unimodular ? Json(*r.reference_unimodular) : Json(nullptr);
  return j;
}

Json to_json(const EquivalenceReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"x", to_json(p.x)},
                   {"xi", to_json(p.xi)},
                   {"wigner", number(p.wigner_side)},
                   {"calderon", number(p.calderon_side)},
                   {"rel_dev", number(p.rel_dev)}});
  return {{"points", pts}, {"max_rel_dev", number(r.max_rel_dev)}};
}

Json to_json(const WeightedNorm& w) {
  return {{"value", number(w.value)},
          {"thresholds", w.thresholds},
          {"partial_sums", w.partial_sums},
          {"trend", w.trend}};
}

}  // namespace tcg
