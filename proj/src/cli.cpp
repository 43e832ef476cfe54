// SPDX-License-Identifier: Apache-2.0
#include "tcg/cli.hpp"

#include "tcg/admissibility.hpp"
#include "tcg/catalog.hpp"
#include "tcg/dual_action.hpp"
#include "tcg/grid.hpp"
#include "tcg/gwt.hpp"
#include "tcg/io.hpp"
#include "tcg/wavelets.hpp"
#include "tcg/wigner.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace tcg {

namespace {

// Raised for anything the user can fix by changing flags or inputs.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string group_path;
  std::string catalog_id;
  std::vector<std::string> params;
  std::string grid;
  std::string quad_xi;
  std::string quad_t;
  std::optional<double> tol;
  std::string expect;
  std::string out_dir;
  std::string wavelet_path;
  std::string signal_path;
  std::string field_path;
  double c_psi = 1.0;
  bool normalize = false;
  bool json = false;
  std::string emit_id;
};

constexpr std::size_t kMaxFieldBytes = std::size_t{2} << 30;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& chunk : raw)
    for (const auto& kv : split(chunk, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--params expects key=value, got '" + kv + "'");
      out[kv.substr(0, eq)] = to_number(kv.substr(eq + 1), "--params " + kv.substr(0, eq));
    }
  return out;
}

Axis parse_axis(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw ConfigError(flag + " expects lo,hi,count");
  Axis a{to_number(parts[0], flag), to_number(parts[1], flag), static_cast<int>(to_number(parts[2], flag))};
  if (!(a.hi > a.lo) || a.count < 2) throw ConfigError(flag + ": need lo < hi and count >= 2");
  return a;
}

Grid default_grid(int n) {
  switch (n) {
    case 1: return {1, 512, 16.0};
    case 2: return {2, 128, 16.0};
    default: return {n, 32, 8.0};
  }
}

Grid make_grid(const RunConfig& cfg, int n, std::optional<Grid> fallback = {}) {
  Grid g = fallback ? *fallback : default_grid(n);
  if (!cfg.grid.empty()) {
    const auto parts = split(cfg.grid, ',');
    if (parts.size() != 2) throw ConfigError("--grid expects N,L");
    g.N = static_cast<int>(to_number(parts[0], "--grid N"));
    g.L = to_number(parts[1], "--grid L");
  }
  try {
    validate_grid(g);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return g;
}

struct Loaded {
  GroupSpec spec;
  std::optional<CatalogEntry> entry;
};

Loaded load_group(const RunConfig& cfg) {
  if (!cfg.group_path.empty() && !cfg.catalog_id.empty())
    throw ConfigError("give either --group or --catalog, not both");
  if (!cfg.catalog_id.empty()) {
    const auto params = parse_params(cfg.params);
    bool known = false;
    for (const auto& info : catalog_list()) known = known || info.id == cfg.catalog_id;
    if (!known) throw ConfigError("unknown catalog id '" + cfg.catalog_id + "'");
    try {
      CatalogEntry e = make_catalog_entry(cfg.catalog_id, params);
      return {e.spec, e};
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what());
    }
  }
  if (cfg.group_path.empty()) throw ConfigError("a group is required: --group <spec.json> or --catalog <id>");
  try {
    return {read_group_spec(cfg.group_path), std::nullopt};
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
}

void require_translation_complete(const GroupSpec& spec) {
  if (!check_translation_complete(spec))
    throw ConfigError("group is not translation complete: V is not invariant under H^T");
}

GridFunction load_function(const std::string& path, const Grid& grid, const char* what) {
  GridFunction f = [&] {
    try {
      return read_grid_function(path);
    } catch (const std::exception& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  }();
  if (!(f.grid() == grid))
    throw ConfigError(std::string(what) + ": grid of " + path + " differs from the run grid");
  return f.domain() == Domain::Space ? f : idft(f);
}

// Two-sided log bump scaled to stay clear of the band edge.
GridFunction default_wavelet_hat(const Grid& grid) {
  LogBump b;
  b.v0 = std::min(b.v0, 0.2 * grid.band_edge());
  return two_sided_log_bump(grid, b);
}

GridFunction default_signal(const Grid& grid) {
  if (grid.n == 2) return idft(test_signals(grid, 1).front());
  Vec c = Vec::Zero(grid.n);
  c(grid.n - 1) = std::min(0.5, 0.25 * grid.band_edge());
  return idft(gaussian_blob(grid, c, 0.15, Vec::Zero(grid.n)));
}

double test_radius(const Grid& g) { return std::min(1.5, 0.4 * g.band_edge()); }

void apply_quad_overrides(const RunConfig& cfg, QuadratureScheme& q) {
  if (!cfg.quad_xi.empty()) {
    const Axis a = parse_axis(cfg.quad_xi, "--quad-xi");
    for (auto& ax : q.xi_axes) ax = a;
  }
  if (!cfg.quad_t.empty()) {
    const Axis a = parse_axis(cfg.quad_t, "--quad-t");
    for (auto& ax : q.t_axes) ax = a;
  }
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

void write_json(const RunConfig& cfg, const std::string& name, const Json& j) {
  if (cfg.out_dir.empty()) return;
  std::ofstream f(out_path(cfg, name));
  if (!f) throw std::runtime_error("cannot write " + (std::filesystem::path(cfg.out_dir) / name).string());
  f << j.dump(2) << "\n";
}

Json parse_expect(const std::string& raw) {
  if (raw.empty()) return Json::object();
  try {
    if (raw.front() == '{') return Json::parse(raw);
    std::ifstream f(raw);
    if (!f) throw ConfigError("--expect: cannot open " + raw);
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("--expect: ") + e.what());
  }
}

// Keys of `expect` that are missing from or differ in `summary`.
std::vector<std::string> expect_mismatches(const Json& summary, const Json& expect) {
  std::vector<std::string> bad;
  for (const auto& [key, want] : expect.items()) {
    if (!summary.contains(key)) {
      bad.push_back(key + ": not reported");
      continue;
    }
    const Json& got = summary.at(key);
    bool same;
    if (want.is_number() && got.is_number()) {
      const double a = got.get<double>(), b = want.get<double>();
      same = std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    } else {
      same = got == want;
    }
    if (!same) bad.push_back(key + ": expected " + want.dump() + ", got " + got.dump());
  }
  return bad;
}

struct Outcome {
  Json report;
  Json summary;
  bool ok = true;  // verdict-level success independent of --expect
};

Outcome cmd_group_check(const RunConfig& cfg) {
  const Loaded g = load_group(cfg);
  const bool tc = check_translation_complete(g.spec);
  Json r = to_json(g.spec);
  r["d"] = g.spec.d();
  r["translation_complete"] = tc;
  if (!tc) r["error"] = "not translation complete";
  Json s = {{"translation_complete", tc}};
  return {r, s, tc};
}

Outcome cmd_orbits(const RunConfig& cfg, std::ostream& out) {
  const Loaded g = load_group(cfg);
  require_translation_complete(g.spec);
  OrbitReport rep = classify_orbits(g.spec, default_seeds(g.spec.n()));
  Json r = to_json(rep);
  if (g.entry) {
    try {
      rep.transversal = build_transversal(g.spec, rep, g.entry->transversal);
      r["transversal"] = to_json(rep).at("transversal");
    } catch (const std::exception& e) {
      r["transversal_error"] = e.what();
    }
  }
  int stab_dim = 0;
  bool ds = !rep.open_orbits.empty();
  for (const auto& o : rep.open_orbits) {
    stab_dim = std::max(stab_dim, o.stabilizer.dimension);
    ds = ds && o.discrete_series;
  }
  Json s = {{"open_orbits", rep.open_orbit_count()},
            {"free", r.at("all_free")},
            {"max_rank", rep.max_rank},
            {"stabilizer_dim", stab_dim},
            {"discrete_series", ds}};
  if (!cfg.json) {
    out << std::left << std::setw(4) << "id" << std::setw(28) << "representative" << std::setw(12) << "region"
        << std::setw(6) << "rank" << std::setw(10) << "stab_dim" << std::setw(12) << "stabilizer"
        << "discrete_series\n";
    for (std::size_t i = 0; i < rep.open_orbits.size(); ++i) {
      const auto& o = rep.open_orbits[i];
      std::ostringstream rp;
      rp << std::setprecision(3) << "(";
      for (Eigen::Index a = 0; a < o.representative.size(); ++a)
        rp << (a ? ", " : "") << o.representative(a);
      rp << ")";
      out << std::setw(4) << i << std::setw(28) << rp.str() << std::setw(12) << o.region << std::setw(6) << o.rank
          << std::setw(10) << o.stabilizer.dimension << std::setw(12) << o.stabilizer.verdict
          << (o.discrete_series ? "yes" : "no") << "\n";
    }
    out << "open orbits: " << rep.open_orbit_count() << " (max rank " << rep.max_rank << " of " << g.spec.n()
        << ")\n";
  }
  return {r, s, true};
}

GridFunction wavelet_hat(const RunConfig& cfg, const Grid& grid) {
  if (!cfg.wavelet_path.empty()) return dft(load_function(cfg.wavelet_path, grid, "--wavelet"));
  return default_wavelet_hat(grid);
}

AdmissibilityOptions admissibility_options(const RunConfig& cfg, const Loaded& g) {
  AdmissibilityOptions o;
  if (cfg.tol) o.spread_tol = *cfg.tol;
  if (g.entry) o.chart = g.entry->transversal;
  return o;
}

Outcome cmd_admissibility(const RunConfig& cfg) {
  const Loaded g = load_group(cfg);
  require_translation_complete(g.spec);
  const Grid grid = make_grid(cfg, g.spec.n());
  GridFunction psihat = wavelet_hat(cfg, grid);
  QuadratureScheme quad = default_quadrature(g.spec, psihat);
  apply_quad_overrides(cfg, quad);
  if (cfg.normalize) psihat = normalize_admissible(g.spec, psihat, quad);
  const auto freqs = test_frequencies(grid.n, 50, test_radius(grid));
  const AdmissibilityReport rep = admissibility_report(g.spec, psihat, freqs, quad, admissibility_options(cfg, g));
  Json r = to_json(rep);
  r["grid"] = {{"n", grid.n}, {"N", grid.N}, {"L", grid.L}};
  Json s = {{"verdict", rep.verdict},
            {"strong_admissibility", rep.strong_admissibility},
            {"spread", r.at("spread")},
            {"c_psi", r.at("c_psi")}};
  return {r, s, true};
}

Outcome cmd_make_wavelet(const RunConfig& cfg) {
  const Loaded g = load_group(cfg);
  require_translation_complete(g.spec);
  const Grid grid = make_grid(cfg, g.spec.n());
  const GridFunction psihat0 = wavelet_hat(cfg, grid);
  QuadratureScheme quad = default_quadrature(g.spec, psihat0);
  apply_quad_overrides(cfg, quad);
  GridFunction psihat = [&] {
    try {
      return normalize_admissible(g.spec, psihat0, quad);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
  }();
  const PhiEvaluator phi(g.spec, psihat, default_quadrature(g.spec, psihat));
  const auto freqs = test_frequencies(grid.n, 50, test_radius(grid));
  double lo = INFINITY, hi = 0.0;
  for (const auto& w : freqs) {
    const double v = phi(w).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double tol = cfg.tol.value_or(0.02);
  Json r = {{"grid", {{"n", grid.n}, {"N", grid.N}, {"L", grid.L}}},
            {"phi_min", lo},
            {"phi_max", hi},
            {"tolerance", tol},
            {"within_tolerance", lo >= 1.0 - tol && hi <= 1.0 + tol},
            {"quadrature", to_json(quad)}};
  if (!cfg.out_dir.empty()) {
    const auto base = out_path(cfg, "psi").string();
    write_grid_function(base, idft(psihat));
    r["wavelet"] = base + ".bin";
  }
  Json s = {{"within_tolerance", r.at("within_tolerance")}, {"phi_min", lo}, {"phi_max", hi}};
  return {r, s, r.at("within_tolerance").get<bool>()};
}

void guard_field(const GroupSpec& spec, const Grid& grid, const QuadratureScheme& q) {
  std::size_t nodes = 1;
  for (const auto& a : q.xi_axes) nodes *= static_cast<std::size_t>(a.count);
  for (const auto& a : q.t_axes) nodes *= static_cast<std::size_t>(a.count);
  if (static_cast<int>(q.xi_axes.size()) != spec.k() || static_cast<int>(q.t_axes.size()) != spec.d())
    throw ConfigError("quadrature does not match the group");
  if (nodes * grid.total() * sizeof(cplx) > kMaxFieldBytes)
    throw ConfigError("coefficient field would exceed 2 GiB; use a smaller --grid or fewer nodes");
}

struct TransformInputs {
  Loaded group;
  Grid grid;
  GridFunction signal;
  GridFunction psi;
  QuadratureScheme quad;
};

TransformInputs transform_inputs(const RunConfig& cfg) {
  Loaded g = load_group(cfg);
  require_translation_complete(g.spec);
  const Grid grid = make_grid(cfg, g.spec.n());
  GridFunction f = cfg.signal_path.empty() ? default_signal(grid) : load_function(cfg.signal_path, grid, "--signal");
  GridFunction psi = cfg.wavelet_path.empty() ? idft(default_wavelet_hat(grid))
                                              : load_function(cfg.wavelet_path, grid, "--wavelet");
  QuadratureScheme q = transform_quadrature(g.spec, grid);
  apply_quad_overrides(cfg, q);
  guard_field(g.spec, grid, q);
  return {std::move(g), grid, std::move(f), std::move(psi), q};
}

CoefficientField analyze_checked(const TransformInputs& in) {
  try {
    return analyze(in.group.spec, in.signal, in.psi, in.quad);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

Outcome cmd_transform(const RunConfig& cfg) {
  const TransformInputs in = transform_inputs(cfg);
  const CoefficientField field = analyze_checked(in);
  const GridFunction psihat = dft(in.psi);
  const PhiEvaluator phi(in.group.spec, psihat, default_quadrature(in.group.spec, psihat));
  const double lhs = coefficient_norm_sq(field);
  const double rhs = parseval_rhs(dft(in.signal), phi);
  const double dev = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : INFINITY;
  const double tol = cfg.tol.value_or(0.03);
  Json r = {{"grid", {{"n", in.grid.n}, {"N", in.grid.N}, {"L", in.grid.L}}},
            {"coefficient_norm_sq", lhs},
            {"weighted_signal_norm_sq", rhs},
            {"rel_dev", dev},
            {"tolerance", tol},
            {"within_tolerance", dev <= tol},
            {"quadrature", to_json(in.quad)}};
  if (!cfg.out_dir.empty()) {
    const auto base = out_path(cfg, "coefficients").string();
    write_field(base, field);
    r["field"] = base + ".bin";
  }
  Json s = {{"within_tolerance", dev <= tol}, {"rel_dev", dev}};
  return {r, s, dev <= tol};
}

Outcome cmd_reconstruct(const RunConfig& cfg) {
  const TransformInputs in = transform_inputs(cfg);
  const CoefficientField field = [&] {
    if (cfg.field_path.empty()) return analyze_checked(in);
    std::string base = cfg.field_path;
    if (base.size() > 4 && base.ends_with(".bin")) base.resize(base.size() - 4);
    try {
      return read_field(base);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--field: ") + e.what());
    }
  }();
  if (!(field.grid() == in.grid)) throw ConfigError("--field: grid differs from the run grid");
  if (!(cfg.c_psi > 0.0)) throw ConfigError("--c-psi must be positive");
  const GridFunction rec = synthesize(in.group.spec, field, in.psi, cfg.c_psi);
  const double residual = relative_l2(rec, in.signal);
  const double tol = cfg.tol.value_or(0.05);
  Json r = {{"grid", {{"n", in.grid.n}, {"N", in.grid.N}, {"L", in.grid.L}}},
            {"c_psi", cfg.c_psi},
            {"residual", residual},
            {"tolerance", tol},
            {"within_tolerance", residual <= tol},
            {"quadrature", to_json(in.quad)}};
  if (!cfg.out_dir.empty()) {
    const auto base = out_path(cfg, "reconstruction").string();
    write_grid_function(base, rec);
    r["reconstruction"] = base + ".bin";
  }
  Json s = {{"within_tolerance", residual <= tol}, {"residual", residual}};
  return {r, s, residual <= tol};
}

Outcome cmd_wigner_compare(const RunConfig& cfg) {
  const Loaded g = load_group(cfg);
  require_translation_complete(g.spec);
  if (g.spec.n() > 2) throw ConfigError("wigner-compare supports n = 1 or 2");
  const Grid grid = make_grid(cfg, g.spec.n(), g.spec.n() == 2 ? std::optional<Grid>(Grid{2, 32, 8.0}) : std::nullopt);
  if (grid.total() * grid.total() > kMaxWignerEntries)
    throw ConfigError("wigner-compare: N^(2n) exceeds the 2^24 memory guard; use a smaller --grid");
  const GridFunction psi = cfg.wavelet_path.empty() ? idft(default_wavelet_hat(grid))
                                                    : load_function(cfg.wavelet_path, grid, "--wavelet");
  WignerQuadrature quad;
  if (!cfg.quad_xi.empty()) {
    const Axis a = parse_axis(cfg.quad_xi, "--quad-xi");
    quad.xi_half = 0.5 * (a.hi - a.lo);
    quad.xi_count = a.count;
  }
  if (!cfg.quad_t.empty()) quad.t_axis = parse_axis(cfg.quad_t, "--quad-t");
  std::vector<std::pair<Vec, Vec>> points;
  for (const Vec& xi : test_frequencies(grid.n, 5, test_radius(grid)))
    for (double shift : {0.0, 0.5}) points.push_back({Vec::Constant(grid.n, shift), xi});
  const EquivalenceReport rep = equivalence_check(g.spec, psi, points, quad);
  const double tol = cfg.tol.value_or(0.03);
  Json r = to_json(rep);
  r["grid"] = {{"n", grid.n}, {"N", grid.N}, {"L", grid.L}};
  r["tolerance"] = tol;
  r["within_tolerance"] = rep.max_rel_dev <= tol;
  r["quadrature"] = {{"xi_half", quad.xi_half}, {"xi_count", quad.xi_count}, {"t_axis", to_json(quad.t_axis)}};
  if (!cfg.out_dir.empty()) {
    std::ofstream csv(out_path(cfg, "wigner_compare.csv"));
    for (int a = 0; a < grid.n; ++a) csv << "x" << a << ",";
    for (int a = 0; a < grid.n; ++a) csv << "xi" << a << ",";
    csv << "wigner,calderon,rel_dev\n" << std::setprecision(12);
    for (const auto& p : rep.points) {
      for (int a = 0; a < grid.n; ++a) csv << p.x(a) << ",";
      for (int a = 0; a < grid.n; ++a) csv << p.xi(a) << ",";
      csv << p.wigner_side << "," << p.calderon_side << "," << p.rel_dev << "\n";
    }
  }
  Json s = {{"within_tolerance", rep.max_rel_dev <= tol}, {"max_rel_dev", r.at("max_rel_dev")}};
  return {r, s, rep.max_rel_dev <= tol};
}

Outcome cmd_modular(const RunConfig& cfg) {
  const Loaded g = load_group(cfg);
  const CatalogEntry entry = g.entry ? *g.entry : CatalogEntry{"custom", {}, g.spec, {}, {}};
  const UnimodularityReport rep = unimodularity_report(entry);
  const double tol = cfg.tol.value_or(1e-8);
  Json r = to_json(rep);
  r["tolerance"] = tol;
  r["within_tolerance"] = rep.max_deviation <= tol;
  Json s = {{"within_tolerance", rep.max_deviation <= tol},
            {"closed_form_unimodular", rep.closed_form_unimodular},
            {"numeric_unimodular", rep.numeric_unimodular},
            {"reference_agrees", rep.reference_agrees}};
  return {r, s, rep.max_deviation <= tol};
}

Outcome cmd_catalog_list() {
  Json r = Json::array();
  for (const auto& info : catalog_list())
    r.push_back({{"id", info.id}, {"parameters", info.parameters}, {"summary", info.summary}});
  return {r, {{"entries", r.size()}}, true};
}

Outcome cmd_catalog_emit(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.catalog_id = cfg.emit_id;
  c.group_path.clear();
  const Loaded g = load_group(c);
  Json r = to_json(*g.entry);
  return {r, {{"translation_complete", check_translation_complete(g.spec)}}, true};
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Translation-complete subgroups of the affine Weyl-Heisenberg group", "tcg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--group", cfg.group_path, "group spec JSON file");
  app.add_option("--catalog", cfg.catalog_id, "catalog id (see `catalog list`)");
  app.add_option("--params", cfg.params, "catalog parameters key=value[,key=value]");
  app.add_option("--grid", cfg.grid, "grid N,L");
  app.add_option("--quad-xi", cfg.quad_xi, "xi quadrature lo,hi,count (all V axes)");
  app.add_option("--quad-t", cfg.quad_t, "t quadrature lo,hi,count (all H axes)");
  app.add_option("--tol", cfg.tol, "pass tolerance of the subcommand");
  app.add_option("--expect", cfg.expect, "JSON object (inline or file) the summary must match");
  app.add_option("--out", cfg.out_dir, "output directory for artifacts");
  app.add_option("--wavelet", cfg.wavelet_path, "wavelet GridFunction (.bin with .json sidecar)");
  app.add_option("--signal", cfg.signal_path, "signal GridFunction (.bin with .json sidecar)");
  app.add_option("--field", cfg.field_path, "coefficient field from `transform`");
  app.add_option("--c-psi", cfg.c_psi, "reconstruction constant");
  app.add_flag("--normalize", cfg.normalize, "normalize the wavelet before the report");
  app.add_flag("--json", cfg.json, "print JSON instead of a table");

  auto* group = app.add_subcommand("group", "group spec checks");
  group->require_subcommand(1);
  auto* group_check = group->add_subcommand("check", "translation completeness");
  auto* orbits = app.add_subcommand("orbits", "open orbits and stabilizers of the dual action");
  auto* adm = app.add_subcommand("admissibility", "Calderon function report");
  auto* make_wavelet = app.add_subcommand("make-wavelet", "normalized admissible wavelet");
  auto* transform = app.add_subcommand("transform", "wavelet coefficients and norm check");
  auto* reconstruct = app.add_subcommand("reconstruct", "analysis then synthesis residual");
  auto* wig = app.add_subcommand("wigner-compare", "Wigner integral against the Calderon function");
  auto* modular = app.add_subcommand("modular", "closed-form and numeric modular function");
  auto* catalog = app.add_subcommand("catalog", "example groups");
  catalog->require_subcommand(1);
  auto* catalog_list_cmd = catalog->add_subcommand("list", "list catalog ids");
  auto* catalog_emit = catalog->add_subcommand("emit", "print a catalog group spec");
  catalog_emit->add_option("id", cfg.emit_id, "catalog id")->required();
  for (auto* sub : {group, group_check, orbits, adm, make_wavelet, transform, reconstruct, wig, modular, catalog,
                    catalog_list_cmd, catalog_emit})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return 2;
  }

  try {
    const Json expect = parse_expect(cfg.expect);
    if (!expect.is_object()) throw ConfigError("--expect must be a JSON object");
    Outcome res;
    std::string name;
    if (group_check->parsed()) {
      res = cmd_group_check(cfg);
      name = "group_check";
    } else if (orbits->parsed()) {
      res = cmd_orbits(cfg, out);
      name = "orbits";
    } else if (adm->parsed()) {
      res = cmd_admissibility(cfg);
      name = "admissibility";
    } else if (make_wavelet->parsed()) {
      res = cmd_make_wavelet(cfg);
      name = "make_wavelet";
    } else if (transform->parsed()) {
      res = cmd_transform(cfg);
      name = "transform";
    } else if (reconstruct->parsed()) {
      res = cmd_reconstruct(cfg);
      name = "reconstruct";
    } else if (wig->parsed()) {
      res = cmd_wigner_compare(cfg);
      name = "wigner_compare";
    } else if (modular->parsed()) {
      res = cmd_modular(cfg);
      name = "modular";
    } else if (catalog_list_cmd->parsed()) {
      res = cmd_catalog_list();
      name = "catalog_list";
    } else {
      res = cmd_catalog_emit(cfg);
      name = "catalog_emit";
    }

    const auto bad = expect_mismatches(res.summary, expect);
    if (res.report.is_object()) {
      res.report["summary"] = res.summary;
      if (!expect.empty()) res.report["expect"] = {{"matched", bad.empty()}, {"mismatches", bad}};
    }
    write_json(cfg, name + ".json", res.report);
    if (!(orbits->parsed() && !cfg.json)) out << res.report.dump(2) << "\n";
    for (const auto& b : bad) err << "expectation failed: " << b << "\n";
    if (group_check->parsed() && !res.ok) {
      err << "not translation complete\n";
      return 1;
    }
    if (!expect.empty()) return bad.empty() ? 0 : 1;
    return res.ok ? 0 : 1;
  } catch (const ConfigError& e) {
    err << error_json("config", e.what()).dump() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << error_json("config", e.what()).dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << error_json("config", e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << error_json("runtime", e.what()).dump() << "\n";
    return 3;
  }
}

}  // namespace tcg
