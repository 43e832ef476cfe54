// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/group.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcg {

// Piecewise chart c -> gamma of a set meeting each orbit once. Each sheet is
// one connected piece; dim is the number of continuous coordinates.
struct TransversalChart {
  int dim = 0;
  std::vector<std::function<Vec(const Vec&)>> sheets;
};

// Reference structure of a catalog group.
struct ExpectedStructure {
  bool translation_complete = true;
  int open_orbits = 0;
  std::vector<std::string> orbit_regions;
  bool free = true;
  bool compact_stabilizers = true;
  int stabilizer_dim = 0;
  bool discrete_series = false;
  std::string admissibility;            // admissible | weakly-admissible | not-admissible
  std::string unimodular_condition;     // reference statement, as text
  std::optional<bool> unimodular;       // reference verdict at these parameters
};

struct CatalogEntry {
  std::string id;
  std::map<std::string, double> params;
  GroupSpec spec;
  ExpectedStructure expected;
  std::optional<TransversalChart> transversal;
};

CatalogEntry dim2_family(double a, double c);
CatalogEntry dim3_diag(double alpha, double beta, int which_v);
CatalogEntry dim3_jordan(double alpha, double beta, int which_v = 2);
CatalogEntry dim3_twoparam(double alpha, int which_v);
CatalogEntry dim3_rotation(double alpha, int which_v = 2);
CatalogEntry heisenberg(int n);
CatalogEntry proper_v(int n, int k);
CatalogEntry affine_1d();
std::vector<CatalogEntry> baselines();

struct CatalogInfo {
  std::string id;
  std::string parameters;  // comma separated names with defaults
  std::string summary;
};
std::vector<CatalogInfo> catalog_list();

// Build an entry from an id and key=value parameters; missing keys take defaults.
CatalogEntry make_catalog_entry(const std::string& id, const std::map<std::string, double>& params);

// Closed-form chart for a catalog chart id, reading parameters off the generators.
// Returns an empty function for "exp" or unknown ids.
ChartFn closed_form_for(const std::string& chart_id, const std::vector<Mat>& generators);

// dim2 lower-left chart entry f(t).
double dim2_f(double a, double c, double t);

}  // namespace tcg
