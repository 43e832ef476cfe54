// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/admissibility.hpp"
#include "tcg/catalog.hpp"
#include "tcg/dual_action.hpp"
#include "tcg/group.hpp"
#include "tcg/quadrature.hpp"
#include "tcg/wigner.hpp"

#include "json.hpp"

#include <string>

namespace tcg {

using Json = nlohmann::json;

// { "n", "k", "generators", "chart", "params_box" }. Generators are accepted as
// flat row-major arrays of n*n numbers or as nested rows. A chart naming a
// catalog id picks up that closed form.
GroupSpec group_spec_from_json(const Json& j);
GroupSpec read_group_spec(const std::string& path);
Json to_json(const GroupSpec& spec);

Json to_json(const Vec& v);
Json to_json(const Interval& i);
Json to_json(const Axis& a);
Json to_json(const QuadratureScheme& q);
Json to_json(const StabilizerReport& r);
Json to_json(const OrbitReport& r);
Json to_json(const ExpectedStructure& s);
Json to_json(const CatalogEntry& e);  // group spec plus id, params and expected structure
Json to_json(const AdmissibilityReport& r);
Json to_json(const ScalingCheck& c);
Json to_json(const UnimodularityReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const WeightedNorm& w);

Vec vec_from_json(const Json& j);

}  // namespace tcg
