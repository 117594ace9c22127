#pragma once

// JSON schemas for the CLI: function payloads, flux descriptors, study
// configuration and result tables.

#include <json.hpp>

#include "shockfront/flux.hpp"
#include "shockfront/harness.hpp"
#include "shockfront/metrics.hpp"
#include "shockfront/piecewise.hpp"
#include "shockfront/solver.hpp"

namespace shockfront {

using nlohmann::json;

json to_json(const PiecewiseConstantFn& fn);
json to_json(const PiecewiseLinearFn& fn);
PiecewiseConstantFn pc_from_json(const json& j);
PiecewiseLinearFn pl_from_json(const json& j);

// {"type":"burgers"} | {"type":"power","exponent":4} | {"type":"pl","nodes":[[u,f],...]}
Flux flux_from_json(const json& j);

json to_json(const RiemannFan& fan);
json to_json(const DistanceReport& report);

StudyConfig study_config_from_json(const json& j);
json to_json(const EocTable& table);
EocTable eoc_table_from_json(const json& j);
json to_json(const StudyResult& result);

// NaN-aware comparison (JSON stores NaN as null).
bool eoc_table_equal(const EocTable& a, const EocTable& b);

}  // namespace shockfront
