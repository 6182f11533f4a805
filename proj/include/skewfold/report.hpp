#pragma once

#include <string>

#include <json.hpp>

#include "skewfold/bottcher.hpp"
#include "skewfold/classify.hpp"
#include "skewfold/infinity.hpp"
#include "skewfold/region.hpp"
#include "skewfold/transforms.hpp"

namespace skewfold {

using json = nlohmann::json;

json rational_json(const Rational& r);                // "p/q" string
json extended_json(const ExtendedRational& r);        // "p/q" or "inf"
json complex_json(const cpx& c);                      // [re, im]
json polygon_json(const NewtonPolygon& P);
json interval_json(const WeightInterval& I);
json plan_json(const WeightPlan& plan, bool two_plans);
json verify_json(const VerifyReport& rep);
json region_json(const RegionSpec& spec);
json transform_json(const TransformedMap& t);
json infinity_json(const InfinityReport& rep);
json weighted_infinity_json(const WeightedInfinityReport& rep);
json afo_json(const AfoRegion& A);
json preimage_json(const PreimageRegion& P);
json bottcher_row_json(const cpx& z, const cpx& w, const BottcherEval& ev);
json critical_json(const CriticalReport& rep);

// Structural schema validation: a schema is an object mapping field names to
// type tags ("string", "number", "integer", "boolean", "rational", "complex",
// "array", "array:<tag>", or a nested schema object). Every listed field is
// required; unknown fields are rejected.
bool validate_schema(const json& value, const json& schema, std::string* error = nullptr);

// Shipped schema registry: analyze, verify, transform, infinity,
// weighted_infinity, afo, bottcher_row, critical.
json schema_for(const std::string& name);

// Validates against the registry entry and throws on mismatch.
void enforce_schema(const json& value, const std::string& name);

}  // namespace skewfold
