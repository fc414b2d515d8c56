#pragma once

#include "json.hpp"

#include "carnot/coordinates.hpp"
#include "carnot/frame.hpp"
#include "carnot/nilpotent.hpp"
#include "carnot/verify.hpp"

namespace carnot {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "carnot-kit/1";

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json point_to_json(std::span<const Rational> p);
Point point_from_json(const Json& j);
Json weights_to_json(const WeightVector& w);
WeightVector weights_from_json(const Json& j);

/// Terms in canonical order: (<alpha>, descending lex) when w matches the
/// variable count, plain graded lex otherwise.
Json poly_to_json(const Poly& p, const WeightVector* w = nullptr);
Poly poly_from_json(const Json& j);
Json polymap_to_json(const PolyMap& m, const WeightVector* w = nullptr);
PolyMap polymap_from_json(const Json& j);

Json field_to_json(const VectorField& x, const WeightVector& w);
VectorField field_from_json(const Json& j, std::size_t n);

/// {"weights", "brackets": [{"i","j","k","coef"}]} with 1-based i < j.
Json algebra_to_json(const StructureConstants& l);
StructureConstants algebra_from_json(const Json& j);

/// {"weights", "base_point", "fields"}
Json frame_to_json(const Frame& f);
Frame frame_from_json(const Json& j);

/// {"affine": {"matrix", "offset"}, "triangular": polymap, "factors": {"inner", "outer"}}
Json change_to_json(const CoordinateChange& c);
CoordinateChange change_from_json(const Json& j, const WeightVector& w);

Json scaling_to_json(const ScalingReport& s);
Json report_to_json(const VerificationReport& r);

/// Throws SchemaError unless "schema" is absent or equals kSchema.
void check_schema_tag(const Json& j);

}  // namespace carnot
