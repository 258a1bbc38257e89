#pragma once

// JSON documents: every top-level document carries "schema": 1 and a "kind".
// Rationals are "p/q" strings, infinity is "inf", integers are JSON numbers
// (strings when they do not fit in 64 bits).

#include "prevtrop/tropembed.hpp"

#include <json.hpp>

namespace prevtrop {

/// Malformed input: bad JSON shape, wrong kind, unparsable numbers.
class ParseError : public Error {
public:
    using Error::Error;
};

namespace io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// {"schema": 1, "kind": kind}
Json document(const std::string& kind);
/// Throws ParseError unless doc is an object with the given kind (and, when
/// present, schema 1).
void expect_kind(const Json& doc, const std::string& kind);
std::string kind_of(const Json& doc);

Json to_json(const Integer& z);
Integer integer_from_json(const Json& j);
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const ExtRational& x);
ExtRational ext_rational_from_json(const Json& j);
Json to_json(std::span<const Integer> v);
IntVector int_vector_from_json(const Json& j);
Json to_json(std::span<const Rational> v);
RatVector rat_vector_from_json(const Json& j);
Json to_json(const IntMatrix& m);
/// `cols` is used when the matrix has no rows.
IntMatrix int_matrix_from_json(const Json& j, std::size_t cols);

Json to_json(const Cone& c);
/// Rebuilds from rays; a stored "inequalities" list must match the recomputed one.
Cone cone_from_json(const Json& j, std::size_t ambient);
/// Maximal cones only; reloading closes under faces.
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j, std::size_t ambient);

Json to_json(const SystemOfFans& s);
SystemOfFans system_from_json(const Json& doc);

Json to_json(const Grading& g);
Grading grading_from_json(const Json& doc);

Json to_json(const TropPoint& p);
TropPoint trop_point_from_json(const Json& doc);
Json to_json(const NonNegTropPoint& q);
NonNegTropPoint nonneg_point_from_json(const Json& doc);
/// {"kind": "chart_values", "chart": id, "values": {"0": "1", "1": "inf"}} or a list.
std::pair<std::size_t, std::vector<ExtRational>> chart_values_from_json(const Json& doc);

Json to_json(const QtPoly& p);
QtPoly qt_poly_from_json(const Json& j);
Json to_json(const ValuedScalar& x);
/// Also accepts a plain rational.
ValuedScalar scalar_from_json(const Json& j);

Json to_json(const ClassicalChartPoint& p);
ClassicalChartPoint classical_point_from_json(const Json& doc);
/// {"kind": "classical_point", "coords": [...]}: homogeneous coordinates.
std::vector<ValuedScalar> cox_coords_from_json(const Json& doc);

Json to_json(const Polynomial& f);
Polynomial polynomial_from_json(const Json& doc);

Json to_json(const SysFanMorphism& m);
/// Either "class_map" or "chart_map" (class map derived from the lattice map).
SysFanMorphism morphism_from_json(const Json& doc, const SystemOfFans& source, const SystemOfFans& target);

Json to_json(const Violation& v);

}  // namespace io
}  // namespace prevtrop
