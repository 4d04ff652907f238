#pragma once

#include <string>

#include "json.hpp"
#include "uag/dsl.hpp"

namespace uag {

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit, rendered as 16 hex digits; stable across platforms.
std::string content_hash(std::string_view text);

Json json_point_set(const PointSet& s);
Json json_congruence(const ClosedCongruence& t);
Json json_algebra(const FiniteAlgebra& a);
Json json_geom_verdict(const GeomVerdict& v);
Json json_applicability(const ApplicabilityReport& r);
Json json_basis(const ApplicabilityBasis& b);
Json json_auto_verdict(const AutoEqVerdict& v);

/// Deterministic serialization: stable key order, two-space indent, trailing
/// newline. The caller places any timing field last.
std::string render_report(const Json& report);

}  // namespace uag
