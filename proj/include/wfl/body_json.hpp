#pragma once

#include <string>

#include "wfl/body.hpp"
#include "wfl/checks.hpp"

namespace wfl {

/// Parses the recursive body description, e.g.
/// {"dim": 2, "kind": "ball", "radius": 1.0}. Throws InvalidBody on
/// malformed input.
BodyPtr body_from_json(const std::string& text);
BodyPtr body_from_json_file(const std::string& path);

/// Normalized JSON form of a body; parses back to a body with identical
/// support values. Throws InvalidBody for kinds without a JSON form
/// (internal projections).
std::string body_to_json(const Body& k);

std::string report_to_json(const InequalityReport& r);
std::string report_to_csv_row(const InequalityReport& r);
std::string report_csv_header();

}  // namespace wfl
