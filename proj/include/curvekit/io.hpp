#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvekit/curve.hpp"

namespace curvekit {

/// Curve from its JSON spec. Kinds: helix3, circle2, wcurve4, polynomial,
/// synthesized, spherical. `"arclength": true` wraps the result in an
/// arclength reparametrization. ParseError on malformed input.
CurvePtr curve_from_json(const nlohmann::json& spec);
CurvePtr load_curve(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Scientific notation with 17 significant digits, independent of locale.
std::string format_real(double x);
double parse_real(std::string_view text);

void write_csv_header(std::ostream& out, std::span<const std::string> columns);
void write_csv_row(std::ostream& out, std::span<const double> values);

/// Parses "l1=0,l2=1" into values indexed by the digit after the prefix.
std::vector<double> parse_indexed_list(std::string_view text, char prefix);

}  // namespace curvekit
