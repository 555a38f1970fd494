#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/moments.hpp"
#include "hmsa/symmetry.hpp"

namespace hmsa {

using OrderedJson = nlohmann::ordered_json;

/// Parses {"kind": "sphere"|"ellipsoid"|"perturbed_sphere", "radius", "axes",
/// "base_radius", "modes": [{"n", "m", "eps", "part"}]}. Throws SpecError on
/// malformed input and InvalidSurfaceError when the surface is not star-shaped.
StarSurface surface_from_json(const nlohmann::json& spec);

OrderedJson moment_table_to_json(const MomentTable& table);
OrderedJson report_to_json(const DefectReport& report, const nlohmann::json& surface_spec);

/// Serializes with fixed key order and 17 significant digits for every float;
/// non-finite values become null.
std::string dump_json(const OrderedJson& value, int indent = 2);

/// CSV columns for a report; depends only on the moment degree.
std::vector<std::string> csv_columns(int moment_degree);
std::vector<double> csv_values(const DefectReport& report);
std::string format_number(double value);

}  // namespace hmsa
