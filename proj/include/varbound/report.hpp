#pragma once

// Report serialization: JSON with floats at 17 significant digits (so equal
// runs give byte-identical files), CSV tables, gnuplot data+script pairs and
// atomic file output.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "varbound/bound_numeric.hpp"
#include "varbound/exact/bound_exact.hpp"
#include "varbound/jnr_geom.hpp"
#include "varbound/sector_bound.hpp"

namespace varbound::report {

using Json = nlohmann::ordered_json;

/// "%.17g", with non-finite values written as null.
std::string format_double(double v);
/// Two-space indented JSON; floats via format_double.
std::string dump(const Json& j);

Json bound_json(const BoundResult& r);
/// Adds "polynomial" (certified factor, highest power first), "eliminant"
/// and the factor in the structured polynomial format.
Json exact_json(const exact::ExactResult& r);

Json polytope_json(const JNRPolytope& p);
/// One row per point: direction parameters, coordinates, shade when present.
std::string polytope_csv(const JNRPolytope& p);

Json dual_json(const DualCurve& c);
std::string dual_csv(const DualCurve& c);

/// {"cells": [[[vx, vy], ...], ...], "delta": [dx, dy]}.
Json urange_json(const UncertaintyRegionApprox& u);
/// One closed polyline per cell, blank-line separated.
std::string urange_csv(const UncertaintyRegionApprox& u);

/// gnuplot script reading `data_file` (CSV written by the matching *_csv).
enum class PlotKind { Jnr2d, Jnr3d, Dual2d, Urange };
std::string gnuplot_script(PlotKind kind, const std::string& data_file, const std::string& title);

/// Writes to a sibling temporary file and renames it over `path`, so a failed
/// run never leaves a partial file behind.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace varbound::report
