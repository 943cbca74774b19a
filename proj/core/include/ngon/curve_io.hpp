#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include <nlohmann/json.hpp>

#include "ngon/curve.hpp"

namespace ngon {

// Builds a raw curve from a JSON description, e.g.
//   {"kind": "torus_knot", "params": {"p": 3, "q": 2, "R": 2.0, "r": 1.0}}
//   {"kind": "spline_from_points", "points": [[x, y, z], ...], "closed": true}
// Accepted kinds: circle, ellipse, torus_knot, lissajous, spline_from_points,
// corner_triangle, planar_figure_eight, plus the catalog shorthands
// (trefoil, circle4d, figure_eight). Throws Error(kParse) on malformed input.
std::shared_ptr<const RawCurve> raw_curve_from_json(const nlohmann::json& spec);

// raw_curve_from_json, then normalization. The base parameter is taken from
// the file's optional "base" field unless `base_override` is given.
ClosedCurve load_curve(const nlohmann::json& spec,
                       std::optional<double> base_override = std::nullopt);

// Reads a JSON curve file. Throws Error(kIo) when the file cannot be read.
ClosedCurve load_curve_file(const std::filesystem::path& path,
                            std::optional<double> base_override = std::nullopt);

}  // namespace ngon
