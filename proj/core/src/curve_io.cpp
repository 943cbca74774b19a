#include "ngon/curve_io.hpp"

#include <fstream>
#include <numbers>
#include <string>

#include "ngon/catalog.hpp"
#include "ngon/error.hpp"

namespace ngon {
namespace {

using nlohmann::json;

template <typename T>
T param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("bad value for parameter '") + key + "': " + e.what());
  }
}

}  // namespace

std::shared_ptr<const RawCurve> raw_curve_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw Error(ErrorCode::kParse, "curve spec needs a string field 'kind'");
  }
  const std::string kind = spec["kind"].get<std::string>();
  const json params = spec.value("params", json::object());
  if (!params.is_object()) {
    throw Error(ErrorCode::kParse, "'params' must be an object");
  }

  if (kind == "circle") {
    return make_circle(param(params, "radius", 1.0), param(params, "dim", 2));
  }
  if (kind == "circle4d") return make_circle(param(params, "radius", 1.0), 4);
  if (kind == "ellipse") {
    return make_ellipse(param(params, "a", 2.0), param(params, "b", 1.0));
  }
  if (kind == "torus_knot" || kind == "trefoil") {
    return make_torus_knot(param(params, "p", 3), param(params, "q", 2),
                           param(params, "R", 2.0), param(params, "r", 1.0));
  }
  if (kind == "lissajous") {
    return make_lissajous(param(params, "a", 3), param(params, "b", 2),
                          param(params, "c", 7), param(params, "phi1", 0.1),
                          param(params, "phi2", 0.7));
  }
  if (kind == "corner_triangle") {
    return make_corner_triangle(
        param(params, "apex_angle", std::numbers::pi / 4));
  }
  if (kind == "planar_figure_eight" || kind == "figure_eight") {
    return make_planar_figure_eight(param(params, "aspect", 0.25));
  }
  if (kind == "spline_from_points") {
    if (spec.contains("closed") && !spec["closed"].get<bool>()) {
      throw Error(ErrorCode::kInvalidCurve,
                  "spline_from_points must describe a closed curve");
    }
    if (!spec.contains("points") || !spec["points"].is_array()) {
      throw Error(ErrorCode::kParse, "spline_from_points needs a 'points' array");
    }
    std::vector<std::vector<double>> points;
    try {
      points = spec["points"].get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("bad points: ") + e.what());
    }
    return make_periodic_spline(points);
  }
  throw Error(ErrorCode::kParse, "unknown curve kind '" + kind + "'");
}

ClosedCurve load_curve(const json& spec, std::optional<double> base_override) {
  double base = 0.0;
  if (base_override) {
    base = *base_override;
  } else if (spec.is_object() && spec.contains("base")) {
    base = spec["base"].get<double>();
  }
  return normalize_to_unit_length(raw_curve_from_json(spec), base);
}

ClosedCurve load_curve_file(const std::filesystem::path& path,
                            std::optional<double> base_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  json spec;
  try {
    in >> spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return load_curve(spec, base_override);
}

}  // namespace ngon
