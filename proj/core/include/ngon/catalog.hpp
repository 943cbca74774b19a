#pragma once

#include <memory>
#include <numbers>
#include <string_view>
#include <vector>

#include "ngon/curve.hpp"

namespace ngon {

// Circle of the given radius. For dim > 2 the plane of the circle is rotated
// by a fixed orthogonal matrix so that every coordinate is exercised.
std::shared_ptr<const RawCurve> make_circle(double radius = 1.0, int dim = 2);

// Axis-aligned ellipse (a cos 2πu, b sin 2πu).
std::shared_ptr<const RawCurve> make_ellipse(double a = 2.0, double b = 1.0);

// ((R + r cos 2πqu) cos 2πpu, (R + r cos 2πqu) sin 2πpu, r sin 2πqu).
// p=3, q=2 is the trefoil.
std::shared_ptr<const RawCurve> make_torus_knot(int p = 3, int q = 2,
                                                double major = 2.0,
                                                double minor = 1.0);

// (cos(2πa u + φ1), cos(2πb u + φ2), cos(2πc u)).
std::shared_ptr<const RawCurve> make_lissajous(int a = 3, int b = 2, int c = 7,
                                               double phi1 = 0.1,
                                               double phi2 = 0.7);

// Isosceles triangle with unit legs meeting at the origin (raw parameter 0)
// at the given apex angle. Not smooth at its corners.
std::shared_ptr<const RawCurve> make_corner_triangle(
    double apex_angle = std::numbers::pi / 4);

// (sin 2πu, aspect · sin 4πu). Smooth, with a single double point at the
// origin reached at u = 0 and u = 1/2.
std::shared_ptr<const RawCurve> make_planar_figure_eight(double aspect = 0.25);

// Closed periodic cubic spline through the points, parametrized by
// cumulative chord length. Requires at least 8 distinct points; a repeated
// closing point is dropped.
std::shared_ptr<const RawCurve> make_periodic_spline(
    const std::vector<std::vector<double>>& points);

// Named catalog entries: circle, circle4d, ellipse, trefoil, lissajous,
// corner_triangle, figure_eight. Returns the raw curve; throws
// Error(kInvalidArgument) for unknown names.
std::shared_ptr<const RawCurve> catalog_raw_curve(std::string_view name);

// catalog_raw_curve followed by normalize_to_unit_length.
ClosedCurve catalog_curve(std::string_view name, double base = 0.0);

// Names accepted by catalog_raw_curve.
std::vector<std::string_view> catalog_names();

}  // namespace ngon
