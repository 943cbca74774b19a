#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ngon {

inline constexpr int kMaxAmbientDim = 16;

// Point or vector in the ambient space R^m, m <= kMaxAmbientDim.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                            kMaxAmbientDim, 1>;

enum class CurveKind {
  kCircle,
  kEllipse,
  kTorusKnot,
  kLissajous,
  kSplineFromPoints,
  kCornerTriangle,
  kPlanarFigureEight,
};

std::string_view to_string(CurveKind kind);

// A closed curve with an arbitrary period-1 parameter. Implementations must be
// immutable and safe to call concurrently.
class RawCurve {
 public:
  virtual ~RawCurve() = default;

  virtual int ambient_dim() const = 0;
  virtual Point position(double u) const = 0;
  virtual Point velocity(double u) const = 0;

  virtual CurveKind kind() const = 0;
  virtual std::string label() const = 0;

  // Parameters in [0,1) across which the velocity may jump or lose
  // smoothness (spline knots, polygon corners).
  virtual std::vector<double> breakpoints() const { return {}; }
  // True when |velocity| is constant, so the parameter is already
  // proportional to arc length.
  virtual bool constant_speed() const { return false; }
  // Catalog flags for the fixtures that deliberately break the hypotheses.
  virtual bool smooth() const { return true; }
  virtual bool simple() const { return true; }
};

namespace detail {
class ArcLengthMap;
}

// A closed curve of total length 1 parametrized by arc length, periodic with
// period 1. Immutable and cheap to copy; copies share the underlying table.
class ClosedCurve {
 public:
  int ambient_dim() const;
  Point eval(double t) const;
  // Unit tangent d eval / dt. Zero where the raw curve is stationary.
  Point deriv(double t) const;

  double total_length() const { return 1.0; }
  // Length of the raw curve before rescaling.
  double raw_length() const;
  // Arc-length parameter, on the unbased curve, of this curve's parameter 0.
  double base_offset() const { return offset_; }

  CurveKind kind() const;
  std::string label() const;
  bool smooth() const;
  bool simple() const;

  // Same geometric curve, re-based so that parameter 0 maps to this curve's
  // parameter `base`.
  ClosedCurve rebased(double base) const;

  // Raw parameter of the point at arc-length parameter t.
  double raw_parameter(double t) const;

 private:
  friend ClosedCurve normalize_to_unit_length(std::shared_ptr<const RawCurve>,
                                              double);
  ClosedCurve(std::shared_ptr<const detail::ArcLengthMap> map, double offset);

  std::shared_ptr<const detail::ArcLengthMap> map_;
  double offset_ = 0.0;
};

// Arc-length tolerance of the reparametrization.
inline constexpr double kTolArcLength = 1e-9;

// Rescales to unit length, reparametrizes by arc length and re-bases so that
// `base` (an arc-length fraction of the rescaled curve measured from raw
// parameter 0) becomes parameter 0. Throws Error(kInvalidCurve) for zero,
// infinite or NaN length and for unsupported ambient dimensions.
ClosedCurve normalize_to_unit_length(std::shared_ptr<const RawCurve> raw,
                                     double base = 0.0);

// Fractional part in [0,1).
double wrap_unit(double t);

// |t1 - t2| measured around the circle of circumference 1.
double circular_distance(double t1, double t2);

}  // namespace ngon
