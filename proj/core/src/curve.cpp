#include "ngon/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ngon/error.hpp"

namespace ngon {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kCircle: return "circle";
    case CurveKind::kEllipse: return "ellipse";
    case CurveKind::kTorusKnot: return "torus_knot";
    case CurveKind::kLissajous: return "lissajous";
    case CurveKind::kSplineFromPoints: return "spline_from_points";
    case CurveKind::kCornerTriangle: return "corner_triangle";
    case CurveKind::kPlanarFigureEight: return "planar_figure_eight";
  }
  return "unknown";
}

double wrap_unit(double t) {
  double w = t - std::floor(t);
  if (w >= 1.0) w = 0.0;
  return w;
}

double circular_distance(double t1, double t2) {
  const double d = wrap_unit(t1 - t2);
  return std::min(d, 1.0 - d);
}

namespace detail {

// Table of cumulative arc length over a knot set in the raw parameter, with
// monotone cubic Hermite inversion polished by Newton on the exact length.
class ArcLengthMap {
 public:
  explicit ArcLengthMap(std::shared_ptr<const RawCurve> raw)
      : raw_(std::move(raw)) {
    const int m = raw_->ambient_dim();
    if (m < 2 || m > kMaxAmbientDim) {
      std::ostringstream os;
      os << "ambient dimension " << m << " outside [2, " << kMaxAmbientDim
         << "]";
      throw Error(ErrorCode::kInvalidCurve, os.str());
    }
    constant_speed_ = raw_->constant_speed();
    if (constant_speed_) {
      // Any breakpoint-free sample gives the speed; average a few for safety
      // against a sample landing on a corner.
      double total = 0.0;
      for (int i = 0; i < 7; ++i) {
        total += raw_->velocity((i + 0.5) / 7.0).norm();
      }
      length_ = total / 7.0;
      check_length();
      return;
    }
    build_table();
  }

  const RawCurve& raw() const { return *raw_; }
  double length() const { return length_; }

  double raw_parameter(double s) const {
    if (constant_speed_) return s;
    return invert(s);
  }

 private:
  void check_length() const {
    if (!std::isfinite(length_) || length_ <= 1e-300) {
      throw Error(ErrorCode::kInvalidCurve,
                  "curve has zero or non-finite length");
    }
  }

  double speed(double u) const { return raw_->velocity(u).norm(); }

  void build_table() {
    constexpr int kUniformKnots = 2048;
    std::vector<double> knots;
    knots.reserve(kUniformKnots + 16);
    for (int i = 0; i <= kUniformKnots; ++i) {
      knots.push_back(static_cast<double>(i) / kUniformKnots);
    }
    for (double b : raw_->breakpoints()) knots.push_back(wrap_unit(b));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) {
                              return std::abs(a - b) < 1e-14;
                            }),
                knots.end());
    knots.back() = 1.0;

    const std::size_t segments = knots.size() - 1;
    std::vector<double> seg_length(segments);
    auto f = [this](double u) { return speed(u); };
    // Each segment is mapped onto [0, 1]: boost compares the panel error in
    // the unit variable against a tolerance scaled by the panel width, so on
    // short segments the tolerance would otherwise shrink with the width and
    // force recursion to max depth.
    for (std::size_t k = 0; k < segments; ++k) {
      const double a = knots[k];
      const double h = knots[k + 1] - a;
      auto unit = [&](double x) { return f(a + h * x) * h; };
      seg_length[k] =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
              unit, 0.0, 1.0, 8, 1e-13);
      if (!std::isfinite(seg_length[k])) {
        throw Error(ErrorCode::kInvalidCurve,
                    "non-finite speed: curve is not rectifiable");
      }
    }
    double cumulative = 0.0;
    cum_.assign(knots.size(), 0.0);
    for (std::size_t k = 0; k < segments; ++k) {
      cumulative += seg_length[k];
      cum_[k + 1] = cumulative;
    }
    length_ = cumulative;
    check_length();
    for (double& c : cum_) c /= length_;
    cum_.back() = 1.0;

    knots_ = std::move(knots);
    // Hermite slopes du/ds at both ends of each segment, one-sided so that
    // corners at breakpoints do not leak across.
    slope_lo_.resize(segments);
    slope_hi_.resize(segments);
    for (std::size_t k = 0; k < segments; ++k) {
      const double h = knots_[k + 1] - knots_[k];
      const double ds = cum_[k + 1] - cum_[k];
      const double secant = ds > 0.0 ? h / ds : 0.0;
      auto slope = [&](double u) {
        const double v = speed(u);
        return v > 0.0 ? length_ / v : 3.0 * secant;
      };
      double m0 = slope(knots_[k] + 1e-9 * h);
      double m1 = slope(knots_[k + 1] - 1e-9 * h);
      // Fritsch-Carlson limiter keeps the interpolant monotone.
      if (secant > 0.0) {
        const double a = m0 / secant;
        const double b = m1 / secant;
        const double r = a * a + b * b;
        if (r > 9.0) {
          const double tau = 3.0 / std::sqrt(r);
          m0 = tau * a * secant;
          m1 = tau * b * secant;
        }
      }
      slope_lo_[k] = m0;
      slope_hi_[k] = m1;
    }
  }

  double invert(double s) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t k = it == cum_.begin() ? 0 : (it - cum_.begin()) - 1;
    k = std::min(k, knots_.size() - 2);
    const double u0 = knots_[k];
    const double u1 = knots_[k + 1];
    const double s0 = cum_[k];
    const double ds = cum_[k + 1] - s0;
    if (ds <= 0.0) return u0;

    const double x = (s - s0) / ds;
    const double x2 = x * x;
    const double x3 = x2 * x;
    double u = (2 * x3 - 3 * x2 + 1) * u0 + (x3 - 2 * x2 + x) * ds * slope_lo_[k] +
               (-2 * x3 + 3 * x2) * u1 + (x3 - x2) * ds * slope_hi_[k];
    u = std::clamp(u, u0, u1);

    auto f = [this](double v) { return speed(v); };
    for (int iter = 0; iter < 4; ++iter) {
      const double partial =
          boost::math::quadrature::gauss<double, 20>::integrate(f, u0, u);
      const double residual = s0 + partial / length_ - s;
      const double v = speed(u);
      if (v <= 0.0) break;
      const double step = residual * length_ / v;
      u = std::clamp(u - step, u0, u1);
      // Quadratic convergence: after a step this small the error is far
      // below rounding.
      if (std::abs(step) <= 1e-10) break;
    }
    return u;
  }

  std::shared_ptr<const RawCurve> raw_;
  bool constant_speed_ = false;
  double length_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> cum_;
  std::vector<double> slope_lo_;
  std::vector<double> slope_hi_;
};

}  // namespace detail

ClosedCurve::ClosedCurve(std::shared_ptr<const detail::ArcLengthMap> map,
                         double offset)
    : map_(std::move(map)), offset_(offset) {}

int ClosedCurve::ambient_dim() const { return map_->raw().ambient_dim(); }

double ClosedCurve::raw_parameter(double t) const {
  return map_->raw_parameter(wrap_unit(t + offset_));
}

Point ClosedCurve::eval(double t) const {
  return map_->raw().position(raw_parameter(t)) / map_->length();
}

Point ClosedCurve::deriv(double t) const {
  Point v = map_->raw().velocity(raw_parameter(t));
  const double speed = v.norm();
  if (speed > 0.0) v /= speed;
  return v;
}

double ClosedCurve::raw_length() const { return map_->length(); }

CurveKind ClosedCurve::kind() const { return map_->raw().kind(); }
std::string ClosedCurve::label() const { return map_->raw().label(); }
bool ClosedCurve::smooth() const { return map_->raw().smooth(); }
bool ClosedCurve::simple() const { return map_->raw().simple(); }

ClosedCurve ClosedCurve::rebased(double base) const {
  return ClosedCurve(map_, wrap_unit(offset_ + base));
}

ClosedCurve normalize_to_unit_length(std::shared_ptr<const RawCurve> raw,
                                     double base) {
  if (!raw) throw Error(ErrorCode::kInvalidCurve, "null curve");
  if (!std::isfinite(base)) {
    throw Error(ErrorCode::kInvalidArgument, "base parameter is not finite");
  }
  auto map = std::make_shared<const detail::ArcLengthMap>(std::move(raw));
  return ClosedCurve(std::move(map), wrap_unit(base));
}

}  // namespace ngon
