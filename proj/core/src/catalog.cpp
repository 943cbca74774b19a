#include "ngon/catalog.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ngon/error.hpp"

namespace ngon {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Circle final : public RawCurve {
 public:
  Circle(double radius, int dim) : radius_(radius), dim_(dim) {
    if (!(radius > 0.0)) {
      throw Error(ErrorCode::kInvalidCurve, "circle radius must be positive");
    }
    if (dim < 2 || dim > kMaxAmbientDim) {
      throw Error(ErrorCode::kInvalidCurve, "circle dimension out of range");
    }
    // Deterministic rotation: orthonormalize a fixed dense matrix.
    Eigen::MatrixXd seed(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        seed(i, j) = std::sin(1.0 + 7.0 * i + 3.0 * j) + (i == j ? 2.0 : 0.0);
      }
    }
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(seed)
                            .householderQ() *
                        Eigen::MatrixXd::Identity(dim, dim);
    if (dim == 2) q.setIdentity();
    e1_ = q.col(0);
    e2_ = q.col(1);
  }

  int ambient_dim() const override { return dim_; }
  Point position(double u) const override {
    return radius_ * (std::cos(kTwoPi * u) * e1_ + std::sin(kTwoPi * u) * e2_);
  }
  Point velocity(double u) const override {
    return kTwoPi * radius_ *
           (-std::sin(kTwoPi * u) * e1_ + std::cos(kTwoPi * u) * e2_);
  }
  CurveKind kind() const override { return CurveKind::kCircle; }
  std::string label() const override {
    return dim_ == 2 ? "circle" : "circle" + std::to_string(dim_) + "d";
  }
  bool constant_speed() const override { return true; }

 private:
  double radius_;
  int dim_;
  Point e1_;
  Point e2_;
};

class Ellipse final : public RawCurve {
 public:
  Ellipse(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0 && b > 0.0)) {
      throw Error(ErrorCode::kInvalidCurve, "ellipse axes must be positive");
    }
  }
  int ambient_dim() const override { return 2; }
  Point position(double u) const override {
    Point p(2);
    p << a_ * std::cos(kTwoPi * u), b_ * std::sin(kTwoPi * u);
    return p;
  }
  Point velocity(double u) const override {
    Point v(2);
    v << -kTwoPi * a_ * std::sin(kTwoPi * u), kTwoPi * b_ * std::cos(kTwoPi * u);
    return v;
  }
  CurveKind kind() const override { return CurveKind::kEllipse; }
  std::string label() const override { return "ellipse"; }

 private:
  double a_, b_;
};

class TorusKnot final : public RawCurve {
 public:
  TorusKnot(int p, int q, double major, double minor)
      : p_(p), q_(q), major_(major), minor_(minor) {
    if (p == 0 || q == 0 || !(major > minor && minor > 0.0)) {
      throw Error(ErrorCode::kInvalidCurve,
                  "torus knot needs nonzero p, q and R > r > 0");
    }
  }
  int ambient_dim() const override { return 3; }
  Point position(double u) const override {
    const double a = kTwoPi * p_ * u;
    const double b = kTwoPi * q_ * u;
    const double rho = major_ + minor_ * std::cos(b);
    Point x(3);
    x << rho * std::cos(a), rho * std::sin(a), minor_ * std::sin(b);
    return x;
  }
  Point velocity(double u) const override {
    const double a = kTwoPi * p_ * u;
    const double b = kTwoPi * q_ * u;
    const double da = kTwoPi * p_;
    const double db = kTwoPi * q_;
    const double rho = major_ + minor_ * std::cos(b);
    const double drho = -minor_ * std::sin(b) * db;
    Point v(3);
    v << drho * std::cos(a) - rho * std::sin(a) * da,
        drho * std::sin(a) + rho * std::cos(a) * da,
        minor_ * std::cos(b) * db;
    return v;
  }
  CurveKind kind() const override { return CurveKind::kTorusKnot; }
  std::string label() const override {
    if (p_ == 3 && q_ == 2) return "trefoil";
    return "torus_knot(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
  }

 private:
  int p_, q_;
  double major_, minor_;
};

class Lissajous final : public RawCurve {
 public:
  Lissajous(int a, int b, int c, double phi1, double phi2)
      : a_(a), b_(b), c_(c), phi1_(phi1), phi2_(phi2) {
    if (a <= 0 || b <= 0 || c <= 0) {
      throw Error(ErrorCode::kInvalidCurve,
                  "lissajous frequencies must be positive");
    }
  }
  int ambient_dim() const override { return 3; }
  Point position(double u) const override {
    Point x(3);
    x << std::cos(kTwoPi * a_ * u + phi1_), std::cos(kTwoPi * b_ * u + phi2_),
        std::cos(kTwoPi * c_ * u);
    return x;
  }
  Point velocity(double u) const override {
    Point v(3);
    v << -kTwoPi * a_ * std::sin(kTwoPi * a_ * u + phi1_),
        -kTwoPi * b_ * std::sin(kTwoPi * b_ * u + phi2_),
        -kTwoPi * c_ * std::sin(kTwoPi * c_ * u);
    return v;
  }
  CurveKind kind() const override { return CurveKind::kLissajous; }
  std::string label() const override { return "lissajous"; }

 private:
  int a_, b_, c_;
  double phi1_, phi2_;
};

class CornerTriangle final : public RawCurve {
 public:
  explicit CornerTriangle(double apex_angle) : apex_angle_(apex_angle) {
    if (!(apex_angle > 0.0 && apex_angle < std::numbers::pi)) {
      throw Error(ErrorCode::kInvalidCurve, "apex angle must be in (0, π)");
    }
    const double h = 0.5 * apex_angle;
    corners_[0] = Point::Zero(2);
    corners_[1] = Point(2);
    corners_[1] << std::cos(h), std::sin(h);
    corners_[2] = Point(2);
    corners_[2] << std::cos(h), -std::sin(h);
    base_ = 2.0 * std::sin(h);
    perimeter_ = 2.0 + base_;
    ends_ = {1.0 / perimeter_, (1.0 + base_) / perimeter_, 1.0};
  }
  int ambient_dim() const override { return 2; }
  Point position(double u) const override {
    u = wrap_unit(u);
    const int e = edge(u);
    const double start = e == 0 ? 0.0 : ends_[e - 1];
    const double frac = (u - start) / (ends_[e] - start);
    return corners_[e] + frac * (corners_[(e + 1) % 3] - corners_[e]);
  }
  Point velocity(double u) const override {
    const int e = edge(wrap_unit(u));
    const double start = e == 0 ? 0.0 : ends_[e - 1];
    return (corners_[(e + 1) % 3] - corners_[e]) / (ends_[e] - start);
  }
  CurveKind kind() const override { return CurveKind::kCornerTriangle; }
  std::string label() const override { return "corner_triangle"; }
  std::vector<double> breakpoints() const override {
    return {0.0, ends_[0], ends_[1]};
  }
  bool constant_speed() const override { return true; }
  bool smooth() const override { return false; }

 private:
  int edge(double u) const {
    if (u < ends_[0]) return 0;
    if (u < ends_[1]) return 1;
    return 2;
  }

  double apex_angle_;
  std::array<Point, 3> corners_;
  std::array<double, 3> ends_{};
  double base_ = 0.0;
  double perimeter_ = 0.0;
};

class FigureEight final : public RawCurve {
 public:
  explicit FigureEight(double aspect) : aspect_(aspect) {
    if (!(aspect > 0.0)) {
      throw Error(ErrorCode::kInvalidCurve,
                  "figure-eight aspect must be positive");
    }
  }
  int ambient_dim() const override { return 2; }
  Point position(double u) const override {
    Point x(2);
    x << std::sin(kTwoPi * u), aspect_ * std::sin(2.0 * kTwoPi * u);
    return x;
  }
  Point velocity(double u) const override {
    Point v(2);
    v << kTwoPi * std::cos(kTwoPi * u),
        2.0 * kTwoPi * aspect_ * std::cos(2.0 * kTwoPi * u);
    return v;
  }
  CurveKind kind() const override { return CurveKind::kPlanarFigureEight; }
  std::string label() const override { return "figure_eight"; }
  bool simple() const override { return false; }

 private:
  double aspect_;
};

}  // namespace

std::shared_ptr<const RawCurve> make_circle(double radius, int dim) {
  return std::make_shared<const Circle>(radius, dim);
}

std::shared_ptr<const RawCurve> make_ellipse(double a, double b) {
  return std::make_shared<const Ellipse>(a, b);
}

std::shared_ptr<const RawCurve> make_torus_knot(int p, int q, double major,
                                                double minor) {
  return std::make_shared<const TorusKnot>(p, q, major, minor);
}

std::shared_ptr<const RawCurve> make_lissajous(int a, int b, int c,
                                               double phi1, double phi2) {
  return std::make_shared<const Lissajous>(a, b, c, phi1, phi2);
}

std::shared_ptr<const RawCurve> make_corner_triangle(double apex_angle) {
  return std::make_shared<const CornerTriangle>(apex_angle);
}

std::shared_ptr<const RawCurve> make_planar_figure_eight(double aspect) {
  return std::make_shared<const FigureEight>(aspect);
}

std::vector<std::string_view> catalog_names() {
  return {"circle",    "circle4d",        "ellipse",     "trefoil",
          "lissajous", "corner_triangle", "figure_eight"};
}

std::shared_ptr<const RawCurve> catalog_raw_curve(std::string_view name) {
  if (name == "circle") return make_circle();
  if (name == "circle4d") return make_circle(1.0, 4);
  if (name == "ellipse") return make_ellipse();
  if (name == "trefoil") return make_torus_knot();
  if (name == "lissajous") return make_lissajous();
  if (name == "corner_triangle") return make_corner_triangle();
  if (name == "figure_eight") return make_planar_figure_eight();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown catalog curve '" + std::string(name) + "'");
}

ClosedCurve catalog_curve(std::string_view name, double base) {
  return normalize_to_unit_length(catalog_raw_curve(name), base);
}

}  // namespace ngon
